#include "corrnoise/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "corrnoise/error.hpp"

namespace corrnoise::csv {

std::string format(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw DomainError("csv table needs at least one column");
    }
}

void Table::comment(const std::string& key, const std::string& value) { comments_.emplace_back(key, value); }

void Table::comment(const std::string& key, double value) { comments_.emplace_back(key, format(value)); }

void Table::add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size()) {
        throw DomainError("csv row has " + std::to_string(row.size()) + " values, expected "
                          + std::to_string(columns_.size()));
    }
    data_.insert(data_.end(), row.begin(), row.end());
}

void Table::write(std::ostream& out) const {
    for (const auto& [k, v] : comments_) {
        out << "# " << k << ": " << v << '\n';
    }
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        out << (c ? "," : "") << columns_[c];
    }
    out << '\n';
    const std::size_t nc = columns_.size();
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
            if (c) out << ',';
            out << format(data_[r * nc + c]);
        }
        out << '\n';
    }
}

void Table::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write(f);
    if (!f) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

const std::vector<std::string>& trajectory_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c{"t_us"};
        for (int a = 1; a <= 4; ++a) {
            for (int b = 1; b <= 4; ++b) {
                const std::string base = "rho" + std::to_string(a) + std::to_string(b);
                c.push_back(base + "_re");
                c.push_back(base + "_im");
            }
        }
        for (const char* n : {"G_t", "G_s", "G_ts_re", "G_ts_im", "G11", "G44", "concurrence", "Jz", "J_re", "J_im"}) {
            c.emplace_back(n);
        }
        for (const char* g : {"gz", "gd", "gu"}) {
            const std::string p(g);
            c.push_back(p + "11");
            c.push_back(p + "22");
            c.push_back(p + "12_re");
            c.push_back(p + "12_im");
        }
        return c;
    }();
    return cols;
}

namespace {

std::vector<double> full_row(const Trajectory& traj, std::size_t k) {
    std::vector<double> r;
    r.reserve(trajectory_columns().size());
    r.push_back(traj.times[k]);
    const Matrix4c& m = traj.states[k].matrix();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            r.push_back(m(a, b).real());
            r.push_back(m(a, b).imag());
        }
    }
    const Measures& ms = traj.measures[k];
    r.insert(r.end(), {ms.ts.G_t, ms.ts.G_s, ms.ts.G_ts.real(), ms.ts.G_ts.imag(), ms.ts.G11, ms.ts.G44,
                       ms.concurrence});
    const rates::CoefficientSet& c = traj.coefficient_log[k];
    r.insert(r.end(), {c.Jz, c.J.real(), c.J.imag()});
    for (const Matrix2c* g : {&c.gamma_z, &c.gamma_down, &c.gamma_up}) {
        r.insert(r.end(), {(*g)(0, 0).real(), (*g)(1, 1).real(), (*g)(0, 1).real(), (*g)(0, 1).imag()});
    }
    return r;
}

} // namespace

Table trajectory_table(const Trajectory& traj, const std::vector<std::string>& select) {
    const auto& all = trajectory_columns();
    std::vector<std::size_t> idx;
    if (select.empty()) {
        for (std::size_t i = 0; i < all.size(); ++i) idx.push_back(i);
    } else {
        for (const auto& name : select) {
            const auto it = std::find(all.begin(), all.end(), name);
            if (it == all.end()) {
                throw DomainError("unknown output column '" + name + "'");
            }
            idx.push_back(static_cast<std::size_t>(it - all.begin()));
        }
    }
    std::vector<std::string> cols;
    for (auto i : idx) cols.push_back(all[i]);
    Table t(cols);
    if (traj.frame_phase != 0.0) {
        t.comment("frame_phase_rad", traj.frame_phase);
    }
    std::vector<double> row(idx.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto full = full_row(traj, k);
        for (std::size_t j = 0; j < idx.size(); ++j) row[j] = full[idx[j]];
        t.add_row(row);
    }
    return t;
}

} // namespace corrnoise::csv
