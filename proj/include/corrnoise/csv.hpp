#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "corrnoise/dynamics.hpp"

namespace corrnoise::csv {

// Shortest representation that round-trips; locale independent, so output is byte-stable.
std::string format(double v);

// Column-oriented table with '#' header comments recording the inputs.
class Table {
public:
    explicit Table(std::vector<std::string> columns);

    void comment(const std::string& key, const std::string& value);
    void comment(const std::string& key, double value);
    void add_row(const std::vector<double>& row);

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t rows() const { return data_.size() / columns_.size(); }
    double at(std::size_t row, std::size_t col) const { return data_[row * columns_.size() + col]; }

    void write(std::ostream& out) const;
    // Writes to `path`, throwing std::runtime_error when the file cannot be opened.
    void save(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> comments_;
    std::vector<double> data_;
};

// t_us, rho<ab>_re/_im (a, b = 1..4), G_t, G_s, G_ts_re, G_ts_im, G11, G44, concurrence,
// Jz, J_re, J_im and the independent entries of gamma_z, gamma_down and gamma_up.
const std::vector<std::string>& trajectory_columns();

// Trajectory as a table; `select` keeps only the named columns (in the given order).
// Throws DomainError on an unknown column name.
Table trajectory_table(const Trajectory& traj, const std::vector<std::string>& select = {});

} // namespace corrnoise::csv
