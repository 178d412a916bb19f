#include "corrnoise/noise.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "corrnoise/error.hpp"
#include "corrnoise/specfun.hpp"

namespace corrnoise::noise {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex interpolate(const Tabulated& tab, double omega) {
    const auto& w = tab.omega;
    const bool mirrored = w.front() >= 0.0;
    const double query = mirrored ? std::abs(omega) : omega;
    if (query < w.front() || query > w.back()) {
        std::ostringstream msg;
        msg << "tabulated spectrum queried at w = " << omega << " outside [" << w.front() << ", "
            << w.back() << "]";
        throw RangeError(msg.str());
    }
    const auto it = std::upper_bound(w.begin(), w.end(), query);
    if (it == w.end()) {
        return tab.value.back();
    }
    const auto hi = static_cast<std::size_t>(it - w.begin());
    if (hi == 0) {
        return tab.value.front();
    }
    const std::size_t lo = hi - 1;
    const double frac = (query - w[lo]) / (w[hi] - w[lo]);
    return tab.value[lo] + frac * (tab.value[hi] - tab.value[lo]);
}

double linear_dispersion(const LinearDispersion& m, double omega) {
    if (omega == 0.0) {
        return m.amplitude / m.beta;
    }
    // A*w*(n_B(w)+1) = A*w/(1 - exp(-beta*w))
    return -m.amplitude * omega / std::expm1(-m.beta * omega);
}

} // namespace

void validate(const SpectrumModel& model) {
    std::visit(Overloaded{
                   [](const OneOverF& m) {
                       if (!(m.sigma > 0.0) || !(m.omega_low > 0.0)) {
                           throw DomainError("1/f spectrum requires sigma > 0 and omega_low > 0");
                       }
                   },
                   [](const LinearDispersion& m) {
                       if (!(m.amplitude >= 0.0) || !(m.beta > 0.0)) {
                           throw DomainError("linear-dispersion spectrum requires amplitude >= 0 and beta > 0");
                       }
                   },
                   [](const Tabulated& m) {
                       if (m.omega.size() < 2 || m.omega.size() != m.value.size()) {
                           throw DomainError("tabulated spectrum needs at least two (w, S) nodes");
                       }
                       for (std::size_t i = 1; i < m.omega.size(); ++i) {
                           if (!(m.omega[i] > m.omega[i - 1])) {
                               throw DomainError("tabulated spectrum grid must be strictly increasing");
                           }
                       }
                   },
               },
               model);
}

void validate(const CorrelationGeometry& geom) {
    if (geom.dimension < 1 || geom.dimension > 3) {
        throw DomainError("geometry dimension must be 1, 2 or 3");
    }
    if (!(geom.distance >= 0.0)) {
        throw DomainError("qubit distance must be non-negative");
    }
    if (!(geom.correlation_scale >= 0.0 && geom.correlation_scale <= 1.0)) {
        throw DomainError("correlation_scale must lie in [0, 1]");
    }
    if (geom.mode == CrossMode::Geometric && !(geom.sound_speed > 0.0)) {
        throw DomainError("geometric cross spectrum requires sound_speed > 0");
    }
}

Complex spectrum_value(const SpectrumModel& model, double omega) {
    return std::visit(Overloaded{
                          [omega](const OneOverF& m) -> Complex {
                              const double a = std::abs(omega);
                              return a > m.omega_low ? kTwoPi * m.sigma * m.sigma / a : 0.0;
                          },
                          [omega](const LinearDispersion& m) -> Complex { return linear_dispersion(m, omega); },
                          [omega](const Tabulated& m) { return interpolate(m, omega); },
                      },
                      model);
}

double local_spectrum(const SpectrumModel& model, double omega) {
    return spectrum_value(model, omega).real();
}

double spatial_factor(int dimension, double kd) {
    if (kd < 0.0) {
        throw DomainError("spatial_factor: kd must be non-negative");
    }
    switch (dimension) {
    case 1:
        return std::cos(kd);
    case 2:
        return specfun::bessel_j0(kd);
    case 3:
        if (kd < 1e-4) {
            return 1.0 - kd * kd / 6.0;
        }
        return std::sin(kd) / kd;
    default:
        throw DomainError("spatial_factor: dimension must be 1, 2 or 3");
    }
}

Complex cross_spectrum(const SpectrumModel& model, const CorrelationGeometry& geom, double omega) {
    const double local = local_spectrum(model, omega);
    if (geom.mode == CrossMode::Idealized) {
        return geom.correlation_scale * std::polar(1.0, geom.phase_theta) * local;
    }
    if (!(geom.sound_speed > 0.0)) {
        throw DomainError("geometric cross spectrum requires sound_speed > 0");
    }
    const double kd = std::abs(omega) * geom.distance / geom.sound_speed;
    return spatial_factor(geom.dimension, kd) * local;
}

Complex cross_spectrum_swapped(const SpectrumModel& model, const CorrelationGeometry& geom,
                               double omega) {
    return std::conj(cross_spectrum(model, geom, omega));
}

NoiseSpectra::NoiseSpectra(SpectrumModel model, CorrelationGeometry geometry, Regime regime, double beta)
    : model_(std::move(model)), geometry_(geometry), regime_(regime), beta_(beta) {
    validate(model_);
    validate(geometry_);
    if (regime_ == Regime::Thermal && !(beta_ > 0.0)) {
        throw DomainError("thermal regime requires beta > 0");
    }
}

double NoiseSpectra::local_classical(double omega) const {
    if (std::holds_alternative<OneOverF>(model_)) {
        return local_spectrum(model_, omega);
    }
    return classical_part(spectrum_value(model_, omega), spectrum_value(model_, -omega)).real();
}

double NoiseSpectra::local_quantum(double omega) const {
    if (std::holds_alternative<OneOverF>(model_)) {
        const double sc = local_spectrum(model_, omega);
        switch (regime_) {
        case Regime::Classical:
            return 0.0;
        case Regime::Quantum:
            return sc;
        case Regime::Thermal:
            return sc * std::tanh(0.5 * beta_ * omega);
        }
    }
    return quantum_part(spectrum_value(model_, omega), spectrum_value(model_, -omega)).real();
}

double NoiseSpectra::local_emission(double omega) const {
    if (std::holds_alternative<OneOverF>(model_)) {
        const double sc = local_spectrum(model_, omega);
        switch (regime_) {
        case Regime::Classical:
            return sc;
        case Regime::Quantum:
            return 2.0 * sc;
        case Regime::Thermal:
            return 2.0 * sc / (1.0 + std::exp(-beta_ * omega));
        }
    }
    return spectrum_value(model_, omega).real();
}

double NoiseSpectra::local_absorption(double omega) const {
    if (std::holds_alternative<OneOverF>(model_)) {
        const double sc = local_spectrum(model_, omega);
        switch (regime_) {
        case Regime::Classical:
            return sc;
        case Regime::Quantum:
            return 0.0;
        case Regime::Thermal:
            return 2.0 * sc / (1.0 + std::exp(beta_ * omega));
        }
    }
    return spectrum_value(model_, -omega).real();
}

Complex NoiseSpectra::emission(int i, int j, double omega) const {
    return cross_factor(i, j, omega) * local_emission(omega);
}

Complex NoiseSpectra::absorption(int i, int j, double omega) const {
    return cross_factor(i, j, omega) * local_absorption(omega);
}

Complex NoiseSpectra::cross_factor(int i, int j, double omega) const {
    if (i == j) {
        return 1.0;
    }
    if (geometry_.mode == CrossMode::Idealized) {
        const Complex f = geometry_.correlation_scale * std::polar(1.0, geometry_.phase_theta);
        return i == 0 ? f : std::conj(f);
    }
    return spatial_factor(geometry_.dimension, std::abs(omega) * geometry_.distance / geometry_.sound_speed);
}

Complex NoiseSpectra::classical(int i, int j, double omega) const {
    return cross_factor(i, j, omega) * local_classical(omega);
}

Complex NoiseSpectra::quantum(int i, int j, double omega) const {
    return cross_factor(i, j, omega) * local_quantum(omega);
}

double NoiseSpectra::lower_edge() const {
    if (const auto* m = std::get_if<OneOverF>(&model_)) {
        return m->omega_low;
    }
    return 0.0;
}

Tabulated read_tabulated_csv(std::istream& in) {
    Tabulated tab;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            if (b == std::string::npos) {
                numeric = false;
                break;
            }
            double v = 0.0;
            const char* begin = cell.data() + b;
            const char* end = cell.data() + e + 1;
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc{} || ptr != end) {
                numeric = false;
                break;
            }
            cols.push_back(v);
        }
        if (!numeric) {
            if (tab.omega.empty()) {
                continue; // header
            }
            throw ConfigError("malformed spectrum row", line_no);
        }
        if (cols.size() != 2 && cols.size() != 3) {
            throw ConfigError("spectrum rows need 2 or 3 columns", line_no);
        }
        tab.omega.push_back(cols[0]);
        tab.value.emplace_back(cols[1], cols.size() == 3 ? cols[2] : 0.0);
    }
    validate(SpectrumModel{tab});
    return tab;
}

Tabulated load_tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open spectrum file '" + path + "'", 0);
    }
    return read_tabulated_csv(in);
}

} // namespace corrnoise::noise
