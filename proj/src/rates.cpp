#include "corrnoise/rates.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include "corrnoise/error.hpp"
#include "corrnoise/quadrature.hpp"
#include "corrnoise/specfun.hpp"

namespace corrnoise::rates {

namespace {

std::mutex g_warn_mutex;
WarningHandler g_warn_handler;

void warn(const std::string& msg) {
    std::lock_guard lock(g_warn_mutex);
    if (g_warn_handler) {
        g_warn_handler(msg);
        return;
    }
    static std::set<std::string> seen;
    if (seen.insert(msg).second) {
        std::cerr << "warning: " << msg << '\n';
    }
}

void check_long_time(double t, double omega_low) {
    if (omega_low * t > 1.0) {
        warn("w_l t > 1: 1/f closed forms assume times well below the measurement cutoff 1/w_l");
    }
}

// (a sin a + cos a - 1)/a^2, series for small a to avoid cancellation.
double dephasing_integral_correction(double a) {
    if (a < 0.5) {
        const double a2 = a * a;
        double term = 0.5; // m = 1: (2m-1)/(2m)!
        double sum = term;
        double fact = 2.0; // (2m)!
        double power = 1.0;
        for (int m = 2; m < 12; ++m) {
            fact *= (2.0 * m - 1.0) * (2.0 * m);
            power *= -a2;
            term = (2.0 * m - 1.0) / fact * power;
            sum += term;
        }
        return sum;
    }
    return (a * std::sin(a) + std::cos(a) - 1.0) / (a * a);
}

// Adaptive quadrature of a spectral integrand over [lo, hi] with the oscillation
// scale 1/t and the filter peaks seeded as breakpoints.
template <typename F>
Complex integrate_spectral(F integrand, double lo, double hi, double t, const std::vector<double>& peaks,
                           double rel_tol, double abs_tol) {
    if (!(hi > lo) || t == 0.0) {
        return 0.0;
    }
    std::vector<double> bps;
    const double width = kPi / t;
    const double span = hi - lo;
    const int panels = static_cast<int>(std::min(40000.0, std::ceil(span / width)));
    for (int k = 1; k < panels; ++k) {
        bps.push_back(lo + span * k / panels);
    }
    // 1/w-like spectra vary on the scale of the lower edge.
    if (lo > 0.0) {
        for (double w = 2.0 * lo; w < std::min(hi, lo + width); w *= 2.0) {
            bps.push_back(w);
        }
    }
    for (double p : peaks) {
        for (int k = -2; k <= 2; ++k) {
            bps.push_back(p + k * width * 0.5);
        }
    }
    quad::Options opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = abs_tol;
    opts.max_intervals = 400000;
    return quad::integrate_or_throw(integrand, lo, hi, opts, bps).value;
}

double filter(Filter f, double omega, double t) {
    return f == Filter::Fc ? filter_fc(omega, t) : filter_fs(omega, t);
}

} // namespace

void set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(g_warn_mutex);
    g_warn_handler = std::move(handler);
}

double hermiticity_defect(const CoefficientSet& c) {
    double d = 0.0;
    for (const Matrix2c* m : {&c.gamma_z, &c.gamma_down, &c.gamma_up}) {
        d = std::max(d, (*m - m->adjoint()).cwiseAbs().maxCoeff());
    }
    return d;
}

double max_magnitude(const CoefficientSet& c) {
    double m = std::max(std::abs(c.Jz), std::abs(c.J));
    for (const Matrix2c* g : {&c.gamma_z, &c.gamma_down, &c.gamma_up}) {
        m = std::max(m, g->cwiseAbs().maxCoeff());
    }
    return m;
}

double filter_fc(double omega, double t) {
    if (omega == 0.0) {
        return 0.0;
    }
    const double s = std::sin(0.5 * omega * t);
    return -2.0 * s * s / omega;
}

double filter_fs(double omega, double t) {
    if (omega == 0.0) {
        return t;
    }
    return std::sin(omega * t) / omega;
}

double ising_coupling_1f(double t, double sigma, double theta) {
    return -kTwoPi * sigma * sigma * std::cos(theta) * t;
}

double dephasing_rate_1f(double t, double sigma, double omega_low) {
    if (t <= 0.0) {
        return 0.0;
    }
    check_long_time(t, omega_low);
    return 4.0 * sigma * sigma * t * (1.0 - specfun::cos_integral(omega_low * t));
}

double integrated_dephasing_1f(double t, double sigma, double omega_low) {
    if (t <= 0.0) {
        return 0.0;
    }
    const double a = omega_low * t;
    return 2.0 * sigma * sigma * t * t
           * (1.0 - specfun::cos_integral(a) + dephasing_integral_correction(a));
}

double integrated_dephasing_1f_approx(double t, double sigma, double omega_low) {
    if (t <= 0.0) {
        return 0.0;
    }
    return sigma * sigma * t * t * (3.0 - 2.0 * kEulerGamma - 2.0 * std::log(omega_low * t));
}

double ising_phase_1f(double t, double sigma, double theta) {
    return -kPi * sigma * sigma * t * t * std::cos(theta);
}

double classical_rate_1f(double t, double sigma, double omega_low, double Omega) {
    if (t <= 0.0) {
        return 0.0;
    }
    check_long_time(t, omega_low);
    const double x = Omega * t;
    return 4.0 * sigma * sigma / Omega
           * (specfun::sin_integral(x) - std::sin(x) * specfun::cos_integral(omega_low * t));
}

double quantum_decay_rate_1f(double t, double sigma, double omega_low, double Omega) {
    if (t <= 0.0) {
        return 0.0;
    }
    check_long_time(t, omega_low);
    const double x = Omega * t;
    return 4.0 * sigma * sigma / Omega
           * (0.5 * kPi * (1.0 - std::cos(x)) - std::sin(x) * specfun::cos_integral(omega_low * t)
              + specfun::sin_integral(x));
}

double transverse_coupling_1f(double t, double sigma, double Omega) {
    return -kTwoPi * sigma * sigma * std::sin(Omega * t) / Omega;
}

double coupling_phase_1f(double t, double sigma, double Omega) {
    // cos x - 1 = -2 sin^2(x/2), exact near t = 0
    const double s = std::sin(0.5 * Omega * t);
    return -2.0 * kTwoPi * sigma * sigma * s * s / (Omega * Omega);
}

double default_upper_cutoff(double t, double shift) {
    return std::max(1e4 / t, 100.0 * std::abs(shift));
}

Complex generic_rate(const std::function<Complex(double)>& spectrum, Filter filt, double shift, double t,
                     const GenericRateOptions& opts) {
    if (t <= 0.0) {
        return 0.0;
    }
    const double lo = std::max(opts.lower, 0.0);
    const double hi = opts.upper > 0.0 ? opts.upper : default_upper_cutoff(t, shift);
    auto integrand = [&](double w) -> Complex { return spectrum(w) * filter(filt, w - shift, t) / kTwoPi; };
    return integrate_spectral(integrand, lo, hi, t, {shift}, opts.rel_tol, opts.abs_tol);
}

CoefficientSet dephasing_coefficients(const noise::NoiseSpectra& sp, double t, const GenericRateOptions& opts) {
    CoefficientSet c;
    c.time = t;
    if (t <= 0.0) {
        return c;
    }
    const double lo = std::max(opts.lower, sp.lower_edge());
    const double hi = opts.upper > 0.0 ? opts.upper : default_upper_cutoff(t, 0.0);
    auto run = [&](auto integrand) {
        return integrate_spectral(integrand, lo, hi, t, {}, opts.rel_tol, opts.abs_tol);
    };
    c.Jz = 4.0 * run([&](double w) -> Complex {
                     return sp.quantum(0, 1, w).real() * filter_fc(w, t) / kTwoPi;
                 }).real();
    for (int i = 0; i < 2; ++i) {
        c.gamma_z(i, i) = 4.0 * run([&](double w) -> Complex {
                              return sp.classical(i, i, w).real() * filter_fs(w, t) / kTwoPi;
                          }).real();
    }
    c.gamma_z(0, 1) = 4.0 * run([&](double w) -> Complex {
                          return Complex(sp.classical(0, 1, w).real(), sp.quantum(0, 1, w).imag())
                                 * filter_fs(w, t) / kTwoPi;
                      });
    c.gamma_z(1, 0) = std::conj(c.gamma_z(0, 1));
    return c;
}

CoefficientSet transverse_coefficients(const noise::NoiseSpectra& sp, double Omega, double t,
                                       const GenericRateOptions& opts) {
    CoefficientSet c;
    c.time = t;
    if (t <= 0.0) {
        return c;
    }
    const double lo = std::max(opts.lower, sp.lower_edge());
    const double hi = opts.upper > 0.0 ? opts.upper : default_upper_cutoff(t, Omega);
    auto run = [&](auto integrand) {
        return integrate_spectral(integrand, lo, hi, t, {Omega}, opts.rel_tol, opts.abs_tol);
    };
    c.J = 2.0 * run([&](double w) {
              return (sp.quantum(0, 1, w) * filter_fc(w - Omega, t) + sp.quantum(1, 0, w) * filter_fc(w + Omega, t))
                     / kTwoPi;
          });
    for (int i = 0; i < 2; ++i) {
        for (int j = i; j < 2; ++j) {
            auto emit = [&](double w) { return sp.classical(i, j, w) + sp.quantum(i, j, w); };
            auto absorb = [&](double w) { return sp.classical(j, i, w) - sp.quantum(j, i, w); };
            c.gamma_down(i, j) = 2.0 * run([&](double w) {
                                     return (emit(w) * filter_fs(w - Omega, t) + absorb(w) * filter_fs(w + Omega, t))
                                            / kTwoPi;
                                 });
            c.gamma_up(i, j) = 2.0 * run([&](double w) {
                                   return (emit(w) * filter_fs(w + Omega, t) + absorb(w) * filter_fs(w - Omega, t))
                                          / kTwoPi;
                               });
            if (i != j) {
                c.gamma_down(j, i) = std::conj(c.gamma_down(i, j));
                c.gamma_up(j, i) = std::conj(c.gamma_up(i, j));
            } else {
                c.gamma_down(i, i) = c.gamma_down(i, i).real();
                c.gamma_up(i, i) = c.gamma_up(i, i).real();
            }
        }
    }
    return c;
}

MarkovianRates markovian_rates(Complex S_C_at_Omega, Complex S_Q_at_Omega) {
    return {S_C_at_Omega + S_Q_at_Omega, S_C_at_Omega - S_Q_at_Omega};
}

CoefficientSet markovian_coefficients(const noise::NoiseSpectra& sp, double Omega, Complex J) {
    CoefficientSet c;
    c.time = std::numeric_limits<double>::infinity();
    c.J = J;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            c.gamma_down(i, j) = sp.emission(i, j, Omega);
            c.gamma_up(i, j) = sp.absorption(j, i, Omega);
        }
    }
    return c;
}

Integral integrated(const std::function<double(double)>& fn, double t, int n_points) {
    if (t == 0.0) {
        return {};
    }
    int panels = std::max(4, n_points - 1);
    panels += (4 - panels % 4) % 4;
    const double h = t / panels;
    std::vector<double> f(static_cast<std::size_t>(panels) + 1);
    for (int k = 0; k <= panels; ++k) {
        f[static_cast<std::size_t>(k)] = fn(k * h);
    }
    auto simpson = [&](int stride) {
        const int n = panels / stride;
        double sum = f.front() + f.back();
        for (int k = 1; k < n; ++k) {
            sum += (k % 2 == 1 ? 4.0 : 2.0) * f[static_cast<std::size_t>(k * stride)];
        }
        return sum * h * stride / 3.0;
    };
    const double fine = simpson(1);
    const double coarse = simpson(2);
    return {fine + (fine - coarse) / 15.0, std::abs(fine - coarse) / 15.0};
}

std::vector<double> cumulative_integral(const std::function<double(double)>& fn, const std::vector<double>& times,
                                        double abs_tol) {
    std::vector<double> out(times.size(), 0.0);
    quad::Options opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = abs_tol;
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        acc += quad::integrate(fn, prev, times[k], opts).value;
        out[k] = acc;
        prev = times[k];
    }
    return out;
}

CoefficientFn tabulate(const CoefficientFn& fn, double t_max, int n_points) {
    if (n_points < 2 || !(t_max > 0.0)) {
        throw DomainError("tabulate: need t_max > 0 and at least two points");
    }
    auto table = std::make_shared<std::vector<CoefficientSet>>();
    table->reserve(static_cast<std::size_t>(n_points));
    const double dt = t_max / (n_points - 1);
    for (int k = 0; k < n_points; ++k) {
        table->push_back(fn(k * dt));
    }
    return [table, dt, t_max](double t) {
        if (t < 0.0 || t > t_max * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "coefficient table queried at t = " << t << " outside [0, " << t_max << "]";
            throw RangeError(msg.str());
        }
        const double pos = std::min(t / dt, static_cast<double>(table->size() - 1));
        const auto lo = std::min(static_cast<std::size_t>(pos), table->size() - 2);
        const double f = pos - static_cast<double>(lo);
        const CoefficientSet& a = (*table)[lo];
        const CoefficientSet& b = (*table)[lo + 1];
        CoefficientSet c;
        c.time = t;
        c.Jz = a.Jz + f * (b.Jz - a.Jz);
        c.J = a.J + f * (b.J - a.J);
        c.gamma_z = a.gamma_z + f * (b.gamma_z - a.gamma_z);
        c.gamma_down = a.gamma_down + f * (b.gamma_down - a.gamma_down);
        c.gamma_up = a.gamma_up + f * (b.gamma_up - a.gamma_up);
        return c;
    };
}

} // namespace corrnoise::rates
