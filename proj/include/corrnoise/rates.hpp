#pragma once

#include <functional>
#include <string>
#include <vector>

#include "corrnoise/noise.hpp"
#include "corrnoise/types.hpp"

namespace corrnoise::rates {

// Time-dependent couplings and rates of a TCL generator at `time`.
// gamma_* are Hermitian 2x2 matrices indexed by qubit (0, 1).
struct CoefficientSet {
    double time = 0.0;
    double Jz = 0.0;          // Ising coupling
    Complex J{0.0, 0.0};      // transverse coupling J_s + i D
    Matrix2c gamma_z = Matrix2c::Zero();
    Matrix2c gamma_down = Matrix2c::Zero();
    Matrix2c gamma_up = Matrix2c::Zero();
};

using CoefficientFn = std::function<CoefficientSet(double)>;

// Max deviation from Hermiticity over the three rate matrices.
double hermiticity_defect(const CoefficientSet& c);

// Largest absolute rate or coupling, used to pick integration steps.
double max_magnitude(const CoefficientSet& c);

// Warnings (e.g. w_l t > 1) are routed here; default prints each distinct message once to stderr.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);

// F_c(w, t) = (cos wt - 1)/w, 0 at w = 0.
double filter_fc(double omega, double t);
// F_s(w, t) = sin(wt)/w, t at w = 0.
double filter_fs(double omega, double t);

// ---- closed forms for 1/f noise (sigma is sigma/hbar in rad/us) ----

double ising_coupling_1f(double t, double sigma, double theta);
double dephasing_rate_1f(double t, double sigma, double omega_low);
// Exact int_0^t of dephasing_rate_1f.
double integrated_dephasing_1f(double t, double sigma, double omega_low);
// Small-w_l t form sigma^2 t^2 [3 - 2 gamma_E - 2 ln(w_l t)].
double integrated_dephasing_1f_approx(double t, double sigma, double omega_low);
// V(t) = int_0^t Jz = -pi sigma^2 t^2 cos(theta).
double ising_phase_1f(double t, double sigma, double theta);

double classical_rate_1f(double t, double sigma, double omega_low, double Omega);
double quantum_decay_rate_1f(double t, double sigma, double omega_low, double Omega);
double transverse_coupling_1f(double t, double sigma, double Omega);
// Phi(t) = int_0^t J = 2 pi sigma^2 (cos Wt - 1)/W^2.
double coupling_phase_1f(double t, double sigma, double Omega);

// ---- generic quadrature route ----

enum class Filter { Fc, Fs };

struct GenericRateOptions {
    double lower = 0.0;        // integration starts at max(lower, 0)
    double upper = 0.0;        // 0 selects max(1e4/t, 100*|shift|)
    double rel_tol = 1e-6;
    double abs_tol = 1e-14;
};

// int_lower^upper (dw/2pi) S(w) F(w - shift, t).
Complex generic_rate(const std::function<Complex(double)>& spectrum, Filter filter, double shift,
                     double t, const GenericRateOptions& opts = {});

// Upper cutoff used when opts.upper == 0.
double default_upper_cutoff(double t, double shift);

// Full pure-dephasing coefficient set from classical/quantum spectra by quadrature.
CoefficientSet dephasing_coefficients(const noise::NoiseSpectra& spectra, double t,
                                      const GenericRateOptions& opts = {});

// Full pure-transverse coefficient set (drive splitting Omega) by quadrature.
CoefficientSet transverse_coefficients(const noise::NoiseSpectra& spectra, double Omega, double t,
                                       const GenericRateOptions& opts = {});

struct MarkovianRates {
    Complex gamma_down;
    Complex gamma_up;
};

// gamma_down = S^C + S^Q, gamma_up = S^C - S^Q. For the ij absorption rate pass the ji spectra.
MarkovianRates markovian_rates(Complex S_C_at_Omega, Complex S_Q_at_Omega);

// Long-time (t >> 1/Omega) rate matrices from the spectra at +Omega.
CoefficientSet markovian_coefficients(const noise::NoiseSpectra& spectra, double Omega, Complex J = {});

// ---- time integrals ----

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

// Composite Simpson on n_points samples (rounded up to odd) with a Richardson check
// against the half-resolution rule; the extrapolated value is returned.
Integral integrated(const std::function<double(double)>& fn, double t, int n_points);

// Running integral int_0^{t_k} fn at each of the increasing times (adaptive per interval).
std::vector<double> cumulative_integral(const std::function<double(double)>& fn,
                                        const std::vector<double>& times, double abs_tol = 1e-15);

// Table sampled eagerly on a uniform grid [0, t_max]; lookups interpolate every entry linearly.
// Read-only once built; safe to share across threads.
CoefficientFn tabulate(const CoefficientFn& fn, double t_max, int n_points);

} // namespace corrnoise::rates
