#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "corrnoise/types.hpp"

namespace corrnoise::noise {

// 1/f spectrum 2*pi*sigma^2/|w| above the low-frequency cutoff, zero below.
// sigma is sigma/hbar in rad/us.
struct OneOverF {
    double sigma = 0.0;
    double omega_low = 0.0;
};

// Linear-dispersion bath at inverse temperature beta (us): S(w) = A*w*(n_B(w) + 1).
// Satisfies S(w) = exp(beta*w) S(-w); tends to A/beta at w = 0.
struct LinearDispersion {
    double amplitude = 0.0;
    double sound_speed = 0.0;
    double beta = 0.0;
};

// Sampled S(w), linearly interpolated between nodes. When every node has w >= 0 the
// spectrum is mirrored to negative frequencies (symmetric, purely classical).
struct Tabulated {
    std::vector<double> omega;
    std::vector<Complex> value;
};

using SpectrumModel = std::variant<OneOverF, LinearDispersion, Tabulated>;

enum class CrossMode { Idealized, Geometric };

struct CorrelationGeometry {
    CrossMode mode = CrossMode::Idealized;
    int dimension = 2;
    double distance = 0.0;     // um
    double sound_speed = 0.0;  // um/us (1 km/s = 1e3 um/us)
    double phase_theta = 0.0;  // rad
    double correlation_scale = 1.0;
};

// How the antisymmetric (quantum) part of a symmetric model spectrum is assigned.
// LinearDispersion and Tabulated spectra carry it themselves and ignore this.
enum class Regime { Classical, Quantum, Thermal };

void validate(const SpectrumModel& model);
void validate(const CorrelationGeometry& geom);

// Local spectral density S_ii(w) (real part for tabulated data).
double local_spectrum(const SpectrumModel& model, double omega);

// Full complex tabulated/model value S_ii(w).
Complex spectrum_value(const SpectrumModel& model, double omega);

// Ratio S_12/S_ii for a linear-dispersion environment: cos(kd), J0(kd), sin(kd)/kd.
double spatial_factor(int dimension, double kd);

// (S_ij(w) + S_ji(-w))/2 and (S_ij(w) - S_ji(-w))/2.
inline Complex classical_part(Complex s_plus, Complex s_minus_transposed) {
    return 0.5 * (s_plus + s_minus_transposed);
}
inline Complex quantum_part(Complex s_plus, Complex s_minus_transposed) {
    return 0.5 * (s_plus - s_minus_transposed);
}

// S_12(w). Idealized: scale*exp(i theta)*S_ii(w); geometric: spatial_factor(dim, |w| d/c_s)*S_ii(w).
Complex cross_spectrum(const SpectrumModel& model, const CorrelationGeometry& geom, double omega);

// S_21(w) = conj(S_12(w)).
Complex cross_spectrum_swapped(const SpectrumModel& model, const CorrelationGeometry& geom,
                               double omega);

// Classical/quantum spectral densities for both qubits (qubit indices 0 and 1).
class NoiseSpectra {
public:
    NoiseSpectra(SpectrumModel model, CorrelationGeometry geometry, Regime regime = Regime::Classical,
                 double beta = 0.0);

    double local_classical(double omega) const;
    double local_quantum(double omega) const;

    Complex classical(int i, int j, double omega) const;
    Complex quantum(int i, int j, double omega) const;

    // S^C + S^Q and S^C - S^Q, evaluated without cancellation between the two parts.
    double local_emission(double omega) const;
    double local_absorption(double omega) const;
    Complex emission(int i, int j, double omega) const;
    Complex absorption(int i, int j, double omega) const;

    const SpectrumModel& model() const { return model_; }
    const CorrelationGeometry& geometry() const { return geometry_; }
    Regime regime() const { return regime_; }
    double beta() const { return beta_; }

    // Lowest frequency with nonzero weight (the 1/f cutoff), 0 otherwise.
    double lower_edge() const;

private:
    Complex cross_factor(int i, int j, double omega) const;

    SpectrumModel model_;
    CorrelationGeometry geometry_;
    Regime regime_;
    double beta_;
};

// Two- or three-column CSV (w [rad/us], Re S[, Im S]). '#' comments and a non-numeric
// header line are skipped.
Tabulated read_tabulated_csv(std::istream& in);
Tabulated load_tabulated_csv(const std::string& path);

} // namespace corrnoise::noise
