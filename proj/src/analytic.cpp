#include "corrnoise/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "corrnoise/error.hpp"
#include "corrnoise/rates.hpp"

namespace corrnoise::analytic {

Matrix4c dephasing_factors(const Matrix2c& Gamma, double V) {
    // sigma^z eigenvalues of each basis state for qubits 1 and 2
    constexpr int z[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    Matrix4c f;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            Complex e = 0.0;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const double w = z[a][j] * z[b][i] - 0.5 * (z[a][i] * z[a][j] + z[b][i] * z[b][j]);
                    e += Gamma(i, j) * w;
                }
            }
            const double dp = z[a][0] * z[a][1] - z[b][0] * z[b][1];
            e -= kI * V * dp;
            f(a, b) = std::exp(e);
        }
    }
    return f;
}

Matrix4c dephasing_elements(double t, const DephasingParams& p) {
    if (!(p.sigma > 0.0) || !(p.omega_low > 0.0)) {
        throw DomainError("dephasing_elements: sigma and omega_low must be positive");
    }
    if (t < 0.0) {
        throw DomainError("dephasing_elements: t must be non-negative");
    }
    const double gz = rates::integrated_dephasing_1f(t, p.sigma, p.omega_low);
    const Complex corr = p.quantum_regime ? std::polar(1.0, p.theta) : Complex(std::cos(p.theta), 0.0);
    Matrix2c Gamma;
    Gamma << gz, corr * gz, std::conj(corr) * gz, gz;
    const double V = p.quantum_regime ? rates::ising_phase_1f(t, p.sigma, p.theta) : 0.0;
    return dephasing_factors(Gamma, V);
}

Matrix4c dephasing_state(double t, const DephasingParams& p, const Matrix4c& rho0) {
    return dephasing_elements(t, p).cwiseProduct(rho0);
}

double concurrence_sym_exchange(double t, const MarkovianParams& p) {
    if (p.D != 0.0) {
        throw DomainError("concurrence_sym_exchange: requires D = 0 (use concurrence_dm or numerics)");
    }
    const double sh = std::sinh(p.gamma_12 * t);
    const double sn = std::sin(2.0 * p.Js * t);
    return std::exp(-p.gamma_down * t) * std::sqrt(sh * sh + sn * sn);
}

double concurrence_dm(double t, const MarkovianParams& p) {
    if (p.Js != 0.0) {
        throw DomainError("concurrence_dm: requires Js = 0 (use concurrence_sym_exchange or numerics)");
    }
    const double g = p.gamma_12;
    const double amp = g + 2.0 * p.D;
    const double two_d = 2.0 * std::abs(p.D);
    const double decay = std::exp(-p.gamma_down * t);
    const double scale = std::max(std::abs(g), two_d);
    if (std::abs(two_d - std::abs(g)) <= 1e-12 * scale) {
        return decay * std::abs(amp) * t;
    }
    if (two_d > std::abs(g)) {
        const double wr = std::sqrt(4.0 * p.D * p.D - g * g);
        return decay * std::abs(amp * std::sin(wr * t)) / wr;
    }
    const double kappa = std::sqrt(g * g - 4.0 * p.D * p.D);
    return decay * std::abs(amp * std::sinh(kappa * t)) / kappa;
}

double concurrence_classical_1f_bell(double Gamma) {
    if (Gamma < 0.0 || std::isnan(Gamma)) {
        throw DomainError("concurrence_classical_1f_bell: Gamma must be non-negative");
    }
    // 4 e^{-6G} sinh^2(3G) = (1 - e^{-6G})^2
    const double e6 = std::exp(-6.0 * Gamma);
    const double e4 = std::exp(-4.0 * Gamma);
    const double c = (std::sqrt((1.0 - e6) * (1.0 - e6) + 9.0 * e4) + e6 - 1.0) / 3.0;
    return std::max(0.0, c);
}

double concurrence_quantum_1f(double Gamma_down, double Phi, Initial initial) {
    // e^{-G} sinh G = (1 - e^{-2G})/2
    const double e2 = std::exp(-2.0 * Gamma_down);
    const double a = 0.5 * (1.0 - e2);
    // X, Y rotate at rate 2J, so the angle is 2 Phi
    const double osc = initial == Initial::Bell ? std::cos(2.0 * Phi) : std::sin(2.0 * Phi);
    return std::sqrt(a * a + e2 * osc * osc);
}

double residual_entanglement(double beta, double Omega) {
    if (beta < 0.0) {
        throw DomainError("residual_entanglement: beta must be non-negative");
    }
    return 0.5 - 3.0 / (4.0 * std::cosh(beta * Omega) + 2.0);
}

double residual_entanglement_spectral(double S_C, double S_Q) {
    return 2.0 * S_Q * S_Q / (3.0 * S_C * S_C + S_Q * S_Q);
}

} // namespace corrnoise::analytic
