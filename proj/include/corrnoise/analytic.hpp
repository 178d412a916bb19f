#pragma once

#include "corrnoise/types.hpp"

namespace corrnoise::analytic {

struct DephasingParams {
    double sigma = 0.0;     // sigma/hbar, rad/us
    double omega_low = 0.0; // rad/us
    double theta = 0.0;
    bool quantum_regime = true; // S^Q ~ S^C (true) or S^Q = 0
};

struct MarkovianParams {
    double gamma_down = 0.0;
    double gamma_12 = 0.0;
    double Js = 0.0;
    double D = 0.0;
};

// Multiplicative factor per density-matrix element for a diagonal-in-basis dephasing generator
// with integrated rate matrix Gamma_ij = int gamma^z_ij and Ising phase V = int J^z.
Matrix4c dephasing_factors(const Matrix2c& Gamma, double V);

// Factors for 1/f dephasing at time t; diagonal entries are 1.
Matrix4c dephasing_elements(double t, const DephasingParams& p);

// rho(t) = factors (elementwise) rho0.
Matrix4c dephasing_state(double t, const DephasingParams& p, const Matrix4c& rho0);

// Concurrence from |ud> with symmetric exchange only. Throws DomainError when D != 0.
double concurrence_sym_exchange(double t, const MarkovianParams& p);

// Concurrence from |ud> with DM interaction only (under-, critically and overdamped branches).
// Throws DomainError when Js != 0.
double concurrence_dm(double t, const MarkovianParams& p);

// Bell state (|ud> + i|du>)/sqrt2 under classical 1/f noise, Gamma = int gamma. Throws for Gamma < 0.
double concurrence_classical_1f_bell(double Gamma);

enum class Initial { Bell, Product };

// Quantum 1/f noise at zero temperature; Gamma_down = int gamma_down, Phi = int J.
// The triplet-singlet coherence rotates by 2 Phi.
double concurrence_quantum_1f(double Gamma_down, double Phi, Initial initial);

// Long-time concurrence 1/2 - 3/(4 cosh(beta Omega) + 2).
double residual_entanglement(double beta, double Omega);

// Same quantity from the spectra at Omega: 2 (S^Q)^2 / (3 (S^C)^2 + (S^Q)^2).
double residual_entanglement_spectral(double S_C, double S_Q);

} // namespace corrnoise::analytic
