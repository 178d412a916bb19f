#pragma once

#include "corrnoise/states.hpp"

namespace corrnoise {

// Wootters concurrence. The lambdas are the singular values of sqrt(rho) Y conj(sqrt(rho)),
// Y = sy (x) sy, which equal the square roots of the eigenvalues of rho Y rho* Y.
double concurrence(const DensityMatrix4& rho);

// Same quantity from the eigenvalues of the non-Hermitian product rho Y rho* Y directly.
// Kept as an independent route for cross-checks; loses accuracy near rank-deficient states.
double concurrence_eigen(const DensityMatrix4& rho);

// Shortcut valid when the only coherences sit in the {ud, du} block.
double concurrence_ts_form(double G_t, double G_s, double im_G_ts, double G11, double G44);

// h((1 + sqrt(1 - C^2))/2) with the binary entropy h. Throws DomainError for C outside [0, 1].
double entanglement_of_formation(double C);

// Lower bound on E_F from the singlet fidelity F (0 for F <= 1/2).
double werner_lower_bound(double F);

// <S|rho|S>.
double singlet_fidelity(const DensityMatrix4& rho);

} // namespace corrnoise
