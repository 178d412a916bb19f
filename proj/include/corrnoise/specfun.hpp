#pragma once

namespace corrnoise::specfun {

// Si(x) = int_0^x sin(t)/t dt. Throws DomainError for non-finite x.
double sin_integral(double x);

// Ci(x) = -int_x^inf cos(t)/t dt = gamma + ln x + sum_k (-x^2)^k / (2k (2k)!), x > 0.
double cos_integral(double x);

// Bessel function of the first kind, order zero.
double bessel_j0(double x);

// Occupation 1/(exp(beta*omega) - 1); throws DomainError when beta*omega == 0.
double bose_einstein(double omega, double beta);

} // namespace corrnoise::specfun
