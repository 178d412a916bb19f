#include "corrnoise/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "corrnoise/error.hpp"
#include "corrnoise/types.hpp"

namespace corrnoise::specfun {

namespace {

constexpr double kSeriesLimit = 2.0;
constexpr double kEps = 1e-16;

struct SiCi {
    double si;
    double ci;
};

// Power series, valid and accurate for 0 < x <= kSeriesLimit.
SiCi series(double x) {
    double si = 0.0;
    double ci = 0.0;
    double term = x; // x^(2k+1)/(2k+1)! with alternating sign
    for (int k = 0; k < 60; ++k) {
        const double si_term = term / (2 * k + 1);
        si += si_term;
        // cos series term for index k+1: (-1)^(k+1) x^(2k+2)/((2k+2)(2k+2)!)
        const double next = -term * x / (2 * k + 2); // (-1)^(k+1) x^(2k+2)/(2k+2)!
        const double ci_term = next / (2 * k + 2);
        ci += ci_term;
        term = next * x / (2 * k + 3);
        if (std::abs(si_term) < kEps * std::abs(si) && std::abs(ci_term) < kEps * std::abs(ci) + 1e-300) {
            break;
        }
    }
    return {si, kEulerGamma + std::log(x) + ci};
}

// Continued fraction for E1(ix) (modified Lentz), valid for x > kSeriesLimit.
SiCi continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    std::complex<double> b{1.0, x};
    std::complex<double> c{1.0 / tiny, 0.0};
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 2; i < 100000; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) {
            break;
        }
    }
    h *= std::complex<double>{std::cos(x), -std::sin(x)};
    return {kPi / 2.0 + h.imag(), -h.real()};
}

SiCi sici_positive(double x) {
    return x <= kSeriesLimit ? series(x) : continued_fraction(x);
}

void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": non-finite argument");
    }
}

} // namespace

double sin_integral(double x) {
    require_finite(x, "sin_integral");
    if (x == 0.0) {
        return 0.0;
    }
    const double si = sici_positive(std::abs(x)).si;
    return x < 0.0 ? -si : si;
}

double cos_integral(double x) {
    require_finite(x, "cos_integral");
    if (x <= 0.0) {
        throw DomainError("cos_integral: argument must be positive (branch cut at x <= 0)");
    }
    return sici_positive(x).ci;
}

double bessel_j0(double x) {
    require_finite(x, "bessel_j0");
    return std::cyl_bessel_j(0.0, std::abs(x));
}

double bose_einstein(double omega, double beta) {
    const double bw = beta * omega;
    if (bw == 0.0) {
        throw DomainError("bose_einstein: beta*omega == 0 diverges");
    }
    return 1.0 / std::expm1(bw);
}

} // namespace corrnoise::specfun
