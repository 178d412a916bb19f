#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "corrnoise/error.hpp"
#include "corrnoise/specfun.hpp"

using namespace corrnoise;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Panels of width pi keep the oscillatory integrands well resolved.
template <typename F>
long double panel_integral(F f, long double a, long double b) {
    const long double w = boost::math::constants::pi<long double>();
    long double sum = 0;
    for (long double lo = a; lo < b; lo += w) {
        const long double hi = std::min(b, lo + w);
        sum += gauss_kronrod<long double, 31>::integrate(f, lo, hi, 8, 1e-18L);
    }
    return sum;
}

long double si_oracle(long double x) {
    return panel_integral([](long double t) { return t == 0 ? 1.0L : std::sin(t) / t; }, 0.0L, x);
}

// Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt
long double ci_oracle(long double x) {
    const long double tail = panel_integral(
        [](long double t) { return t == 0 ? 0.0L : (std::cos(t) - 1.0L) / t; }, 0.0L, x);
    return boost::math::constants::euler<long double>() + std::log(x) + tail;
}

} // namespace

TEST_CASE("sin integral reference values") {
    CHECK(specfun::sin_integral(0.0) == 0.0);
    CHECK(specfun::sin_integral(1.0) == doctest::Approx(0.946083070367183).epsilon(1e-14));
    CHECK(std::abs(specfun::sin_integral(1e4) - M_PI / 2) < 1e-3);
    CHECK_THROWS_AS(specfun::sin_integral(std::nan("")), DomainError);
    CHECK_THROWS_AS(specfun::sin_integral(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("cos integral reference values") {
    CHECK(specfun::cos_integral(1.0) == doctest::Approx(0.337403922900968).epsilon(1e-13));
    const double x = 1e-6;
    CHECK(std::abs(specfun::cos_integral(x) - (0.5772156649015329 + std::log(x))) < 1e-10);
    CHECK(std::abs(specfun::cos_integral(1e4)) < 1e-3);
    CHECK_THROWS_AS(specfun::cos_integral(0.0), DomainError);
    CHECK_THROWS_AS(specfun::cos_integral(-1.0), DomainError);
}

TEST_CASE("Si and Ci match quadrature on a log grid") {
    double worst_si = 0.0;
    double worst_ci = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = std::pow(10.0, -3.0 + 6.0 * k / 99.0);
        const double si = specfun::sin_integral(x);
        const double ci = specfun::cos_integral(x);
        const double si_ref = static_cast<double>(si_oracle(x));
        const double ci_ref = static_cast<double>(ci_oracle(x));
        worst_si = std::max(worst_si, std::abs(si - si_ref) / std::max(1.0, std::abs(si_ref)));
        worst_ci = std::max(worst_ci, std::abs(ci - ci_ref) / std::max(1.0, std::abs(ci_ref)));
        CHECK(specfun::sin_integral(-x) == -si);
    }
    CHECK(worst_si < 1e-10);
    CHECK(worst_ci < 1e-10);
}


TEST_CASE("Bessel J0") {
    CHECK(specfun::bessel_j0(0.0) == 1.0);
    CHECK(std::abs(specfun::bessel_j0(2.404825557695773)) < 1e-9);
    CHECK(specfun::bessel_j0(-3.3) == specfun::bessel_j0(3.3));
    CHECK_THROWS_AS(specfun::bessel_j0(std::nan("")), DomainError);
    for (int k = 0; k <= 2000; ++k) {
        const double x = 0.05 * k;
        CHECK(std::abs(specfun::bessel_j0(x)) <= 1.0);
        CHECK(specfun::bessel_j0(x) == doctest::Approx(boost::math::cyl_bessel_j(0, x)).epsilon(1e-12));
    }
}

TEST_CASE("Bessel J0 satisfies its ODE") {
    const double h = 1e-2;
    double worst = 0.0;
    for (int k = 0; k <= 500; ++k) {
        const double x = 0.1 + (50.0 - 0.1) * k / 500.0;
        auto f = [](double v) { return specfun::bessel_j0(v); };
        const double d1 = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
        const double d2 =
            (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
        worst = std::max(worst, std::abs(x * d2 + d1 + x * f(x)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("Bose-Einstein occupation") {
    CHECK(specfun::bose_einstein(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::bose_einstein(1.0, 1.0) == doctest::Approx(0.5819767068693265).epsilon(1e-14));
    CHECK(specfun::bose_einstein(800.0, 1.0) == 0.0);
    CHECK_THROWS_AS(specfun::bose_einstein(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(specfun::bose_einstein(1.0, 0.0), DomainError);
    for (double bw : {0.01, 0.3, 1.0, 4.0, 20.0, -2.0}) {
        const double lhs = 1.0 + 2.0 * specfun::bose_einstein(bw, 1.0);
        CHECK(lhs == doctest::Approx(1.0 / std::tanh(bw / 2.0)).epsilon(1e-12));
    }
}
