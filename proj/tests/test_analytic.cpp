#include <doctest.h>

#include <cmath>

#include "corrnoise/analytic.hpp"
#include "corrnoise/dynamics.hpp"
#include "corrnoise/error.hpp"
#include "corrnoise/rates.hpp"

using namespace corrnoise;
using namespace corrnoise::analytic;
using rates::CoefficientSet;

namespace {

GeneratorSpec markovian(double g, double g12, Complex J) {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::Transverse;
    gen.markovian = true;
    gen.coefficients = [=](double) { return markovian_set(g, g12, J); };
    return gen;
}

// Fully correlated transverse 1/f generator: gamma_12 = gamma for both rate matrices.
GeneratorSpec transverse_1f(double sigma, double wl, double Omega, bool quantum) {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::Transverse;
    gen.timescale = kTwoPi / Omega;
    gen.coefficients = [=](double t) {
        CoefficientSet c;
        c.time = t;
        const Matrix2c ones = Matrix2c::Ones();
        if (quantum) {
            c.gamma_down = rates::quantum_decay_rate_1f(t, sigma, wl, Omega) * ones;
            c.J = rates::transverse_coupling_1f(t, sigma, Omega);
        } else {
            c.gamma_down = rates::classical_rate_1f(t, sigma, wl, Omega) * ones;
            c.gamma_up = c.gamma_down;
        }
        return c;
    };
    return gen;
}

} // namespace

TEST_CASE("dephasing factors reproduce the element list") {
    const DephasingParams p{2.0, kTwoPi, kPi / 3, true};
    const Matrix4c f0 = dephasing_elements(0.0, p);
    CHECK((f0 - Matrix4c::Ones()).cwiseAbs().maxCoeff() < 1e-15);
    for (double theta : {0.0, kPi / 3, kPi / 2, 2.5}) {
        const DephasingParams q{2.0, kTwoPi, theta, true};
        for (double t : {0.05, 0.1, 0.2}) {
            const Matrix4c f = dephasing_elements(t, q);
            const double G = rates::integrated_dephasing_1f(t, q.sigma, q.omega_low);
            const double V = rates::ising_phase_1f(t, q.sigma, theta);
            CHECK(std::abs(f(0, 1) - std::exp(-2.0 * Complex(1.0, -std::sin(theta)) * G - 2.0 * kI * V)) < 1e-14);
            CHECK(std::abs(f(1, 2) - std::exp(-4.0 * (1 - std::cos(theta)) * G)) < 1e-14);
            CHECK(std::abs(f(0, 3) - std::exp(-4.0 * (1 + std::cos(theta)) * G)) < 1e-14);
            for (int a = 0; a < 4; ++a) CHECK(f(a, a) == Complex(1.0));
            CHECK((f - f.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
    const DephasingParams zero{2.0, kTwoPi, 0.0, true};
    for (double t : {0.1, 0.3}) CHECK(std::abs(dephasing_elements(t, zero)(1, 2) - 1.0) < 1e-15);
    const double G = rates::integrated_dephasing_1f(0.1, p.sigma, p.omega_low);
    CHECK(std::abs(dephasing_elements(0.1, p)(1, 2)) == doctest::Approx(std::exp(-2.0 * G)));
    CHECK_THROWS_AS(dephasing_elements(-1.0, p), DomainError);
    CHECK_THROWS_AS(dephasing_elements(1.0, DephasingParams{0.0, 1.0, 0.0, true}), DomainError);
}

TEST_CASE("classical-regime dephasing has no Ising phase") {
    const DephasingParams c{2.0, kTwoPi, kPi / 3, false};
    const Matrix4c f = dephasing_elements(0.1, c);
    const double G = rates::integrated_dephasing_1f(0.1, c.sigma, c.omega_low);
    CHECK(std::abs(f(0, 1) - std::exp(-2.0 * G)) < 1e-14);
    CHECK(std::abs(f(1, 2) - std::exp(-4.0 * (1 - 0.5) * G)) < 1e-14);
}

TEST_CASE("symmetric exchange closed form") {
    CHECK(concurrence_sym_exchange(0.0, {1.0, 0.9, 5.0, 0.0}) == 0.0);
    for (double t : {20.0, 30.0}) {
        const double c = concurrence_sym_exchange(t, {1.0, 0.9, 0.0, 0.0});
        CHECK(c == doctest::Approx(0.5 * std::exp(-0.1 * t)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(concurrence_sym_exchange(1.0, {1.0, 0.9, 1.0, 0.1}), DomainError);
    for (double t : {0.3, 1.7}) {
        CHECK(concurrence_sym_exchange(t, {1.0, 0.9, 2.0, 0.0}) == concurrence_sym_exchange(t, {1.0, 0.9, -2.0, 0.0}));
    }
    const double expect = std::exp(-0.5) * std::sqrt(std::pow(std::sinh(0.45), 2) + std::pow(std::sin(5.0), 2));
    CHECK(concurrence_sym_exchange(0.5, {1.0, 0.9, 5.0, 0.0}) == doctest::Approx(expect).epsilon(1e-15));
    const auto tr = evolve(named_state(NamedState::UpDown), markovian(1.0, 0.9, 5.0), {0.0, 0.25, 0.5});
    CHECK(std::abs(tr.measures[2].concurrence - expect) < 1e-6);
}

TEST_CASE("symmetric exchange closed form matches numerics") {
    const auto times = uniform_grid(5.0, 201);
    for (double js : {0.0, 0.5, 1.0, 2.0, 5.0, -3.0}) {
        const auto tr = evolve(named_state(NamedState::UpDown), markovian(1.0, 0.9, js), times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            CHECK(std::abs(tr.measures[k].concurrence - concurrence_sym_exchange(times[k], {1.0, 0.9, js, 0.0})) < 1e-5);
        }
    }
}

TEST_CASE("DM closed form") {
    CHECK(concurrence_dm(0.7, {1.0, 0.9, 0.0, 0.45}) == doctest::Approx(2 * 0.9 * 0.7 * std::exp(-0.7)).epsilon(1e-14));
    for (double t : {0.1, 1.0, 3.0}) {
        CHECK(concurrence_dm(t, {1.0, 0.9, 0.0, 0.0}) == doctest::Approx(std::exp(-t) * std::sinh(0.9 * t)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(concurrence_dm(1.0, {1.0, 0.9, 1.0, 0.3}), DomainError);

    const double wr = std::sqrt(4 * 25.0 - 0.81);
    CHECK(concurrence_dm(kPi / wr, {1.0, 0.9, 0.0, 5.0}) < 1e-14);
    CHECK(concurrence_dm(0.5 * kPi / wr, {1.0, 0.9, 0.0, 5.0}) > 0.1);

    // Continuity across the critical point.
    for (double t : {0.2, 1.0, 4.0}) {
        const double crit = concurrence_dm(t, {1.0, 0.9, 0.0, 0.45});
        for (double s : {1.0 - 1e-6, 1.0 + 1e-6}) {
            const double c = concurrence_dm(t, {1.0, 0.9, 0.0, 0.45 * s});
            CHECK(std::abs(c - crit) < 1e-4 * crit);
        }
    }
}

TEST_CASE("DM closed form matches numerics in every regime and for both signs") {
    const auto times = uniform_grid(5.0, 201);
    for (double d : {0.2, 0.45, 5.0, -0.2, -0.45, -5.0}) {
        const auto tr = evolve(named_state(NamedState::UpDown), markovian(1.0, 0.9, Complex(0.0, d)), times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            CHECK(std::abs(tr.measures[k].concurrence - concurrence_dm(times[k], {1.0, 0.9, 0.0, d})) < 1e-5);
        }
    }
}

TEST_CASE("classical 1/f Bell closed form") {
    CHECK(concurrence_classical_1f_bell(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(concurrence_classical_1f_bell(50.0) >= 0.0);
    CHECK(concurrence_classical_1f_bell(50.0) < 1e-12);
    CHECK_THROWS_AS(concurrence_classical_1f_bell(-0.1), DomainError);
    for (double G : {0.01, 0.2, 1.0, 3.0}) {
        const double sinh_form = (std::sqrt(4 * std::exp(-6 * G) * std::pow(std::sinh(3 * G), 2) + 9 * std::exp(-4 * G))
                              + std::exp(-6 * G) - 1)
                             / 3;
        CHECK(concurrence_classical_1f_bell(G) == doctest::Approx(sinh_form).epsilon(1e-12));
    }
}

TEST_CASE("classical 1/f Bell closed form matches numerics") {
    const double sigma = 10.0, wl = kTwoPi, Omega = kTwoPi * 1e3;
    std::vector<double> times;
    for (int k = 0; k < 20; ++k) times.push_back(0.05 * k / 19.0);
    const auto tr = evolve(named_state(NamedState::BellI), transverse_1f(sigma, wl, Omega, false), times);
    const auto G = rates::cumulative_integral([&](double t) { return rates::classical_rate_1f(t, sigma, wl, Omega); }, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(std::abs(tr.measures[k].concurrence - concurrence_classical_1f_bell(std::max(0.0, G[k]))) < 1e-5);
    }
}

TEST_CASE("quantum 1/f closed forms") {
    CHECK(concurrence_quantum_1f(0.0, 0.0, Initial::Product) == 0.0);
    CHECK(concurrence_quantum_1f(0.0, 0.0, Initial::Bell) == 1.0);
    CHECK(concurrence_quantum_1f(40.0, 0.3, Initial::Bell) == doctest::Approx(0.5));
    CHECK(concurrence_quantum_1f(40.0, 0.3, Initial::Product) == doctest::Approx(0.5));
    // without decay the product state follows the exchange formula sin(2 Js t)
    CHECK(concurrence_quantum_1f(0.0, 0.3, Initial::Product)
          == doctest::Approx(concurrence_sym_exchange(0.1, {0.0, 0.0, 3.0, 0.0})));
    for (double G : {0.05, 0.7, 2.0}) {
        for (double phi : {0.0, 0.4, 2.0}) {
            const double bell = std::exp(-G) * std::sqrt(std::pow(std::sinh(G), 2) + std::pow(std::cos(2 * phi), 2));
            const double prod = std::exp(-G) * std::sqrt(std::pow(std::sinh(G), 2) + std::pow(std::sin(2 * phi), 2));
            CHECK(concurrence_quantum_1f(G, phi, Initial::Bell) == doctest::Approx(bell).epsilon(1e-13));
            CHECK(concurrence_quantum_1f(G, phi, Initial::Product) == doctest::Approx(prod).epsilon(1e-13));
        }
    }
}

TEST_CASE("quantum 1/f closed forms match numerics") {
    const double sigma = 1.0 / 0.003, wl = kTwoPi, Omega = kTwoPi * 1e3;
    const auto times = uniform_grid(0.01, 41);
    const auto gen = transverse_1f(sigma, wl, Omega, true);
    const auto Gd = rates::cumulative_integral([&](double t) { return rates::quantum_decay_rate_1f(t, sigma, wl, Omega); }, times);
    for (auto [s, init] : {std::pair{NamedState::BellI, Initial::Bell}, std::pair{NamedState::UpDown, Initial::Product}}) {
        const auto tr = evolve(named_state(s), gen, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double phi = rates::coupling_phase_1f(times[k], sigma, Omega);
            CHECK(std::abs(tr.measures[k].concurrence - concurrence_quantum_1f(Gd[k], phi, init)) < 1e-5);
        }
    }
}

TEST_CASE("residual entanglement") {
    CHECK(residual_entanglement(0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(residual_entanglement(1e4, 1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(residual_entanglement(-1.0, 1.0), DomainError);
    for (int k = 0; k < 100; ++k) {
        const double bo = 0.1 + (10.0 - 0.1) * k / 99.0;
        const double sq = 0.37;
        const double sc = sq / std::tanh(bo / 2);
        CHECK(std::abs(residual_entanglement(bo, 1.0) - residual_entanglement_spectral(sc, sq)) < 1e-12);
    }
}
