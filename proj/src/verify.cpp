#include "corrnoise/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "corrnoise/entanglement.hpp"
#include "corrnoise/error.hpp"
#include "corrnoise/figures.hpp"
#include "corrnoise/noise.hpp"
#include "corrnoise/rates.hpp"
#include "corrnoise/scenario.hpp"
#include "corrnoise/specfun.hpp"

namespace corrnoise::verify {

namespace {

double uniform(std::mt19937_64& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

GeneratorSpec constant(GeneratorKind kind, const rates::CoefficientSet& c, bool markovian) {
    GeneratorSpec g;
    g.kind = kind;
    g.markovian = markovian;
    g.coefficients = [c](double t) {
        rates::CoefficientSet out = c;
        out.time = t;
        return out;
    };
    return g;
}

GeneratorSpec markovian(double g, double g12, Complex J) {
    return constant(GeneratorKind::Transverse, markovian_set(g, g12, J), true);
}

class Collector {
public:
    Collector(Report& r, std::string suite) : r_(r), suite_(std::move(suite)) {}

    // Passes when value <= tol.
    void below(const std::string& name, double value, double tol) {
        r_.checks.push_back({suite_, name, std::isfinite(value) && value <= tol, value, tol});
    }

    // Runs `body`; a thrown exception counts as failure.
    template <typename F>
    void guarded(const std::string& name, double tol, F body) {
        try {
            below(name, body(), tol);
        } catch (const std::exception&) {
            r_.checks.push_back({suite_, name, false, std::nan(""), tol});
        }
    }

private:
    Report& r_;
    std::string suite_;
};

void oracles(Report& report, const Hooks& hooks) {
    Collector c(report, "oracles");
    const auto grid = uniform_grid(5.0, 251);

    c.guarded("markovian exchange concurrence matches closed form", 1e-5, [&] {
        double err = 0.0;
        for (double js : {0.0, 1.0, 5.0}) {
            const auto tr = evolve(named_state(NamedState::UpDown), markovian(1.0, 0.9, js), grid);
            for (std::size_t k = 0; k < grid.size(); ++k) {
                err = std::max(err, std::abs(tr.measures[k].concurrence - hooks.sym_exchange(grid[k], {1.0, 0.9, js, 0.0})));
            }
        }
        return err;
    });

    c.guarded("dm concurrence matches closed form in all three regimes", 1e-5, [&] {
        double err = 0.0;
        for (double d : {0.2, 0.45, 5.0, -0.2}) {
            const auto tr = evolve(named_state(NamedState::UpDown), markovian(1.0, 0.9, Complex(0.0, d)), grid);
            for (std::size_t k = 0; k < grid.size(); ++k) {
                err = std::max(err, std::abs(tr.measures[k].concurrence - analytic::concurrence_dm(grid[k], {1.0, 0.9, 0.0, d})));
            }
        }
        return err;
    });

    c.guarded("dephasing density matrix matches closed-form factors", 1e-8, [&] {
        const auto& p = figures::kDephasingCase;
        const auto times = uniform_grid(0.2, 41);
        const DensityMatrix4 rho0 = named_state(NamedState::PlusPlus);
        double err = 0.0;
        for (double theta : {0.0, kPi / 3.0, kPi / 2.0, kPi}) {
            scenario::RunConfig cfg;
            cfg.scenario = scenario::Scenario::Dephasing1f;
            cfg.spectrum = noise::OneOverF{p.sigma, p.omega_low};
            cfg.geometry.phase_theta = theta;
            EvolveOptions opts;
            opts.tolerance = 1e-10;
            const auto tr = evolve(rho0, scenario::make_generator(cfg), times, opts);
            for (std::size_t k = 0; k < times.size(); ++k) {
                const Matrix4c an = analytic::dephasing_state(times[k], {p.sigma, p.omega_low, theta, true}, rho0.matrix());
                err = std::max(err, (an - tr.states[k].matrix()).cwiseAbs().maxCoeff());
            }
        }
        return err;
    });

    c.guarded("classical 1/f bell concurrence matches closed form", 1e-5, [&] {
        const auto& p = figures::kTransverseCase;
        scenario::RunConfig cfg;
        cfg.scenario = scenario::Scenario::Classical1f;
        cfg.spectrum = noise::OneOverF{p.sigma, p.omega_low};
        cfg.drive_omega = p.Omega;
        cfg.regime = noise::Regime::Classical;
        const auto times = uniform_grid(0.05, 201);
        const auto tr = evolve(named_state(NamedState::BellI), scenario::make_generator(cfg), times);
        const auto Gamma = rates::cumulative_integral(
            [&](double t) { return rates::classical_rate_1f(t, p.sigma, p.omega_low, p.Omega); }, times);
        double err = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            err = std::max(err, std::abs(tr.measures[k].concurrence
                                         - analytic::concurrence_classical_1f_bell(std::max(0.0, Gamma[k]))));
        }
        return err;
    });

    c.guarded("quantum 1/f concurrence matches closed form for both initial states", 1e-5, [&] {
        const auto& p = figures::kStrongCase;
        scenario::RunConfig cfg;
        cfg.scenario = scenario::Scenario::Quantum1f;
        cfg.spectrum = noise::OneOverF{p.sigma, p.omega_low};
        cfg.drive_omega = p.Omega;
        const auto times = uniform_grid(0.01, 201);
        const auto gen = scenario::make_generator(cfg);
        const auto Gd = rates::cumulative_integral(
            [&](double t) { return rates::quantum_decay_rate_1f(t, p.sigma, p.omega_low, p.Omega); }, times);
        double err = 0.0;
        for (auto [s, kind] : {std::pair{NamedState::BellI, analytic::Initial::Bell},
                               std::pair{NamedState::UpDown, analytic::Initial::Product}}) {
            const auto tr = evolve(named_state(s), gen, times);
            for (std::size_t k = 0; k < times.size(); ++k) {
                const double phi = rates::coupling_phase_1f(times[k], p.sigma, p.Omega);
                err = std::max(err, std::abs(tr.measures[k].concurrence - analytic::concurrence_quantum_1f(Gd[k], phi, kind)));
            }
        }
        return err;
    });

    c.guarded("residual entanglement matches liouvillian null space", 1e-4, [&] {
        double err = 0.0;
        for (double bo : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const auto rho = steady_state_nullspace(markovian_set(1.0, 1.0, 0.0, std::exp(-bo)), GeneratorKind::Transverse);
            err = std::max(err, std::abs(concurrence(rho) - analytic::residual_entanglement(bo, 1.0)));
        }
        return err;
    });

    c.guarded("steady state closed form matches null space", 1e-8, [&] {
        double err = 0.0;
        for (double bo : {0.5, 1.0, 2.0, 5.0}) {
            const auto cs = markovian_set(1.0, 1.0, 0.0, std::exp(-bo));
            const auto a = steady_state_nullspace(cs, GeneratorKind::Transverse);
            const auto b = thermal_steady_state(std::exp(-bo));
            err = std::max(err, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff());
        }
        return err;
    });

    c.guarded("1/f coupling closed form matches quadrature", 1e-2, [&] {
        const auto& p = figures::kTransverseCase;
        const noise::NoiseSpectra sp(noise::OneOverF{p.sigma, p.omega_low}, {}, noise::Regime::Quantum);
        double err = 0.0;
        for (double t : {0.0003, 0.0011, 0.0017}) {
            const auto q = rates::transverse_coefficients(sp, p.Omega, t);
            const double cf = rates::transverse_coupling_1f(t, p.sigma, p.Omega);
            err = std::max(err, std::abs(q.J.real() - cf) / (2.0 * kPi * p.sigma * p.sigma / p.Omega));
        }
        return err;
    });

    c.guarded("1/f dephasing closed form matches quadrature", 1e-2, [&] {
        const auto& p = figures::kDephasingCase;
        const noise::NoiseSpectra sp(noise::OneOverF{p.sigma, p.omega_low}, {}, noise::Regime::Quantum);
        double err = 0.0;
        for (double t : {0.002, 0.005, 0.01}) {
            const auto q = rates::dephasing_coefficients(sp, t);
            const double cf = rates::dephasing_rate_1f(t, p.sigma, p.omega_low);
            err = std::max(err, std::abs(q.gamma_z(0, 0).real() - cf) / cf);
        }
        return err;
    });
}

void invariants(Report& report, std::mt19937_64& rng) {
    Collector c(report, "invariants");

    c.guarded("random evolutions stay physical", 0.0, [&] {
        double bad = 0.0;
        for (int n = 0; n < 40; ++n) {
            const RandomCase rc = random_case(rng);
            const auto tr = evolve(rc.initial, rc.generator, rc.times, {1e-7});
            for (const auto& s : tr.states) {
                if (!validate_state(s.matrix()).ok()) bad += 1.0;
            }
        }
        return bad;
    });

    c.guarded("classical noise leaves product states separable", 1e-8, [&] {
        double worst = 0.0;
        const auto grid = uniform_grid(5.0, 101);
        for (int n = 0; n < 5; ++n) {
            const double g = uniform(rng, 0.5, 1.5);
            const double g12 = uniform(rng, 0.0, 1.0) * g;
            rates::CoefficientSet cs = markovian_set(g, g12, 0.0);
            cs.gamma_up = cs.gamma_down.transpose();
            const auto tr = evolve(named_state(NamedState::UpDown), constant(GeneratorKind::Transverse, cs, true), grid);
            for (const auto& m : tr.measures) worst = std::max(worst, m.concurrence);
        }
        return worst;
    });

    c.guarded("dephasing keeps populations", 1e-10, [&] {
        const DensityMatrix4 rho0 = random_state(rng);
        rates::CoefficientSet cs;
        cs.Jz = uniform(rng, -2.0, 2.0);
        const double g = uniform(rng, 0.1, 2.0);
        cs.gamma_z << g, 0.7 * g * std::polar(1.0, 0.4), 0.7 * g * std::polar(1.0, -0.4), g;
        const auto tr = evolve(rho0, constant(GeneratorKind::Dephasing, cs, false), uniform_grid(3.0, 31));
        double drift = 0.0;
        for (const auto& s : tr.states) {
            drift = std::max(drift, (s.matrix().diagonal() - rho0.matrix().diagonal()).cwiseAbs().maxCoeff());
        }
        return drift;
    });

    c.guarded("concurrence invariant under local unitaries", 1e-10, [&] {
        double err = 0.0;
        std::normal_distribution<double> n(0.0, 1.0);
        for (int k = 0; k < 50; ++k) {
            const DensityMatrix4 rho = random_state(rng, 1 + k % 4);
            Matrix2c a, b;
            for (int i = 0; i < 4; ++i) {
                a(i / 2, i % 2) = Complex(n(rng), n(rng));
                b(i / 2, i % 2) = Complex(n(rng), n(rng));
            }
            const Matrix2c ua = Eigen::HouseholderQR<Matrix2c>(a).householderQ();
            const Matrix2c ub = Eigen::HouseholderQR<Matrix2c>(b).householderQ();
            Matrix4c u;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = ua(i, j) * ub;
            const auto rot = DensityMatrix4::unchecked(u * rho.matrix() * u.adjoint());
            err = std::max(err, std::abs(concurrence(rho) - concurrence(rot)));
        }
        return err;
    });

    c.guarded("singlet fidelity bound holds", 1e-10, [&] {
        double worst = -1.0;
        for (int k = 0; k < 200; ++k) {
            const DensityMatrix4 rho = random_state(rng, 1 + k % 4);
            worst = std::max(worst, werner_lower_bound(singlet_fidelity(rho)) - entanglement_of_formation(concurrence(rho)));
        }
        return std::max(0.0, worst);
    });

    c.guarded("detailed balance of markovian rates", 1e-10, [&] {
        double err = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double beta = uniform(rng, 0.01, 2.0);
            const double Omega = uniform(rng, 0.5, 5.0);
            const noise::NoiseSpectra sp(noise::LinearDispersion{uniform(rng, 0.1, 2.0), 5e3, beta},
                                         {noise::CrossMode::Geometric, 2, uniform(rng, 0.0, 3.0), 5e3, 0.0, 1.0});
            const auto cs = rates::markovian_coefficients(sp, Omega);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const Complex d = cs.gamma_down(i, j);
                    const Complex u = cs.gamma_up(j, i);
                    err = std::max(err, std::abs(d - std::exp(beta * Omega) * u) / std::max(std::abs(d), 1e-300));
                }
        }
        return err;
    });

    c.guarded("cross spectrum bounded by local spectrum", 0.0, [&] {
        double worst = 0.0;
        const noise::SpectrumModel model = noise::OneOverF{1.0, 0.5};
        for (int dim : {1, 2, 3}) {
            for (int k = 0; k < 200; ++k) {
                noise::CorrelationGeometry g{noise::CrossMode::Geometric, dim, uniform(rng, 0.0, 10.0), 5e3, 0.0, 1.0};
                const double w = uniform(rng, -1e4, 1e4);
                worst = std::max(worst, std::abs(noise::cross_spectrum(model, g, w)) - noise::local_spectrum(model, w));
            }
        }
        for (int k = 0; k < 200; ++k) {
            noise::CorrelationGeometry g{noise::CrossMode::Idealized, 2, 0.0, 0.0, uniform(rng, 0.0, kTwoPi),
                                         uniform(rng, 0.0, 1.0)};
            const double w = uniform(rng, -10.0, 10.0);
            worst = std::max(worst, std::abs(noise::cross_spectrum(model, g, w)) - noise::local_spectrum(model, w));
        }
        return std::max(0.0, worst - 1e-15);
    });

    c.guarded("integrated non-markovian rates stay non-negative", 1e-12, [&] {
        const auto& p = figures::kTransverseCase;
        const auto times = uniform_grid(0.05, 2000);
        const auto a = rates::cumulative_integral(
            [&](double t) { return rates::classical_rate_1f(t, p.sigma, p.omega_low, p.Omega); }, times);
        const auto b = rates::cumulative_integral(
            [&](double t) { return rates::quantum_decay_rate_1f(t, p.sigma, p.omega_low, p.Omega); }, times);
        const double lo = std::min(*std::min_element(a.begin(), a.end()), *std::min_element(b.begin(), b.end()));
        return std::max(0.0, -lo);
    });
}

} // namespace

Suite parse_suite(std::string_view name) {
    if (name == "all") return Suite::All;
    if (name == "invariants") return Suite::Invariants;
    if (name == "oracles") return Suite::Oracles;
    throw DomainError("unknown suite '" + std::string(name) + "'; valid: all, invariants, oracles");
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void Report::print(std::ostream& out) const {
    char buf[256];
    int failed = 0;
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-62s  %10.3e  (tol %.1e)\n", c.pass ? "PASS" : "FAIL",
                      c.suite.c_str(), c.name.c_str(), c.value, c.tolerance);
        out << buf;
        failed += c.pass ? 0 : 1;
    }
    out << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
}

Report run(Suite suite, std::uint64_t seed, const Hooks& hooks) {
    Report r;
    std::mt19937_64 rng(seed);
    // Rate warnings are expected for some random draws; keep the report clean.
    rates::set_warning_handler([](const std::string&) {});
    if (suite != Suite::Oracles) invariants(r, rng);
    if (suite != Suite::Invariants) oracles(r, hooks);
    rates::set_warning_handler(nullptr);
    return r;
}

RandomCase random_case(std::mt19937_64& rng) {
    RandomCase rc;
    const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
    const int rank = std::uniform_int_distribution<int>(1, 4)(rng);
    rc.initial = random_state(rng, rank);
    switch (kind) {
    case 0: { // Markovian transverse, any temperature
        const double g = uniform(rng, 0.2, 2.0);
        const double g12 = uniform(rng, 0.0, 1.0) * g;
        const Complex J(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0));
        rc.generator = constant(GeneratorKind::Transverse,
                                markovian_set(g, std::polar(g12, uniform(rng, 0.0, kTwoPi)), J, uniform(rng, 0.0, 1.0)), true);
        rc.times = uniform_grid(uniform(rng, 1.0, 4.0), 21);
        rc.label = "markovian_transverse";
        break;
    }
    case 1: { // Markovian dephasing with Ising coupling
        rates::CoefficientSet cs;
        const double g = uniform(rng, 0.2, 2.0);
        cs.gamma_z << g, uniform(rng, 0.0, 1.0) * g * std::polar(1.0, uniform(rng, 0.0, kTwoPi)), 0.0, g;
        cs.gamma_z(1, 0) = std::conj(cs.gamma_z(0, 1));
        cs.Jz = uniform(rng, -5.0, 5.0);
        rc.generator = constant(GeneratorKind::Dephasing, cs, false);
        rc.times = uniform_grid(uniform(rng, 1.0, 4.0), 21);
        rc.label = "markovian_dephasing";
        break;
    }
    case 2: { // 1/f dephasing
        scenario::RunConfig cfg;
        cfg.scenario = scenario::Scenario::Dephasing1f;
        cfg.spectrum = noise::OneOverF{uniform(rng, 0.5, 5.0), kTwoPi * uniform(rng, 0.1, 2.0)};
        cfg.geometry.phase_theta = uniform(rng, 0.0, kTwoPi);
        cfg.geometry.correlation_scale = uniform(rng, 0.0, 1.0);
        cfg.regime = uniform(rng, 0.0, 1.0) < 0.5 ? noise::Regime::Classical : noise::Regime::Quantum;
        rc.generator = scenario::make_generator(cfg);
        rc.times = uniform_grid(uniform(rng, 0.05, 0.3), 21);
        rc.label = "dephasing_1f";
        break;
    }
    default: { // transverse 1/f, classical or quantum
        scenario::RunConfig cfg;
        const bool quantum = uniform(rng, 0.0, 1.0) < 0.5;
        cfg.scenario = quantum ? scenario::Scenario::Quantum1f : scenario::Scenario::Classical1f;
        cfg.regime = quantum ? noise::Regime::Quantum : noise::Regime::Classical;
        cfg.spectrum = noise::OneOverF{1.0 / uniform(rng, 0.003, 0.1), kTwoPi};
        cfg.drive_omega = kTwoPi * 1e3;
        cfg.geometry.correlation_scale = uniform(rng, 0.0, 1.0);
        rc.generator = scenario::make_generator(cfg);
        rc.times = uniform_grid(uniform(rng, 0.002, 0.01), 21);
        rc.label = quantum ? "quantum_1f" : "classical_1f";
        break;
    }
    }
    return rc;
}

} // namespace corrnoise::verify
