// Acceptance checks: one PASS/FAIL line per criterion.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "corrnoise/analytic.hpp"
#include "corrnoise/dynamics.hpp"
#include "corrnoise/entanglement.hpp"
#include "corrnoise/figures.hpp"
#include "corrnoise/noise.hpp"
#include "corrnoise/parallel.hpp"
#include "corrnoise/rates.hpp"
#include "corrnoise/scenario.hpp"
#include "corrnoise/verify.hpp"

namespace cn = corrnoise;
namespace fs = std::filesystem;
using cn::Complex;
using cn::kPi;
using cn::kTwoPi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

cn::GeneratorSpec constant(const cn::rates::CoefficientSet& c) {
    cn::GeneratorSpec g;
    g.kind = cn::GeneratorKind::Transverse;
    g.markovian = true;
    g.coefficients = [c](double) { return c; };
    return g;
}

cn::scenario::RunConfig one_over_f(cn::scenario::Scenario s, const cn::figures::OneOverFCase& c,
                                   cn::NamedState start, double t_max, int n) {
    cn::scenario::RunConfig cfg;
    cfg.scenario = s;
    cfg.regime = s == cn::scenario::Scenario::Classical1f ? cn::noise::Regime::Classical : cn::noise::Regime::Quantum;
    cfg.spectrum = cn::noise::OneOverF{c.sigma, c.omega_low};
    cfg.drive_omega = c.Omega;
    cfg.initial = cn::named_state(start).matrix();
    cfg.t_max = t_max;
    cfg.n_points = n;
    cfg.tolerance = 1e-10;
    return cfg;
}

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 1. Markovian symmetric exchange against the closed form.
Outcome criterion1() {
    double worst = 0.0;
    const auto grid = cn::uniform_grid(5.0, 501);
    for (double Js : {0.0, 1.0, 5.0}) {
        const auto tr = cn::evolve(cn::named_state(cn::NamedState::UpDown), constant(cn::markovian_set(1.0, 0.9, Js)),
                                   grid, {1e-10});
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double ref = cn::analytic::concurrence_sym_exchange(grid[k], {1.0, 0.9, Js, 0.0});
            worst = std::max(worst, std::abs(tr.measures[k].concurrence - ref));
        }
    }
    return {worst <= 1e-5, "max |dC| = " + fmt(worst) + " (tol 1e-5)"};
}

// 2. DM regimes against the closed form, plus the first zero of the underdamped branch.
Outcome criterion2() {
    double worst = 0.0;
    const int n = 5001;
    const auto grid = cn::uniform_grid(5.0, n);
    const double dt = grid[1] - grid[0];
    double zero_error = 0.0;
    for (double D : {0.2, 0.45, 5.0}) {
        const auto tr = cn::evolve(cn::named_state(cn::NamedState::UpDown),
                                   constant(cn::markovian_set(1.0, 0.9, Complex(0.0, D))), grid, {1e-10});
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double ref = cn::analytic::concurrence_dm(grid[k], {1.0, 0.9, 0.0, D});
            worst = std::max(worst, std::abs(tr.measures[k].concurrence - ref));
        }
        if (D == 5.0) {
            const double wr = std::sqrt(4.0 * D * D - 0.81);
            std::size_t k = 1;
            while (k + 1 < grid.size() && !(tr.measures[k].concurrence <= tr.measures[k - 1].concurrence
                                             && tr.measures[k].concurrence <= tr.measures[k + 1].concurrence)) {
                ++k;
            }
            zero_error = std::abs(grid[k] - kPi / wr);
        }
    }
    const bool ok = worst <= 1e-5 && zero_error <= dt;
    return {ok, "max |dC| = " + fmt(worst) + " (tol 1e-5), first zero off by " + fmt(zero_error) + " us (step "
                    + fmt(dt) + ")"};
}

// 3. Dephasing density matrix against the closed-form factors.
Outcome criterion3() {
    const auto c = cn::figures::kDephasingCase;
    double worst = 0.0;
    double peak0 = 0.0;
    double peak_half = 0.0;
    std::mt19937_64 eng(3);
    const auto random = cn::random_state(eng).matrix();
    for (double theta : {0.0, kPi / 3, kPi / 2, kPi}) {
        cn::scenario::RunConfig cfg;
        cfg.scenario = cn::scenario::Scenario::Dephasing1f;
        cfg.spectrum = cn::noise::OneOverF{c.sigma, c.omega_low};
        cfg.geometry.phase_theta = theta;
        cfg.t_max = 1.0;
        cfg.n_points = 201;
        cfg.tolerance = 1e-11;
        const cn::analytic::DephasingParams p{c.sigma, c.omega_low, theta, true};
        for (const auto& rho0 : {cn::named_state(cn::NamedState::PlusPlus).matrix(), random}) {
            cfg.initial = rho0;
            const auto tr = cn::scenario::run(cfg);
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                const cn::Matrix4c an = cn::analytic::dephasing_state(tr.times[k], p, rho0);
                worst = std::max(worst, (an - tr.states[k].matrix()).cwiseAbs().maxCoeff());
                if (rho0 == random) continue;
                if (theta == 0.0) peak0 = std::max(peak0, tr.measures[k].concurrence);
                if (theta == kPi / 2) peak_half = std::max(peak_half, tr.measures[k].concurrence);
            }
        }
    }
    const bool ok = worst <= 1e-8 && peak0 > 0.1 && peak_half < 1e-6;
    return {ok, "max entry error " + fmt(worst) + " (tol 1e-8), peak C " + fmt(peak0) + " at theta=0, "
                    + fmt(peak_half) + " at theta=pi/2"};
}

// 4. Residual entanglement 1/2 and the thermal curve against the Liouvillian null space.
Outcome criterion4() {
    const auto cfg = one_over_f(cn::scenario::Scenario::Quantum1f, cn::figures::kStrongCase, cn::NamedState::BellI, 0.1,
                                401);
    const auto tr = cn::scenario::run(cfg);
    const double late = tr.measures.back().concurrence;
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double bo = 0.1 + 9.9 * k / 200.0;
        const auto c = cn::markovian_set(1.0, 1.0, 0.0, std::exp(-bo));
        const double null = cn::concurrence(cn::steady_state_nullspace(c, cn::GeneratorKind::Transverse, 0.5));
        worst = std::max(worst, std::abs(null - cn::analytic::residual_entanglement(bo, 1.0)));
    }
    const bool ok = std::abs(late - 0.5) <= 1e-3 && worst <= 1e-4;
    return {ok, "C(100 ns) = " + fmt(late) + " (target 0.5 +- 1e-3), thermal curve vs null space " + fmt(worst)
                    + " (tol 1e-4)"};
}

// 5. Temporarily negative rates with non-negative integrals; non-monotone Bell concurrence.
Outcome criterion5() {
    const auto c = cn::figures::kTransverseCase;
    std::vector<double> grid(2001);
    for (int k = 0; k <= 2000; ++k) grid[k] = 0.05 * k / 2000.0;
    const std::function<double(double)> classical = [&](double t) {
        return cn::rates::classical_rate_1f(t, c.sigma, c.omega_low, c.Omega);
    };
    const std::function<double(double)> quantum = [&](double t) {
        return cn::rates::quantum_decay_rate_1f(t, c.sigma, c.omega_low, c.Omega);
    };
    auto negative = [&](const std::function<double(double)>& f) {
        int n = 0;
        for (double t : grid) n += f(t) < 0.0;
        return n;
    };
    const int neg_c = negative(classical);
    const int neg_q = negative(quantum);
    const auto G = cn::rates::cumulative_integral(classical, grid);
    const auto Gd = cn::rates::cumulative_integral(quantum, grid);
    const double min_g = std::min(*std::min_element(G.begin(), G.end()), *std::min_element(Gd.begin(), Gd.end()));
    std::vector<double> C;
    for (double g : G) C.push_back(cn::analytic::concurrence_classical_1f_bell(std::max(0.0, g)));
    bool found_min = false;
    bool max_after = false;
    for (std::size_t k = 1; k + 1 < C.size(); ++k) {
        if (!found_min && C[k] < C[k - 1] && C[k] < C[k + 1]) found_min = true;
        else if (found_min && C[k] > C[k - 1] && C[k] > C[k + 1]) max_after = true;
    }
    const bool ok = neg_c > 0 && neg_q > 0 && min_g >= -1e-12 && max_after;
    return {ok, std::to_string(neg_c) + " negative classical and " + std::to_string(neg_q)
                    + " negative quantum samples, min integrated rate " + fmt(min_g) + ", local min then max: "
                    + (max_after ? "yes" : "no")};
}

// 6. Product states stay separable under classical noise.
Outcome criterion6() {
    std::vector<cn::Matrix4c> starts;
    for (auto s : {cn::NamedState::UpDown, cn::NamedState::PlusPlus}) starts.push_back(cn::named_state(s).matrix());
    {
        cn::Matrix4c uu = cn::Matrix4c::Zero();
        uu(0, 0) = 1.0;
        starts.push_back(uu);
        std::mt19937_64 eng(21);
        std::normal_distribution<double> n;
        for (int k = 0; k < 5; ++k) {
            Eigen::Vector2cd a, b;
            a << Complex(n(eng), n(eng)), Complex(n(eng), n(eng));
            b << Complex(n(eng), n(eng)), Complex(n(eng), n(eng));
            a.normalize();
            b.normalize();
            cn::Vector4c v;
            v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
            starts.push_back(v * v.adjoint());
        }
    }
    double worst = 0.0;
    // (a) classical Markovian: gamma_up = gamma_down^T, no coherent coupling
    for (double g12 : {0.0, 0.5, 1.0}) {
        const auto gen = constant(cn::markovian_set(1.0, g12, 0.0, 1.0));
        for (const auto& rho0 : starts) {
            const auto tr = cn::evolve(cn::DensityMatrix4(rho0), gen, cn::uniform_grid(5.0, 101), {1e-10});
            for (const auto& m : tr.measures) worst = std::max(worst, m.concurrence);
        }
    }
    // (b) classical 1/f; 5/gamma_bar with gamma_bar the long-time classical rate
    const auto c = cn::figures::kStrongCase;
    const double gamma_bar = cn::rates::classical_rate_1f(10.0, c.sigma, c.omega_low, c.Omega);
    for (const auto& rho0 : starts) {
        auto cfg = one_over_f(cn::scenario::Scenario::Classical1f, c, cn::NamedState::UpDown, 5.0 / gamma_bar, 201);
        cfg.initial = rho0;
        const auto tr = cn::scenario::run(cfg);
        for (const auto& m : tr.measures) worst = std::max(worst, m.concurrence);
    }
    return {worst < 1e-8, "max concurrence " + fmt(worst) + " over " + std::to_string(starts.size())
                              + " product states (tol 1e-8)"};
}

// 7. Randomized evolutions stay physical.
Outcome criterion7() {
    constexpr std::size_t kCases = 10000;
    struct Stat {
        double trace = 0.0, herm = 0.0, min_eig = 0.0;
        bool failed = false;
    };
    const auto stats = cn::parallel_map<Stat>(kCases, [](std::size_t i) {
        std::mt19937_64 rng(1000003ULL * (i + 1));
        const auto rc = cn::verify::random_case(rng);
        Stat s;
        try {
            const auto tr = cn::evolve(rc.initial, rc.generator, rc.times);
            for (const auto& rho : tr.states) {
                const cn::Matrix4c& m = rho.matrix();
                s.trace = std::max(s.trace, std::abs(m.trace() - 1.0));
                s.herm = std::max(s.herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
                Eigen::SelfAdjointEigenSolver<cn::Matrix4c> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
                s.min_eig = std::min(s.min_eig, es.eigenvalues()(0));
            }
        } catch (const std::exception&) {
            s.failed = true;
        }
        return s;
    });
    Stat worst;
    int failures = 0;
    for (const auto& s : stats) {
        worst.trace = std::max(worst.trace, s.trace);
        worst.herm = std::max(worst.herm, s.herm);
        worst.min_eig = std::min(worst.min_eig, s.min_eig);
        failures += s.failed;
    }
    const bool ok = failures == 0 && worst.trace <= 1e-10 && worst.herm <= 1e-12 && worst.min_eig >= -1e-8;
    return {ok, std::to_string(kCases) + " runs, " + std::to_string(failures) + " failed; trace " + fmt(worst.trace)
                    + ", hermiticity " + fmt(worst.herm) + ", min eigenvalue " + fmt(worst.min_eig)};
}

// 8. Detailed balance of Markovian rates and the cross-spectrum bound.
Outcome criterion8() {
    double balance = 0.0;
    for (double beta : {0.1, 0.8, 3.0}) {
        for (double Omega : {0.5, 2.5, 10.0}) {
            for (int dim = 1; dim <= 3; ++dim) {
                for (double d : {0.0, 1e3, 4e3}) {
                    cn::noise::CorrelationGeometry g;
                    g.mode = cn::noise::CrossMode::Geometric;
                    g.sound_speed = 5e3;
                    g.dimension = dim;
                    g.distance = d;
                    const cn::noise::NoiseSpectra sp(cn::noise::LinearDispersion{0.3, 5e3, beta}, g,
                                                     cn::noise::Regime::Thermal, beta);
                    const auto c = cn::rates::markovian_coefficients(sp, Omega);
                    const double scale = std::max(1e-300, c.gamma_down.cwiseAbs().maxCoeff());
                    balance = std::max(balance, (c.gamma_down - std::exp(beta * Omega) * c.gamma_up.transpose())
                                                        .cwiseAbs()
                                                        .maxCoeff()
                                                    / scale);
                }
            }
        }
    }
    double excess = 0.0;
    const std::vector<cn::noise::SpectrumModel> models = {
        cn::noise::OneOverF{1.0, 0.5}, cn::noise::LinearDispersion{0.2, 5e3, 1.3},
        cn::noise::Tabulated{{0.0, 2.0, 4.0}, {Complex(1.0), Complex(3.0), Complex(0.5)}}};
    std::vector<cn::noise::CorrelationGeometry> geoms;
    for (int dim = 1; dim <= 3; ++dim) {
        for (double d : {0.0, 0.1, 1.0, 7.5, 100.0}) {
            cn::noise::CorrelationGeometry g;
            g.mode = cn::noise::CrossMode::Geometric;
            g.dimension = dim;
            g.distance = d;
            g.sound_speed = 5.0;
            geoms.push_back(g);
        }
    }
    for (double th : {0.0, 1.0, kPi / 2, kPi}) {
        cn::noise::CorrelationGeometry g;
        g.phase_theta = th;
        g.correlation_scale = 0.8;
        geoms.push_back(g);
    }
    for (const auto& m : models) {
        for (const auto& g : geoms) {
            for (int k = 0; k <= 400; ++k) {
                const double w = -4.0 + 0.02 * k;
                excess = std::max(excess, std::abs(cn::noise::cross_spectrum(m, g, w)) - cn::noise::local_spectrum(m, w));
            }
        }
    }
    const bool ok = balance <= 1e-10 && excess <= 0.0;
    return {ok, "detailed balance defect " + fmt(balance) + " (tol 1e-10), max |S12| - S_ii = " + fmt(excess)};
}

// 9. Finite-difference residuals of the C_R / C_I oscillator equations.
Outcome criterion9() {
    const int steps = 2000;
    const double gd = 1.0, g12 = 0.9;
    const auto grid = cn::uniform_grid(5.0, steps + 1);
    const double h = grid[1] - grid[0];
    double worst = 0.0;
    // 4th-order central differences; residual relative to the trajectory amplitude
    auto residual = [&](const std::vector<double>& f, double a1, double a0) {
        double amp = 0.0, r = 0.0;
        for (double v : f) amp = std::max(amp, std::abs(v));
        for (std::size_t k = 2; k + 2 < f.size(); ++k) {
            const double d1 = (f[k - 2] - 8 * f[k - 1] + 8 * f[k + 1] - f[k + 2]) / (12 * h);
            const double d2 = (-f[k - 2] + 16 * f[k - 1] - 30 * f[k] + 16 * f[k + 1] - f[k + 2]) / (12 * h * h);
            r = std::max(r, std::abs(d2 + a1 * d1 + a0 * f[k]));
        }
        return amp > 0.0 ? r / amp : r;
    };
    auto split = [](const cn::Trajectory& tr, std::vector<double>& cr, std::vector<double>& ci) {
        for (const auto& m : tr.measures) {
            cr.push_back(m.ts.G_s - m.ts.G_t);
            ci.push_back(2.0 * m.ts.G_ts.imag());
        }
    };
    const cn::EvolveOptions opts{1e-12, 14};
    for (double Js : {1.0, 5.0}) {
        const auto tr = cn::evolve(cn::named_state(cn::NamedState::UpDown), constant(cn::markovian_set(gd, g12, Js)),
                                   grid, opts);
        std::vector<double> cr, ci;
        split(tr, cr, ci);
        worst = std::max(worst, residual(cr, 2 * gd, gd * gd - g12 * g12));
        worst = std::max(worst, residual(ci, 2 * gd, gd * gd + 4 * Js * Js));
    }
    for (double D : {0.2, 0.45, 5.0}) {
        const auto tr = cn::evolve(cn::named_state(cn::NamedState::UpDown),
                                   constant(cn::markovian_set(gd, g12, Complex(0.0, D))), grid, opts);
        std::vector<double> cr, ci;
        split(tr, cr, ci);
        worst = std::max(worst, residual(cr, 2 * gd, gd * gd - g12 * g12 + 4 * D * D));
    }
    return {worst <= 1e-4, "max residual / amplitude " + fmt(worst) + " (tol 1e-4)"};
}

// 10. Byte-identical figure data across runs; verify --suite all within 120 s.
Outcome criterion10() {
    const fs::path root = fs::temp_directory_path() / "corrnoise_acceptance";
    fs::remove_all(root);
    const std::string cli = CORRNOISE_CLI;
    int mismatches = 0, files = 0, errors = 0;
    for (const auto& name : cn::figures::figure_names()) {
        for (const char* run : {"a", "b"}) {
            const fs::path dir = root / run;
            fs::create_directories(dir);
            errors += shell(cli + " figure " + name + " --out " + dir.string() + " > /dev/null") != 0;
        }
    }
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        ++files;
        std::ifstream a(entry.path(), std::ios::binary), b(root / "b" / entry.path().filename(), std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        mismatches += !b || sa.str() != sb.str();
    }
    fs::remove_all(root);
    const auto start = std::chrono::steady_clock::now();
    const int verify_code = shell(cli + " verify --suite all > /dev/null");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = errors == 0 && files > 0 && mismatches == 0 && verify_code == 0 && seconds < 120.0;
    return {ok, std::to_string(files) + " figure files, " + std::to_string(mismatches) + " differ, "
                    + std::to_string(errors) + " command errors; verify exit " + std::to_string(verify_code) + " in "
                    + fmt(seconds) + " s"};
}

} // namespace

int main() {
    const std::vector<std::pair<double, std::function<Outcome()>>> criteria = {
        {5.0, criterion1}, {0.0, criterion2}, {10.0, criterion3}, {0.0, criterion4}, {0.0, criterion5},
        {0.0, criterion6}, {0.0, criterion7}, {0.0, criterion8}, {0.0, criterion9}, {0.0, criterion10}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double limit = criteria[i].first;
        if (limit > 0.0 && seconds >= limit) {
            o.pass = false;
            o.detail += "; runtime over " + fmt(limit) + " s";
        }
        failed += !o.pass;
        std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << " ["
                  << fmt(seconds) << " s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
