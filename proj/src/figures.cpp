#include "corrnoise/figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <set>

#include "corrnoise/analytic.hpp"
#include "corrnoise/dynamics.hpp"
#include "corrnoise/entanglement.hpp"
#include "corrnoise/error.hpp"
#include "corrnoise/noise.hpp"
#include "corrnoise/rates.hpp"
#include "corrnoise/scenario.hpp"
#include "corrnoise/specfun.hpp"

namespace corrnoise::figures {

namespace {

using csv::Table;
using Tables = std::vector<std::pair<std::string, Table>>;

int pick(int grid, int fallback) { return grid > 0 ? std::max(grid, 2) : fallback; }

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
    return v;
}

void stamp(Table& t, std::string_view figure) {
    t.comment("generator", "corrnoise " + std::string(kVersion));
    t.comment("figure", std::string(figure));
}

void stamp_case(Table& t, const OneOverFCase& c) {
    t.comment("hbar_over_sigma_ns", 1e3 / c.sigma);
    t.comment("omega_low_over_2pi_MHz", c.omega_low / kTwoPi);
    if (c.Omega > 0.0) t.comment("Omega_over_2pi_GHz", c.Omega / kTwoPi / 1e3);
}

scenario::RunConfig one_over_f_config(scenario::Scenario s, const OneOverFCase& c) {
    scenario::RunConfig cfg;
    cfg.scenario = s;
    cfg.spectrum = noise::OneOverF{c.sigma, c.omega_low};
    cfg.drive_omega = c.Omega;
    cfg.regime = s == scenario::Scenario::Classical1f ? noise::Regime::Classical : noise::Regime::Quantum;
    return cfg;
}

// Collects rate warnings for the header instead of printing them.
class WarningCapture {
public:
    WarningCapture() {
        rates::set_warning_handler([this](const std::string& m) {
            std::lock_guard lock(mutex_);
            seen_.insert(m);
        });
    }
    ~WarningCapture() { rates::set_warning_handler(nullptr); }
    void annotate(Tables& tables) const {
        for (auto& [name, t] : tables) {
            for (const auto& m : seen_) t.comment("warning", m);
        }
    }

private:
    std::mutex mutex_;
    std::set<std::string> seen_;
};

Tables fig2(const Options& o) {
    const double c_s = 5e3; // um/us
    const int n = pick(o.grid, 101);
    Table a({"omega_over_2pi_GHz", "d_um", "S12_over_Sii"});
    stamp(a, "fig2");
    a.comment("dimension", 2.0);
    a.comment("sound_speed_km_per_s", c_s / 1e3);
    for (double f : linspace(0.0, 5.0, n)) {
        for (double d : linspace(0.0, 5.0, n)) {
            a.add_row({f, d, noise::spatial_factor(2, kTwoPi * f * 1e3 * d / c_s)});
        }
    }
    Table b({"d_um", "ratio_1d", "ratio_2d", "ratio_3d"});
    stamp(b, "fig2");
    b.comment("omega_over_2pi_GHz", 1.0);
    b.comment("sound_speed_km_per_s", c_s / 1e3);
    const double k = kTwoPi * 1e3 / c_s;
    for (double d : linspace(0.0, 10.0, pick(o.grid, 501))) {
        b.add_row({d, noise::spatial_factor(1, k * d), noise::spatial_factor(2, k * d), noise::spatial_factor(3, k * d)});
    }
    Tables out;
    out.emplace_back("fig2a_ratio_2d.csv", std::move(a));
    out.emplace_back("fig2b_ratio_by_dimension.csv", std::move(b));
    return out;
}

Tables fig3a(const Options& o) {
    const OneOverFCase c = kDephasingCase;
    const double theta = kPi / 3.0;
    const Matrix4c psi = named_state(NamedState::BellPsiPlus).matrix();
    const Matrix4c phi = named_state(NamedState::BellPhiPlus).matrix();
    // local-only noise: no cross spectrum at all
    auto local_state = [&](double t, const Matrix4c& rho0) {
        Matrix2c G = Matrix2c::Zero();
        G(0, 0) = G(1, 1) = rates::integrated_dephasing_1f(t, c.sigma, c.omega_low);
        return Matrix4c(analytic::dephasing_factors(G, 0.0).cwiseProduct(rho0));
    };
    const analytic::DephasingParams corr{c.sigma, c.omega_low, theta, false};
    Table t({"t_ns", "C_psi_local", "C_phi_local", "C_psi_correlated", "C_phi_correlated"});
    stamp(t, "fig3a");
    stamp_case(t, c);
    t.comment("theta_rad", theta);
    t.comment("quantum_noise", "off");
    for (double s : linspace(0.0, 0.5, pick(o.grid, 501))) {
        t.add_row({s * 1e3, concurrence(DensityMatrix4::unchecked(local_state(s, psi))),
                   concurrence(DensityMatrix4::unchecked(local_state(s, phi))),
                   concurrence(DensityMatrix4::unchecked(analytic::dephasing_state(s, corr, psi))),
                   concurrence(DensityMatrix4::unchecked(analytic::dephasing_state(s, corr, phi)))});
    }
    Tables out;
    out.emplace_back("fig3a_dephasing.csv", std::move(t));
    return out;
}

Tables fig3b(const Options& o) {
    const OneOverFCase c = kDephasingCase;
    const int n_theta = pick(o.grid, 201);
    const int n_t = 2 * n_theta - 1;
    const auto thetas = linspace(0.0, kTwoPi, n_theta);
    const auto times = linspace(0.0, 0.5, n_t);
    const Matrix4c pp = named_state(NamedState::PlusPlus).matrix();
    const auto rows = parallel_map<std::vector<double>>(
        thetas.size(),
        [&](std::size_t i) {
            std::vector<double> r;
            const analytic::DephasingParams p{c.sigma, c.omega_low, thetas[i], true};
            for (double s : times) r.push_back(concurrence(DensityMatrix4::unchecked(analytic::dephasing_state(s, p, pp))));
            return r;
        },
        o.workers);
    Table t({"theta_rad", "t_ns", "concurrence"});
    stamp(t, "fig3b");
    stamp_case(t, c);
    t.comment("initial_state", "plus_plus");
    t.comment("grid", std::to_string(n_theta) + " theta x " + std::to_string(n_t) + " t");
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (std::size_t k = 0; k < times.size(); ++k) t.add_row({thetas[i], times[k] * 1e3, rows[i][k]});
    }
    Tables out;
    out.emplace_back("fig3b_theta_time.csv", std::move(t));
    return out;
}

GeneratorSpec markovian_generator(double g, double g12, Complex J) {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::Transverse;
    gen.markovian = true;
    const auto c = markovian_set(g, g12, J);
    gen.coefficients = [c](double) { return c; };
    return gen;
}

Tables fig4(const Options& o) {
    const double g = 1.0;
    const double g12 = 0.9;
    const auto times = uniform_grid(5.0, pick(o.grid, 501));
    const std::vector<double> js{0.0, 1.0, 2.0, 5.0};
    const auto trajs = parallel_map<Trajectory>(
        js.size(),
        [&](std::size_t i) { return evolve(named_state(NamedState::UpDown), markovian_generator(g, g12, js[i]), times); },
        o.workers);

    Table b({"t_us", "G_t", "G_s", "G_ts_re", "G_ts_im", "concurrence", "lower_bound_abs_Gs_minus_Gt"});
    stamp(b, "fig4");
    b.comment("gamma_down_per_us", g);
    b.comment("gamma_12_per_us", g12);
    b.comment("Js_per_us", 5.0);
    const Trajectory& t5 = trajs.back();
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& m = t5.measures[k];
        b.add_row({times[k], m.ts.G_t, m.ts.G_s, m.ts.G_ts.real(), m.ts.G_ts.imag(), m.concurrence,
                   std::abs(m.ts.G_s - m.ts.G_t)});
    }
    std::vector<std::string> cols{"t_us"};
    for (double j : js) {
        const std::string s = csv::format(j);
        cols.push_back("C_Js" + s + "_numeric");
        cols.push_back("C_Js" + s + "_closed");
    }
    Table c(cols);
    stamp(c, "fig4");
    c.comment("gamma_down_per_us", g);
    c.comment("gamma_12_per_us", g12);
    c.comment("initial_state", "up_down");
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> row{times[k]};
        for (std::size_t i = 0; i < js.size(); ++i) {
            row.push_back(trajs[i].measures[k].concurrence);
            row.push_back(analytic::concurrence_sym_exchange(times[k], {g, g12, js[i], 0.0}));
        }
        c.add_row(row);
    }
    Tables out;
    out.emplace_back("fig4b_populations.csv", std::move(b));
    out.emplace_back("fig4c_concurrence.csv", std::move(c));
    return out;
}

Tables fig5(const Options& o) {
    const double g = 1.0;
    const double g12 = 0.9;
    const auto ds = linspace(0.0, 2.0, pick(o.grid, 81));
    const auto times = uniform_grid(5.0, 251);
    const auto trajs = parallel_map<Trajectory>(
        ds.size(),
        [&](std::size_t i) {
            return evolve(named_state(NamedState::UpDown), markovian_generator(g, g12, Complex(0.0, ds[i] * g)), times);
        },
        o.workers);
    Table t({"D_over_gamma", "t_us", "C_numeric", "C_closed"});
    stamp(t, "fig5");
    t.comment("gamma_down_per_us", g);
    t.comment("gamma_12_per_us", g12);
    t.comment("critical_D_over_gamma", g12 / (2.0 * g));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t k = 0; k < times.size(); ++k) {
            t.add_row({ds[i], times[k], trajs[i].measures[k].concurrence,
                       analytic::concurrence_dm(times[k], {g, g12, 0.0, ds[i] * g})});
        }
    }
    Tables out;
    out.emplace_back("fig5_dm_sweep.csv", std::move(t));
    return out;
}

Tables fig6(const Options& o) {
    const OneOverFCase c = kTransverseCase;
    const auto times = uniform_grid(0.05, pick(o.grid, 2001));
    const auto cfg = one_over_f_config(scenario::Scenario::Classical1f, c);
    const GeneratorSpec gen = scenario::make_generator(cfg);
    const std::vector<NamedState> starts{NamedState::BellI, NamedState::UpDown};
    const auto trajs = parallel_map<Trajectory>(
        starts.size(), [&](std::size_t i) { return evolve(named_state(starts[i]), gen, times); }, o.workers);
    auto rate = [&](double t) { return rates::classical_rate_1f(t, c.sigma, c.omega_low, c.Omega); };
    const auto Gamma = rates::cumulative_integral(rate, times);
    Table t({"t_ns", "gamma_per_us", "Gamma", "C_bell_closed", "C_bell_numeric", "C_product_numeric"});
    stamp(t, "fig6");
    stamp_case(t, c);
    t.comment("noise", "classical only, gamma_12 = gamma");
    for (std::size_t k = 0; k < times.size(); ++k) {
        t.add_row({times[k] * 1e3, rate(times[k]), Gamma[k], analytic::concurrence_classical_1f_bell(std::max(0.0, Gamma[k])),
                   trajs[0].measures[k].concurrence, trajs[1].measures[k].concurrence});
    }
    Tables out;
    out.emplace_back("fig6_classical_1f.csv", std::move(t));
    return out;
}

Tables fig7(const Options& o) {
    const OneOverFCase c = kTransverseCase;
    const auto times = uniform_grid(0.05, pick(o.grid, 2001));
    const GeneratorSpec quantum = scenario::make_generator(one_over_f_config(scenario::Scenario::Quantum1f, c));
    const GeneratorSpec classical = scenario::make_generator(one_over_f_config(scenario::Scenario::Classical1f, c));
    const OneOverFCase s = kStrongCase;
    const auto strong_times = uniform_grid(0.03, 601);
    const GeneratorSpec strong = scenario::make_generator(one_over_f_config(scenario::Scenario::Quantum1f, s));

    struct Job {
        const GeneratorSpec* gen;
        NamedState start;
        const std::vector<double>* grid;
    };
    const std::vector<Job> jobs{{&quantum, NamedState::BellI, &times},
                                {&quantum, NamedState::UpDown, &times},
                                {&classical, NamedState::UpDown, &times},
                                {&strong, NamedState::UpDown, &strong_times}};
    const auto trajs = parallel_map<Trajectory>(
        jobs.size(), [&](std::size_t i) { return evolve(named_state(jobs[i].start), *jobs[i].gen, *jobs[i].grid); },
        o.workers);

    auto gd = [&](double t) { return rates::quantum_decay_rate_1f(t, c.sigma, c.omega_low, c.Omega); };
    auto gc = [&](double t) { return rates::classical_rate_1f(t, c.sigma, c.omega_low, c.Omega); };
    const auto Gd = rates::cumulative_integral(gd, times);
    const auto Gc = rates::cumulative_integral(gc, times);

    Table a({"t_ns", "gamma_down_per_us", "Gamma_down", "J_per_us", "Phi"});
    stamp(a, "fig7");
    stamp_case(a, c);
    Table b({"t_ns", "C_bell_closed", "C_bell_numeric", "C_bell_classical_only"});
    stamp(b, "fig7");
    stamp_case(b, c);
    b.comment("initial_state", "bell_i");
    Table cc({"t_ns", "C_product_closed", "C_product_numeric", "C_product_classical_only"});
    stamp(cc, "fig7");
    stamp_case(cc, c);
    cc.comment("initial_state", "up_down");
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const double phi = rates::coupling_phase_1f(t, c.sigma, c.Omega);
        a.add_row({t * 1e3, gd(t), Gd[k], rates::transverse_coupling_1f(t, c.sigma, c.Omega), phi});
        b.add_row({t * 1e3, analytic::concurrence_quantum_1f(Gd[k], phi, analytic::Initial::Bell),
                   trajs[0].measures[k].concurrence, analytic::concurrence_classical_1f_bell(std::max(0.0, Gc[k]))});
        cc.add_row({t * 1e3, analytic::concurrence_quantum_1f(Gd[k], phi, analytic::Initial::Product),
                    trajs[1].measures[k].concurrence, trajs[2].measures[k].concurrence});
    }

    auto gs = [&](double t) { return rates::quantum_decay_rate_1f(t, s.sigma, s.omega_low, s.Omega); };
    const auto Gs = rates::cumulative_integral(gs, strong_times);
    Table d({"t_ns", "C_product_closed", "C_product_numeric"});
    stamp(d, "fig7");
    stamp_case(d, s);
    d.comment("initial_state", "up_down");
    for (std::size_t k = 0; k < strong_times.size(); ++k) {
        const double t = strong_times[k];
        d.add_row({t * 1e3,
                   analytic::concurrence_quantum_1f(Gs[k], rates::coupling_phase_1f(t, s.sigma, s.Omega),
                                                    analytic::Initial::Product),
                   trajs[3].measures[k].concurrence});
    }

    const auto bo = linspace(0.1, 10.0, pick(o.grid, 100));
    const auto nulls = parallel_map<double>(
        bo.size(),
        [&](std::size_t i) {
            const auto coeffs = markovian_set(1.0, 1.0, 0.0, std::exp(-bo[i]));
            return concurrence(steady_state_nullspace(coeffs, GeneratorKind::Transverse, 0.5));
        },
        o.workers);
    Table e({"beta_Omega", "C_residual_closed", "C_residual_spectral", "C_residual_nullspace"});
    stamp(e, "fig7");
    e.comment("gamma_12_over_gamma_down", 1.0);
    e.comment("gamma_up_over_gamma_down", "exp(-beta_Omega)");
    for (std::size_t i = 0; i < bo.size(); ++i) {
        const double sq = std::tanh(0.5 * bo[i]); // S^Q/S^C under the fluctuation-dissipation relation
        e.add_row({bo[i], analytic::residual_entanglement(bo[i], 1.0), analytic::residual_entanglement_spectral(1.0, sq),
                   nulls[i]});
    }

    Tables out;
    out.emplace_back("fig7a_rates.csv", std::move(a));
    out.emplace_back("fig7b_bell.csv", std::move(b));
    out.emplace_back("fig7b_inset_residual.csv", std::move(e));
    out.emplace_back("fig7c_product.csv", std::move(cc));
    out.emplace_back("fig7c_inset_strong.csv", std::move(d));
    return out;
}

} // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6", "fig7"};
    return names;
}

Tables figure_tables(std::string_view name, const Options& opts) {
    WarningCapture capture;
    Tables out;
    if (name == "fig2") out = fig2(opts);
    else if (name == "fig3a") out = fig3a(opts);
    else if (name == "fig3b") out = fig3b(opts);
    else if (name == "fig4") out = fig4(opts);
    else if (name == "fig5") out = fig5(opts);
    else if (name == "fig6") out = fig6(opts);
    else if (name == "fig7") out = fig7(opts);
    else {
        std::string valid;
        for (const auto& n : figure_names()) valid += " " + n;
        throw DomainError("unknown figure '" + std::string(name) + "'; valid names:" + valid);
    }
    capture.annotate(out);
    return out;
}

std::vector<std::string> make_figure(std::string_view name, const Options& opts) {
    auto tables = figure_tables(name, opts);
    std::filesystem::create_directories(opts.out_dir);
    std::vector<std::string> paths;
    for (const auto& [file, table] : tables) {
        const std::string path = (std::filesystem::path(opts.out_dir) / file).string();
        table.save(path);
        paths.push_back(path);
    }
    return paths;
}

} // namespace corrnoise::figures
