// corrnoise command-line front end: simulate, figure, verify, rates.
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrnoise/csv.hpp"
#include "corrnoise/error.hpp"
#include "corrnoise/figures.hpp"
#include "corrnoise/scenario.hpp"
#include "corrnoise/units.hpp"
#include "corrnoise/verify.hpp"

namespace cn = corrnoise;

namespace {

constexpr int kOk = 0;
constexpr int kNumeric = 1;
constexpr int kUsage = 2;

int cmd_simulate(const std::string& path, const std::string& out_opt) {
    const cn::scenario::RunConfig cfg = cn::scenario::load_config(path);
    const cn::Trajectory traj = cn::scenario::run(cfg);
    cn::csv::Table table = cn::csv::trajectory_table(traj, cfg.outputs);
    table.comment("generator", "corrnoise " + std::string(cn::figures::kVersion));
    // the stamp already starts with the scenario
    for (const auto& [k, v] : cfg.stamp) table.comment(k, v);
    table.comment("rk4_step_us", traj.step);
    table.comment("rk4_convergence", traj.convergence);

    std::string out = out_opt.empty() ? cfg.output_path : out_opt;
    if (out.empty()) out = std::filesystem::path(path).stem().string() + ".csv";
    table.save(out);

    const auto diag = cn::validate_state(traj.states.back().matrix());
    std::cout << "wrote " << out << " (" << traj.times.size() << " rows)\n"
              << "t_final_us=" << cn::csv::format(traj.times.back())
              << " concurrence=" << cn::csv::format(traj.measures.back().concurrence)
              << " trace_defect=" << cn::csv::format(diag.trace_defect) << '\n';
    return kOk;
}

int cmd_figure(const std::string& name, const std::string& out_dir, int grid) {
    cn::figures::Options opts;
    opts.out_dir = out_dir;
    opts.grid = grid;
    for (const auto& p : cn::figures::make_figure(name, opts)) std::cout << "wrote " << p << '\n';
    return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    const auto report = cn::verify::run(cn::verify::parse_suite(suite), seed);
    report.print(std::cout);
    return report.all_passed() ? kOk : kNumeric;
}

std::vector<double> parse_times(const std::string& list) {
    std::vector<double> times;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        times.push_back(cn::units::parse_quantity(item, cn::units::Dimension::Time));
    }
    if (times.empty()) throw cn::DomainError("--at needs at least one time, e.g. --at 1ns,10ns");
    return times;
}

int cmd_rates(const std::string& path, const std::string& at) {
    const auto times = parse_times(at);
    const auto cfg = cn::scenario::load_config(path);
    const auto gen = cn::scenario::make_generator(cfg);
    cn::csv::Table t({"t_us", "Jz", "J_re", "J_im", "gz11", "gz22", "gz12_re", "gz12_im", "gd11", "gd22", "gd12_re",
                      "gd12_im", "gu11", "gu22", "gu12_re", "gu12_im"});
    t.comment("scenario", std::string(cn::scenario::to_string(cfg.scenario)));
    t.comment("units", "rad/us");
    for (double s : times) {
        const auto c = gen.coefficients(s);
        std::vector<double> row{s, c.Jz, c.J.real(), c.J.imag()};
        for (const cn::Matrix2c* g : {&c.gamma_z, &c.gamma_down, &c.gamma_up}) {
            row.insert(row.end(), {(*g)(0, 0).real(), (*g)(1, 1).real(), (*g)(0, 1).real(), (*g)(0, 1).imag()});
        }
        t.add_row(row);
    }
    t.write(std::cout);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit dynamics under spatially correlated classical and quantum noise"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cn::figures::kVersion));

    std::string config;
    std::string out;
    auto* sim = app.add_subcommand("simulate", "Evolve a configured scenario and write the trajectory CSV");
    sim->add_option("config", config, "YAML run configuration")->required();
    sim->add_option("--out", out, "Output CSV path");

    std::string fig_name;
    std::string fig_dir = ".";
    int grid = 0;
    auto* fig = app.add_subcommand("figure", "Write the data behind a figure as CSV");
    fig->add_option("name", fig_name, "fig2, fig3a, fig3b, fig4, fig5, fig6 or fig7")->required();
    fig->add_option("--out", fig_dir, "Output directory");
    fig->add_option("--grid", grid, "Grid resolution override")->check(CLI::PositiveNumber);

    std::string suite = "all";
    std::uint64_t seed = 12345;
    auto* ver = app.add_subcommand("verify", "Run the invariant and oracle suites");
    ver->add_option("--suite", suite, "all, invariants or oracles");
    ver->add_option("--seed", seed, "Random seed");

    std::string rates_cfg;
    std::string at;
    auto* rat = app.add_subcommand("rates", "Print rates and couplings at the given times");
    rat->add_option("config", rates_cfg, "YAML run configuration")->required();
    rat->add_option("--at", at, "Comma-separated times with units, e.g. 1ns,5ns")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*sim) return cmd_simulate(config, out);
        if (*fig) return cmd_figure(fig_name, fig_dir, grid);
        if (*ver) return cmd_verify(suite, seed);
        if (*rat) return cmd_rates(rates_cfg, at);
    } catch (const cn::ConfigError& e) {
        std::cerr << "error: " << (*sim ? config : rates_cfg) << ": " << e.what() << '\n';
        return kUsage;
    } catch (const cn::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
