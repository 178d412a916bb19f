#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrnoise/dynamics.hpp"
#include "corrnoise/noise.hpp"

namespace corrnoise::scenario {

enum class Scenario { Dephasing1f, MarkovianTransverse, Classical1f, Quantum1f };
enum class RatesMode { ClosedForm, Quadrature };

struct MarkovianBlock {
    double gamma_down = 0.0;
    Complex gamma_12{0.0, 0.0};
    double Js = 0.0;
    double D = 0.0;
    double alpha = 0.0; // gamma_up = alpha gamma_down^T, alpha = exp(-beta Omega)
};

struct RunConfig {
    Scenario scenario = Scenario::MarkovianTransverse;
    RatesMode rates_mode = RatesMode::ClosedForm;
    noise::SpectrumModel spectrum = noise::OneOverF{};
    noise::CorrelationGeometry geometry;
    noise::Regime regime = noise::Regime::Quantum;
    std::optional<double> beta; // us
    double drive_omega = 0.0;   // rad/us
    MarkovianBlock markovian;
    Matrix4c initial = Matrix4c::Identity() / 4.0;
    std::string initial_label = "maximally_mixed";
    double t_max = 1.0;
    int n_points = 101;
    double tolerance = 1e-8;
    std::vector<std::string> outputs;
    std::string output_path;
    // Parsed inputs echoed into CSV headers, in file order.
    std::vector<std::pair<std::string, std::string>> stamp;
};

// Parses a YAML run configuration. Errors are ConfigError carrying the 1-based line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::string_view to_string(Scenario s);

// Coefficient provider and generator for the configured scenario. Quadrature mode tabulates
// the rates once over [0, t_max].
GeneratorSpec make_generator(const RunConfig& cfg);

std::vector<double> time_grid(const RunConfig& cfg);

// Runs the configured evolution.
Trajectory run(const RunConfig& cfg);

} // namespace corrnoise::scenario
