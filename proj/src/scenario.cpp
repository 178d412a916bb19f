#include "corrnoise/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "corrnoise/csv.hpp"
#include "corrnoise/error.hpp"
#include "corrnoise/rates.hpp"
#include "corrnoise/units.hpp"

namespace corrnoise::scenario {

namespace {

using units::Dimension;

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

// Reads mappings while tracking which keys were consumed, so typos are reported.
class Section {
public:
    Section(const YAML::Node& node, std::string name, RunConfig& cfg) : node_(node), name_(std::move(name)), cfg_(cfg) {
        if (!node_.IsMap()) {
            throw ConfigError("'" + name_ + "' must be a mapping", line_of(node_));
        }
    }

    bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

    YAML::Node raw(const std::string& key) {
        used_.insert(key);
        return node_[key];
    }

    std::string text(const std::string& key) {
        const YAML::Node n = raw(key);
        if (!n) {
            throw ConfigError("missing key '" + path(key) + "'", line_of(node_));
        }
        if (!n.IsScalar()) {
            throw ConfigError("'" + path(key) + "' must be a scalar", line_of(n));
        }
        return n.Scalar();
    }

    double quantity(const std::string& key, Dimension dim) {
        const YAML::Node n = raw(key);
        const std::string s = text(key);
        try {
            const double v = units::parse_quantity(s, dim);
            cfg_.stamp.emplace_back(path(key), s);
            return v;
        } catch (const DomainError& e) {
            throw ConfigError(path(key) + ": " + e.what(), line_of(n));
        }
    }

    double quantity_or(const std::string& key, Dimension dim, double fallback) {
        return has(key) ? quantity(key, dim) : fallback;
    }

    int integer(const std::string& key) {
        const YAML::Node n = raw(key);
        const std::string s = text(key);
        try {
            std::size_t pos = 0;
            const long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            cfg_.stamp.emplace_back(path(key), s);
            return static_cast<int>(v);
        } catch (const std::exception&) {
            throw ConfigError("'" + path(key) + "' must be an integer, got '" + s + "'", line_of(n));
        }
    }

    template <typename E, std::size_t N>
    E choice(const std::string& key, const std::pair<std::string_view, E> (&options)[N]) {
        const YAML::Node n = raw(key);
        const std::string s = text(key);
        for (const auto& [name, value] : options) {
            if (name == s) {
                cfg_.stamp.emplace_back(path(key), s);
                return value;
            }
        }
        std::string valid;
        for (const auto& o : options) valid += (valid.empty() ? "" : ", ") + std::string(o.first);
        throw ConfigError("'" + path(key) + "' must be one of: " + valid + " (got '" + s + "')", line_of(n));
    }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            const std::string k = it->first.as<std::string>();
            if (!used_.count(k)) {
                throw ConfigError("unknown key '" + path(k) + "'", line_of(it->first));
            }
        }
    }

    const YAML::Node& node() const { return node_; }
    std::string path(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

private:
    YAML::Node node_;
    std::string name_;
    RunConfig& cfg_;
    std::set<std::string> used_;
};

constexpr std::pair<std::string_view, Scenario> kScenarios[] = {
    {"dephasing_1f", Scenario::Dephasing1f},
    {"markovian_transverse", Scenario::MarkovianTransverse},
    {"classical_1f", Scenario::Classical1f},
    {"quantum_1f", Scenario::Quantum1f},
};
constexpr std::pair<std::string_view, RatesMode> kModes[] = {
    {"closed_form", RatesMode::ClosedForm},
    {"quadrature", RatesMode::Quadrature},
};
constexpr std::pair<std::string_view, noise::Regime> kRegimes[] = {
    {"classical", noise::Regime::Classical},
    {"quantum", noise::Regime::Quantum},
    {"thermal", noise::Regime::Thermal},
};
constexpr std::pair<std::string_view, noise::CrossMode> kCrossModes[] = {
    {"idealized", noise::CrossMode::Idealized},
    {"geometric", noise::CrossMode::Geometric},
};
enum class SpectrumKind { OneOverF, Linear, Table };
constexpr std::pair<std::string_view, SpectrumKind> kSpectra[] = {
    {"one_over_f", SpectrumKind::OneOverF},
    {"linear_dispersion", SpectrumKind::Linear},
    {"tabulated", SpectrumKind::Table},
};

Complex read_complex(const YAML::Node& n) {
    if (n.IsScalar()) {
        return n.as<double>();
    }
    if (n.IsSequence() && n.size() == 2) {
        return {n[0].as<double>(), n[1].as<double>()};
    }
    throw ConfigError("matrix entry must be a number or [re, im]", line_of(n));
}

void parse_initial(const YAML::Node& n, RunConfig& cfg) {
    if (n.IsScalar()) {
        try {
            const NamedState s = parse_named_state(n.Scalar());
            cfg.initial = named_state(s).matrix();
            cfg.initial_label = n.Scalar();
        } catch (const DomainError& e) {
            throw ConfigError(e.what(), line_of(n));
        }
    } else if (n.IsSequence() && n.size() == 4) {
        Matrix4c m;
        for (int i = 0; i < 4; ++i) {
            const YAML::Node row = n[i];
            if (!row.IsSequence() || row.size() != 4) {
                throw ConfigError("initial_state matrix rows need 4 entries", line_of(row));
            }
            for (int j = 0; j < 4; ++j) {
                try {
                    m(i, j) = read_complex(row[j]);
                } catch (const YAML::Exception&) {
                    throw ConfigError("initial_state entry is not numeric", line_of(row[j]));
                }
            }
        }
        try {
            (void)DensityMatrix4(m);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("initial_state: ") + e.what(), line_of(n));
        }
        cfg.initial = m;
        cfg.initial_label = "explicit";
    } else {
        throw ConfigError("initial_state must be a state name or a 4x4 matrix", line_of(n));
    }
    cfg.stamp.emplace_back("initial_state", cfg.initial_label);
}

void parse_noise(Section& s, RunConfig& cfg) {
    const SpectrumKind kind = s.choice("spectrum", kSpectra);
    switch (kind) {
    case SpectrumKind::OneOverF: {
        noise::OneOverF m;
        if (s.has("sigma") == s.has("hbar_over_sigma")) {
            throw ConfigError("noise needs exactly one of 'sigma' or 'hbar_over_sigma'", line_of(s.node()));
        }
        m.sigma = s.has("sigma") ? s.quantity("sigma", Dimension::Frequency)
                                 : 1.0 / s.quantity("hbar_over_sigma", Dimension::Time);
        m.omega_low = s.quantity("omega_low", Dimension::Frequency);
        cfg.spectrum = m;
        break;
    }
    case SpectrumKind::Linear: {
        noise::LinearDispersion m;
        m.amplitude = s.quantity("amplitude", Dimension::Dimensionless);
        m.sound_speed = s.quantity_or("sound_speed", Dimension::Speed, 0.0);
        cfg.spectrum = m;
        break;
    }
    case SpectrumKind::Table: {
        const std::string file = s.text("file");
        cfg.stamp.emplace_back(s.path("file"), file);
        try {
            cfg.spectrum = noise::load_tabulated_csv(file);
        } catch (const ConfigError& e) {
            throw ConfigError(file + ": " + e.what(), line_of(s.raw("file")));
        } catch (const std::exception& e) {
            throw ConfigError(e.what(), line_of(s.raw("file")));
        }
        break;
    }
    }
    s.finish();
}

void parse_geometry(Section& s, RunConfig& cfg) {
    noise::CorrelationGeometry g;
    if (s.has("mode")) g.mode = s.choice("mode", kCrossModes);
    g.phase_theta = s.quantity_or("theta", Dimension::Angle, 0.0);
    if (s.has("correlation_scale")) g.correlation_scale = s.quantity("correlation_scale", Dimension::Dimensionless);
    if (s.has("dimension")) g.dimension = s.integer("dimension");
    g.distance = s.quantity_or("distance", Dimension::Length, 0.0);
    g.sound_speed = s.quantity_or("sound_speed", Dimension::Speed, 0.0);
    s.finish();
    try {
        noise::validate(g);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("geometry: ") + e.what(), line_of(s.node()));
    }
    cfg.geometry = g;
}

void parse_markovian(Section& s, RunConfig& cfg) {
    MarkovianBlock m;
    m.gamma_down = s.quantity("gamma_down", Dimension::Frequency);
    const double g12 = s.quantity_or("gamma_12", Dimension::Frequency, 0.0);
    const double phase = s.quantity_or("gamma_12_phase", Dimension::Angle, 0.0);
    m.gamma_12 = std::polar(g12, phase);
    m.Js = s.quantity_or("Js", Dimension::Frequency, 0.0);
    m.D = s.quantity_or("D", Dimension::Frequency, 0.0);
    if (s.has("beta_omega")) {
        m.alpha = std::exp(-s.quantity("beta_omega", Dimension::Dimensionless));
    }
    s.finish();
    if (m.gamma_down < 0.0 || g12 < 0.0 || g12 > m.gamma_down) {
        throw ConfigError("markovian rates need 0 <= gamma_12 <= gamma_down", line_of(s.node()));
    }
    cfg.markovian = m;
}

} // namespace

std::string_view to_string(Scenario s) {
    for (const auto& [name, v] : kScenarios) {
        if (v == s) return name;
    }
    return "?";
}

RunConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(e.msg, e.mark.line + 1);
    }
    if (!root || !root.IsMap()) {
        throw ConfigError("configuration must be a YAML mapping", 0);
    }
    RunConfig cfg;
    try {
        Section top(root, "", cfg);
        cfg.scenario = top.choice("scenario", kScenarios);
        if (top.has("rates_mode")) cfg.rates_mode = top.choice("rates_mode", kModes);
        switch (cfg.scenario) {
        case Scenario::Classical1f:
            cfg.regime = noise::Regime::Classical;
            break;
        case Scenario::Quantum1f:
            cfg.regime = noise::Regime::Quantum;
            break;
        default:
            break;
        }
        if (top.has("regime")) cfg.regime = top.choice("regime", kRegimes);
        if (top.has("temperature")) {
            cfg.beta = units::beta_from_temperature(top.quantity("temperature", Dimension::Temperature));
        }
        if (top.has("noise")) {
            Section s(top.raw("noise"), "noise", cfg);
            parse_noise(s, cfg);
        } else if (cfg.scenario != Scenario::MarkovianTransverse) {
            throw ConfigError("missing 'noise' section", line_of(root));
        }
        if (top.has("geometry")) {
            Section s(top.raw("geometry"), "geometry", cfg);
            parse_geometry(s, cfg);
        }
        if (top.has("drive")) {
            Section s(top.raw("drive"), "drive", cfg);
            cfg.drive_omega = s.quantity("omega", Dimension::Frequency);
            s.finish();
        }
        if (top.has("markovian")) {
            Section s(top.raw("markovian"), "markovian", cfg);
            parse_markovian(s, cfg);
        } else if (cfg.scenario == Scenario::MarkovianTransverse) {
            throw ConfigError("scenario markovian_transverse needs a 'markovian' section", line_of(root));
        }
        if (std::holds_alternative<noise::LinearDispersion>(cfg.spectrum)) {
            if (!cfg.beta) {
                throw ConfigError("linear_dispersion spectrum needs 'temperature'", line_of(root));
            }
            std::get<noise::LinearDispersion>(cfg.spectrum).beta = *cfg.beta;
        }
        if (cfg.scenario == Scenario::Classical1f || cfg.scenario == Scenario::Quantum1f) {
            if (!(cfg.drive_omega > 0.0)) {
                throw ConfigError("scenario " + std::string(to_string(cfg.scenario)) + " needs drive.omega > 0",
                                  line_of(root));
            }
        }
        if (!top.has("initial_state")) {
            throw ConfigError("missing key 'initial_state'", line_of(root));
        }
        parse_initial(top.raw("initial_state"), cfg);
        {
            if (!top.has("time")) throw ConfigError("missing 'time' section", line_of(root));
            Section s(top.raw("time"), "time", cfg);
            cfg.t_max = s.quantity("t_max", Dimension::Time);
            cfg.n_points = s.integer("n_points");
            s.finish();
            if (!(cfg.t_max > 0.0) || cfg.n_points < 2) {
                throw ConfigError("time needs t_max > 0 and n_points >= 2", line_of(s.node()));
            }
        }
        if (top.has("tolerance")) {
            cfg.tolerance = top.quantity("tolerance", Dimension::Dimensionless);
            if (!(cfg.tolerance > 0.0) || cfg.tolerance > 1e-2) {
                throw ConfigError("tolerance must lie in (0, 1e-2]", line_of(top.raw("tolerance")));
            }
        }
        if (top.has("outputs")) {
            const YAML::Node n = top.raw("outputs");
            if (!n.IsSequence()) throw ConfigError("'outputs' must be a list of column names", line_of(n));
            const auto& all = csv::trajectory_columns();
            for (const auto& item : n) {
                const std::string c = item.as<std::string>();
                if (std::find(all.begin(), all.end(), c) == all.end()) {
                    throw ConfigError("unknown output column '" + c + "'", line_of(item));
                }
                cfg.outputs.push_back(c);
            }
        }
        if (top.has("output")) cfg.output_path = top.text("output");
        top.finish();
        if (cfg.scenario != Scenario::MarkovianTransverse) {
            try {
                noise::validate(cfg.spectrum);
            } catch (const DomainError& e) {
                throw ConfigError(std::string("noise: ") + e.what(), line_of(root["noise"]));
            }
        }
    } catch (const YAML::Exception& e) {
        throw ConfigError(e.msg, e.mark.line + 1);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file '" + path + "'", 0);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<double> time_grid(const RunConfig& cfg) { return uniform_grid(cfg.t_max, cfg.n_points); }

namespace {

Complex idealized_factor(const RunConfig& cfg) {
    return cfg.geometry.correlation_scale * std::polar(1.0, cfg.geometry.phase_theta);
}

const noise::OneOverF& require_1f(const RunConfig& cfg) {
    if (!std::holds_alternative<noise::OneOverF>(cfg.spectrum)
        || cfg.geometry.mode != noise::CrossMode::Idealized) {
        throw ConfigError("closed-form rates need a one_over_f spectrum with idealized geometry; use "
                          "rates_mode: quadrature",
                          0);
    }
    return std::get<noise::OneOverF>(cfg.spectrum);
}

Matrix2c correlated(double g, Complex k) {
    Matrix2c m;
    m << g, k * g, std::conj(k) * g, g;
    return m;
}

} // namespace

GeneratorSpec make_generator(const RunConfig& cfg) {
    GeneratorSpec gen;
    const double Omega = cfg.drive_omega;
    if (cfg.scenario == Scenario::MarkovianTransverse) {
        const MarkovianBlock m = cfg.markovian;
        gen.kind = GeneratorKind::Transverse;
        gen.markovian = true;
        const rates::CoefficientSet c = markovian_set(m.gamma_down, m.gamma_12, Complex(m.Js, m.D), m.alpha);
        gen.coefficients = [c](double) { return c; };
        return gen;
    }
    gen.kind = cfg.scenario == Scenario::Dephasing1f ? GeneratorKind::Dephasing : GeneratorKind::Transverse;
    if (gen.kind == GeneratorKind::Transverse) gen.timescale = kTwoPi / Omega;

    if (cfg.rates_mode == RatesMode::Quadrature) {
        const auto spectra = std::make_shared<noise::NoiseSpectra>(cfg.spectrum, cfg.geometry, cfg.regime,
                                                                   cfg.beta.value_or(0.0));
        rates::CoefficientFn raw;
        int n_tab = std::max(401, 4 * (cfg.n_points - 1) + 1);
        if (gen.kind == GeneratorKind::Dephasing) {
            raw = [spectra](double t) { return rates::dephasing_coefficients(*spectra, t); };
        } else {
            raw = [spectra, Omega](double t) { return rates::transverse_coefficients(*spectra, Omega, t); };
            n_tab = std::max(n_tab, static_cast<int>(std::ceil(32.0 * cfg.t_max / gen.timescale)) + 1);
        }
        gen.coefficients = rates::tabulate(raw, cfg.t_max, n_tab);
        return gen;
    }

    const noise::OneOverF f = require_1f(cfg);
    const Complex k = idealized_factor(cfg);
    const double theta = cfg.geometry.phase_theta;
    const double scale = cfg.geometry.correlation_scale;
    switch (cfg.scenario) {
    case Scenario::Dephasing1f: {
        const bool quantum = cfg.regime != noise::Regime::Classical;
        // classical regime: gamma^z_12 = Re S^C_12 part only, no Ising coupling
        const Complex kz = quantum ? k : Complex(scale * std::cos(theta), 0.0);
        gen.coefficients = [f, kz, quantum, theta, scale](double t) {
            rates::CoefficientSet c;
            c.time = t;
            c.gamma_z = correlated(rates::dephasing_rate_1f(t, f.sigma, f.omega_low), kz);
            c.Jz = quantum ? scale * rates::ising_coupling_1f(t, f.sigma, theta) : 0.0;
            return c;
        };
        break;
    }
    case Scenario::Classical1f:
        gen.coefficients = [f, k, Omega](double t) {
            rates::CoefficientSet c;
            c.time = t;
            c.gamma_down = correlated(rates::classical_rate_1f(t, f.sigma, f.omega_low, Omega), k);
            c.gamma_up = c.gamma_down.transpose();
            return c;
        };
        break;
    case Scenario::Quantum1f:
        gen.coefficients = [f, k, Omega](double t) {
            rates::CoefficientSet c;
            c.time = t;
            c.gamma_down = correlated(rates::quantum_decay_rate_1f(t, f.sigma, f.omega_low, Omega), k);
            c.J = k * rates::transverse_coupling_1f(t, f.sigma, Omega);
            return c;
        };
        break;
    case Scenario::MarkovianTransverse:
        break;
    }
    return gen;
}

Trajectory run(const RunConfig& cfg) {
    EvolveOptions opts;
    opts.tolerance = cfg.tolerance;
    return evolve(DensityMatrix4(cfg.initial), make_generator(cfg), time_grid(cfg), opts);
}

} // namespace corrnoise::scenario
