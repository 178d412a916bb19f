#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "corrnoise/analytic.hpp"
#include "corrnoise/dynamics.hpp"

namespace corrnoise::verify {

enum class Suite { All, Invariants, Oracles };

// Throws DomainError for anything but all, invariants, oracles.
Suite parse_suite(std::string_view name);

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    double value = 0.0;     // measured deviation or statistic
    double tolerance = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    // Fixed-width table plus a summary line; identical bytes for identical inputs.
    void print(std::ostream& out) const;
};

// Replaceable closed forms, so a deliberately broken oracle can be shown to be caught.
struct Hooks {
    std::function<double(double, const analytic::MarkovianParams&)> sym_exchange = analytic::concurrence_sym_exchange;
};

Report run(Suite suite, std::uint64_t seed, const Hooks& hooks = {});

// A randomized evolution problem: scenario, parameters and initial state drawn from `rng`.
struct RandomCase {
    std::string label;
    GeneratorSpec generator;
    DensityMatrix4 initial;
    std::vector<double> times;
};

RandomCase random_case(std::mt19937_64& rng);

} // namespace corrnoise::verify
