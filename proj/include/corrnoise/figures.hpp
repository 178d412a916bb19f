#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrnoise/csv.hpp"
#include "corrnoise/parallel.hpp"
#include "corrnoise/types.hpp"

namespace corrnoise::figures {

struct Options {
    std::string out_dir = ".";
    int grid = 0; // 0 keeps each figure's default resolution
    unsigned workers = worker_count();
};

// fig2, fig3a, fig3b, fig4, fig5, fig6, fig7
const std::vector<std::string>& figure_names();

// Data tables behind a figure, keyed by file name. Throws DomainError for an unknown name.
std::vector<std::pair<std::string, csv::Table>> figure_tables(std::string_view name, const Options& opts);

// Writes figure_tables() into opts.out_dir and returns the written paths.
std::vector<std::string> make_figure(std::string_view name, const Options& opts);

// Figure parameter sets (internal units).
struct OneOverFCase {
    double sigma;     // 1/(hbar/sigma)
    double omega_low; // w_l
    double Omega;     // qubit splitting
};
inline constexpr OneOverFCase kDephasingCase{1.0 / 0.5, kTwoPi, 0.0};
inline constexpr OneOverFCase kTransverseCase{1.0 / 0.1, kTwoPi,
                                              kTwoPi * 1e3};
// hbar/sigma = 3 ns, used for the long-time residual entanglement.
inline constexpr OneOverFCase kStrongCase{1.0 / 0.003, kTwoPi,
                                          kTwoPi * 1e3};

inline constexpr std::string_view kVersion = "0.1.0";

} // namespace corrnoise::figures
