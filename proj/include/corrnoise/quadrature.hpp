#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include "corrnoise/error.hpp"

namespace corrnoise::quad {

struct Options {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    int max_intervals = 200000;
};

template <typename T>
struct Result {
    T value{};
    double error = 0.0;
    long evaluations = 0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <typename T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T sum = f(center - dx) + f(center + dx);
        kronrod += sum * kWgk[j];
        if (j % 2 == 1) {
            gauss += sum * kWg[j / 2];
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, magnitude(kronrod - gauss)};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod 7/15 over [a, b], split first at `breakpoints`.
// The worst panel is bisected until the summed error estimate meets the tolerance.
template <typename F>
auto integrate(F f, double a, double b, const Options& opts = {},
               const std::vector<double>& breakpoints = {}) {
    using T = std::decay_t<decltype(f(a))>;
    Result<T> result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    std::vector<double> edges{a};
    for (double p : breakpoints) {
        if (p > a && p < b) {
            edges.push_back(p);
        }
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<detail::Panel<T>> panels;
    T total{};
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] == edges[i]) {
            continue;
        }
        auto p = detail::gk15<T>(f, edges[i], edges[i + 1]);
        total += p.value;
        error += p.error;
        panels.push(p);
    }
    result.evaluations = 15L * static_cast<long>(panels.size());

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total)); };
    while (error > target() && static_cast<int>(panels.size()) < opts.max_intervals) {
        const auto worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            panels.push(worst);
            break;
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        result.evaluations += 30;
    }
    // Re-sum to drop accumulated cancellation from the running updates.
    T resum{};
    double err = 0.0;
    result.intervals = static_cast<int>(panels.size());
    while (!panels.empty()) {
        resum += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    result.value = resum;
    result.error = err;
    result.converged = err <= std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(resum));
    return result;
}

// As integrate(), but throws NumericError with diagnostics when the tolerance is not met.
template <typename F>
auto integrate_or_throw(F f, double a, double b, const Options& opts = {},
                        const std::vector<double>& breakpoints = {}) {
    auto r = integrate(std::move(f), a, b, opts, breakpoints);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate "
            << detail::magnitude(r.value) << ", error " << r.error << ", intervals " << r.intervals
            << ", evaluations " << r.evaluations;
        throw NumericError(msg.str());
    }
    return r;
}

} // namespace corrnoise::quad
