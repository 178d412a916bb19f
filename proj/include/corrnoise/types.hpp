#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace corrnoise {

// Internal units: time in microseconds, frequencies and rates in rad/us, hbar = 1.

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

using Complex = std::complex<double>;
using Matrix2c = Matrix2<double>;
using Matrix4c = Matrix4<double>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr Complex kI{0.0, 1.0};

} // namespace corrnoise
