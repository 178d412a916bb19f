#include "corrnoise/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "corrnoise/error.hpp"

namespace corrnoise {

namespace {

// sy (x) sy is real: anti-diagonal (-1, 1, 1, -1).
Matrix4c spin_flip() {
    Matrix4c y = Matrix4c::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

double from_lambdas(std::array<double, 4> l) {
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double binary_entropy(double x) {
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

} // namespace

double concurrence(const DensityMatrix4& rho) {
    const Matrix4c h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("concurrence: eigen-decomposition failed");
    }
    const Eigen::Vector4d w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix4c root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix4c a = root * spin_flip() * root.conjugate();
    Eigen::JacobiSVD<Matrix4c> svd(a);
    const auto s = svd.singularValues();
    return from_lambdas({s(0), s(1), s(2), s(3)});
}

double concurrence_eigen(const DensityMatrix4& rho) {
    const Matrix4c& m = rho.matrix();
    const Matrix4c y = spin_flip();
    const Matrix4c r = m * y * m.conjugate() * y;
    Eigen::ComplexEigenSolver<Matrix4c> es(r, false);
    if (es.info() != Eigen::Success) {
        throw NumericError("concurrence: eigen-solve of the spin-flipped product failed");
    }
    std::array<double, 4> l{};
    for (int k = 0; k < 4; ++k) {
        // tiny negative round-off clamps to zero
        l[static_cast<std::size_t>(k)] = std::sqrt(std::max(es.eigenvalues()(k).real(), 0.0));
    }
    return from_lambdas(l);
}

double concurrence_ts_form(double G_t, double G_s, double im_G_ts, double G11, double G44) {
    const double re = G_t - G_s;
    const double im = -2.0 * im_G_ts;
    return std::max(0.0, std::hypot(re, im) - 2.0 * std::sqrt(std::max(0.0, G11 * G44)));
}

double entanglement_of_formation(double C) {
    if (C < -1e-9 || C > 1.0 + 1e-9 || std::isnan(C)) {
        throw DomainError("entanglement_of_formation: concurrence outside [0, 1]");
    }
    C = std::clamp(C, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - C * C)));
}

double werner_lower_bound(double F) {
    F = std::clamp(F, 0.0, 1.0);
    if (F <= 0.5) {
        return 0.0;
    }
    return binary_entropy(0.5 + std::sqrt(F * (1.0 - F)));
}

double singlet_fidelity(const DensityMatrix4& rho) {
    const Vector4c s = singlet_vector();
    return (s.adjoint() * rho.matrix() * s)(0).real();
}

} // namespace corrnoise
