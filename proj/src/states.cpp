#include "corrnoise/states.hpp"

#include <array>
#include <cmath>

#include "corrnoise/error.hpp"

namespace corrnoise {

StateDiagnostics validate_state(const Matrix4c& rho) {
    StateDiagnostics d;
    d.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_defect = std::abs(rho.trace() - 1.0);
    const Matrix4c h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

DensityMatrix4::DensityMatrix4() : m_(Matrix4c::Identity() / 4.0) {}

DensityMatrix4::DensityMatrix4(const Matrix4c& m, double herm_tol, double trace_tol, double eig_tol) : m_(m) {
    const StateDiagnostics d = validate_state(m);
    if (!d.ok(herm_tol, trace_tol, eig_tol)) {
        throw DomainError("invalid density matrix: hermiticity defect " + std::to_string(d.hermiticity_defect)
                          + ", trace defect " + std::to_string(d.trace_defect) + ", min eigenvalue "
                          + std::to_string(d.min_eigenvalue));
    }
}

DensityMatrix4 DensityMatrix4::unchecked(const Matrix4c& m) { return DensityMatrix4(m, Unchecked{}); }

DensityMatrix4 DensityMatrix4::pure(const Vector4c& psi) {
    const Vector4c v = psi / psi.norm();
    return DensityMatrix4(Matrix4c(v * v.adjoint()));
}

namespace {

constexpr std::array<std::string_view, 5> kNames{"up_down", "bell_psi_plus", "bell_phi_plus", "bell_i", "plus_plus"};

} // namespace

Vector4c state_vector(NamedState s) {
    const double r = 1.0 / std::sqrt(2.0);
    Vector4c v = Vector4c::Zero();
    switch (s) {
    case NamedState::UpDown:
        v(1) = 1.0;
        break;
    case NamedState::BellPsiPlus:
        v(1) = r;
        v(2) = r;
        break;
    case NamedState::BellPhiPlus:
        v(0) = r;
        v(3) = r;
        break;
    case NamedState::BellI:
        v(1) = r;
        v(2) = Complex(0.0, r);
        break;
    case NamedState::PlusPlus:
        v.setConstant(0.5);
        break;
    }
    return v;
}

DensityMatrix4 named_state(NamedState s) { return DensityMatrix4::pure(state_vector(s)); }

NamedState parse_named_state(std::string_view name) {
    for (std::size_t k = 0; k < kNames.size(); ++k) {
        if (kNames[k] == name) {
            return static_cast<NamedState>(k);
        }
    }
    std::string msg = "unknown initial state '" + std::string(name) + "'; valid names:";
    for (auto n : kNames) {
        msg += " ";
        msg += n;
    }
    throw DomainError(msg);
}

std::string_view to_string(NamedState s) { return kNames[static_cast<std::size_t>(s)]; }

const std::vector<std::string>& named_state_names() {
    static const std::vector<std::string> names(kNames.begin(), kNames.end());
    return names;
}

Vector4c triplet_vector() {
    Vector4c v = Vector4c::Zero();
    v(1) = v(2) = 1.0 / std::sqrt(2.0);
    return v;
}

Vector4c singlet_vector() {
    Vector4c v = Vector4c::Zero();
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v;
}

TripletSinglet triplet_singlet(const Matrix4c& rho) {
    const Vector4c t = triplet_vector();
    const Vector4c s = singlet_vector();
    TripletSinglet r;
    r.G_t = (t.adjoint() * rho * t)(0).real();
    r.G_s = (s.adjoint() * rho * s)(0).real();
    r.G_ts = (t.adjoint() * rho * s)(0);
    r.G11 = rho(0, 0).real();
    r.G44 = rho(3, 3).real();
    return r;
}

} // namespace corrnoise
