#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corrnoise/types.hpp"

namespace corrnoise {

// Basis order (uu, ud, du, dd); qubit 1 is the left Kronecker factor.

struct StateDiagnostics {
    double hermiticity_defect = 0.0; // max |rho - rho^dagger|
    double trace_defect = 0.0;       // |tr rho - 1|
    double min_eigenvalue = 0.0;     // of the Hermitian part

    bool ok(double herm_tol = 1e-12, double trace_tol = 1e-10, double eig_tol = 1e-8) const {
        return hermiticity_defect <= herm_tol && trace_defect <= trace_tol && min_eigenvalue >= -eig_tol;
    }
};

StateDiagnostics validate_state(const Matrix4c& rho);

// Two-qubit density matrix. Construction checks Hermiticity, unit trace and positivity.
class DensityMatrix4 {
public:
    DensityMatrix4(); // maximally mixed
    explicit DensityMatrix4(const Matrix4c& m, double herm_tol = 1e-12, double trace_tol = 1e-10,
                            double eig_tol = 1e-8);

    // Skips validation; for integrator internals and tests that need invalid input.
    static DensityMatrix4 unchecked(const Matrix4c& m);
    static DensityMatrix4 pure(const Vector4c& psi);

    const Matrix4c& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

private:
    struct Unchecked {};
    DensityMatrix4(const Matrix4c& m, Unchecked) : m_(m) {}

    Matrix4c m_;
};

enum class NamedState { UpDown, BellPsiPlus, BellPhiPlus, BellI, PlusPlus };

Vector4c state_vector(NamedState s);
DensityMatrix4 named_state(NamedState s);
// Throws DomainError listing the valid names.
NamedState parse_named_state(std::string_view name);
std::string_view to_string(NamedState s);
const std::vector<std::string>& named_state_names();

// |T> = (|ud> + |du>)/sqrt2, |S> = (|ud> - |du>)/sqrt2.
Vector4c triplet_vector();
Vector4c singlet_vector();

// Triplet/singlet block of rho: rho = G_t|T><T| + G_s|S><S| + (G_ts|T><S| + h.c.) + ...
struct TripletSinglet {
    double G_t = 0.0;
    double G_s = 0.0;
    Complex G_ts{0.0, 0.0}; // <T|rho|S>
    double G11 = 0.0;
    double G44 = 0.0;
};

TripletSinglet triplet_singlet(const Matrix4c& rho);

// Random state for property tests: Ginibre rank-`rank` construction from a seeded engine.
template <typename Engine>
DensityMatrix4 random_state(Engine& eng, int rank = 4);

} // namespace corrnoise

#include <random>

namespace corrnoise {

template <typename Engine>
DensityMatrix4 random_state(Engine& eng, int rank) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix<Complex, 4, Eigen::Dynamic> g(4, rank);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < rank; ++j) {
            g(i, j) = Complex(n(eng), n(eng));
        }
    }
    Matrix4c m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix4::unchecked(0.5 * (m + m.adjoint()));
}

} // namespace corrnoise
