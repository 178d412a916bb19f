#pragma once

#include <string>
#include <vector>

#include "corrnoise/rates.hpp"
#include "corrnoise/states.hpp"
#include "corrnoise/types.hpp"

namespace corrnoise {

enum class GeneratorKind { Dephasing, Transverse };

namespace detail {

template <typename Scalar>
struct PauliOps {
    using M = Matrix4<Scalar>;
    M lower[2]; // sigma_i^-
    M raise[2]; // sigma_i^+
    M z[2];     // sigma_i^z
    M zz;

    PauliOps() {
        using C = std::complex<Scalar>;
        Matrix2<Scalar> sm = Matrix2<Scalar>::Zero();
        sm(1, 0) = C(1); // |d><u|
        Matrix2<Scalar> sz = Matrix2<Scalar>::Zero();
        sz(0, 0) = C(1);
        sz(1, 1) = C(-1);
        const Matrix2<Scalar> id = Matrix2<Scalar>::Identity();
        auto kron = [](const Matrix2<Scalar>& a, const Matrix2<Scalar>& b) {
            M out;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
            return out;
        };
        lower[0] = kron(sm, id);
        lower[1] = kron(id, sm);
        z[0] = kron(sz, id);
        z[1] = kron(id, sz);
        for (int i = 0; i < 2; ++i) raise[i] = lower[i].adjoint();
        zz = z[0] * z[1];
    }
};

template <typename Scalar>
const PauliOps<Scalar>& pauli_ops() {
    static const PauliOps<Scalar> ops;
    return ops;
}

// sum_ij g_ij (L_j rho L_i^dag) accumulated into `out`; returns K = sum_ij g_ij L_i^dag L_j.
template <typename Scalar>
Matrix4<Scalar> add_jumps(const Matrix4<Scalar>& rho, const Matrix2c& g, const Matrix4<Scalar> (&L)[2],
                          Matrix4<Scalar>& out) {
    using C = std::complex<Scalar>;
    Matrix4<Scalar> K = Matrix4<Scalar>::Zero();
    for (int j = 0; j < 2; ++j) {
        // M_j^dag = sum_i g_ij L_i^dag
        Matrix4<Scalar> mdag = Matrix4<Scalar>::Zero();
        for (int i = 0; i < 2; ++i) {
            if (g(i, j) != 0.0) {
                mdag += C(g(i, j)) * L[i].adjoint();
            }
        }
        if (!mdag.isZero(0)) {
            out.noalias() += L[j] * rho * mdag;
            K.noalias() += mdag * L[j];
        }
    }
    return K;
}

} // namespace detail

// Right-hand side d rho/dt of the TCL generator (interaction picture); rho must be Hermitian.
// Dephasing:  -i[Jz s1z s2z, rho] + sum_ij gz_ij (s_jz rho s_iz - {s_iz s_jz, rho}/2)
// Transverse: -i[J s1+ s2- + h.c., rho] + sum_ij gd_ij D[s_j^-, s_i^-] + gu_ij D[s_j^+, s_i^+]
template <typename Scalar>
Matrix4<Scalar> generator_apply(const Matrix4<Scalar>& rho, const rates::CoefficientSet& c, GeneratorKind kind) {
    using C = std::complex<Scalar>;
    using M = Matrix4<Scalar>;
    const auto& ops = detail::pauli_ops<Scalar>();
    M out = M::Zero();
    M H;
    M K;
    if (kind == GeneratorKind::Dephasing) {
        H = C(c.Jz) * ops.zz;
        K = detail::add_jumps<Scalar>(rho, c.gamma_z, ops.z, out);
    } else {
        const M x = ops.raise[0] * ops.lower[1];
        H = C(c.J) * x + C(std::conj(c.J)) * x.adjoint();
        K = detail::add_jumps<Scalar>(rho, c.gamma_down, ops.lower, out);
        K += detail::add_jumps<Scalar>(rho, c.gamma_up, ops.raise, out);
    }
    // -i(H_eff rho - rho H_eff^dag), H_eff = H - iK/2
    const M heff = H - C(0, Scalar(0.5)) * K;
    const M a = heff * rho;
    out += C(0, -1) * a + C(0, 1) * a.adjoint();
    return out;
}

// Vectorized generator (column-major vec) as an explicit 16x16 matrix.
Matrix16c liouvillian(const rates::CoefficientSet& c, GeneratorKind kind);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Transverse;
    rates::CoefficientFn coefficients;
    // Freeze the coefficients at their t -> infinity values: coefficients(+inf) is called once.
    bool markovian = false;
    // Shortest time scale on which the coefficients vary (e.g. 2pi/Omega); 0 when none.
    double timescale = 0.0;
};

struct Measures {
    double concurrence = 0.0;
    TripletSinglet ts;
};

Measures measure(const DensityMatrix4& rho);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix4> states;
    std::vector<rates::CoefficientSet> coefficient_log;
    std::vector<Measures> measures;
    // Markovian transverse runs absorb arg(gamma_down_12) into qubit 2's lowering operator;
    // states and coefficients are reported in that frame and this is the applied phase.
    double frame_phase = 0.0;
    double step = 0.0;         // accepted RK4 step (largest substep)
    int halvings = 0;          // most halvings needed by any output interval
    double convergence = 0.0;  // largest accepted difference to the previous level
};

struct EvolveOptions {
    double tolerance = 1e-8;
    int max_halvings = 12;
    double max_step = 0.0; // optional extra cap, 0 = none
};

// Classical RK4 on output-aligned substeps. Each output interval halves its step until two
// successive levels agree to max(tolerance * dt / span, 1e-14) (max-abs over entries), so the
// accumulated difference stays within `tolerance`. Throws IntegrationError on non-convergence
// or when an output state fails validation.
Trajectory evolve(const DensityMatrix4& rho0, const GeneratorSpec& gen, const std::vector<double>& t_grid,
                  const EvolveOptions& opts = {});

// Uniform grid of n_points over [0, t_max].
std::vector<double> uniform_grid(double t_max, int n_points);

// Markovian transverse steady state for gamma_12 = gamma_down with gamma_up = alpha gamma_down:
// G_s = 1/2, G11 = alpha G_t = alpha^2 G44, 2 G44 = 1/(1 + alpha + alpha^2).
DensityMatrix4 thermal_steady_state(double alpha);

// Closed-form steady state of a Markovian transverse generator at inverse temperature beta.
// Throws DomainError for non-Markovian or dephasing generators, or gamma_12 != gamma_down.
DensityMatrix4 steady_state(const GeneratorSpec& gen, double beta, double Omega);

// Null space of the Liouvillian. When it is degenerate the combination with unit trace and
// <S|rho|S> = singlet_population is returned.
DensityMatrix4 steady_state_nullspace(const rates::CoefficientSet& c, GeneratorKind kind,
                                      double singlet_population = 0.5);

// Constant Markovian coefficient provider.
rates::CoefficientSet markovian_set(double gamma_down, Complex gamma_12, Complex J, double alpha = 0.0);

} // namespace corrnoise
