#include "corrnoise/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "corrnoise/entanglement.hpp"
#include "corrnoise/error.hpp"

namespace corrnoise {

namespace {

using rates::CoefficientSet;

double rate_scale(const CoefficientSet& c) {
    double r = std::abs(c.Jz);
    for (const Matrix2c* g : {&c.gamma_z, &c.gamma_down, &c.gamma_up}) {
        r = std::max(r, g->cwiseAbs().maxCoeff());
    }
    return r;
}

// Rotate qubit 2 by diag(e^{-i phi/2}, e^{i phi/2}); returns U^dag rho U.
Matrix4c to_absorbed_frame(const Matrix4c& rho, double phi) {
    Vector4c u;
    const Complex a = std::polar(1.0, -0.5 * phi);
    const Complex b = std::polar(1.0, 0.5 * phi);
    u << a, b, a, b;
    return u.conjugate().asDiagonal() * rho * u.asDiagonal();
}

CoefficientSet absorb_phase(CoefficientSet c, double phi) {
    const Complex w = std::polar(1.0, phi);
    c.J *= std::conj(w);
    c.gamma_down(0, 1) *= std::conj(w);
    c.gamma_down(1, 0) *= w;
    c.gamma_up(0, 1) *= w;
    c.gamma_up(1, 0) *= std::conj(w);
    return c;
}

// Generator with the coefficient-dependent pieces built once; matches generator_apply<double>.
class Prepared {
public:
    Prepared(const CoefficientSet& c, GeneratorKind kind) : kind_(kind) {
        const auto& ops = detail::pauli_ops<double>();
        if (kind == GeneratorKind::Dephasing) {
            // diagonal jumps act elementwise: d rho_ab = lambda_ab rho_ab
            Vector4c zz, k = Vector4c::Zero();
            for (int a = 0; a < 4; ++a) {
                zz(a) = ops.zz(a, a);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) k(a) += c.gamma_z(i, j) * ops.z[i](a, a) * ops.z[j](a, a);
            }
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    Complex v = Complex(0.0, -c.Jz) * (zz(a) - zz(b)) - 0.5 * (k(a) + std::conj(k(b)));
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) v += c.gamma_z(i, j) * ops.z[j](a, a) * ops.z[i](b, b);
                    lambda_(a, b) = v;
                }
            }
            return;
        }
        const Matrix4c x = ops.raise[0] * ops.lower[1];
        Matrix4c K = Matrix4c::Zero();
        auto channels = [&](const Matrix2c& g, const Matrix4c (&L)[2]) {
            for (int j = 0; j < 2; ++j) {
                Matrix4c mdag = Matrix4c::Zero();
                for (int i = 0; i < 2; ++i) {
                    if (g(i, j) != 0.0) mdag += g(i, j) * L[i].adjoint();
                }
                if (mdag.isZero(0)) continue;
                jumps_.push_back({L[j], mdag});
                K += mdag * L[j];
            }
        };
        channels(c.gamma_down, ops.lower);
        channels(c.gamma_up, ops.raise);
        heff_ = c.J * x + std::conj(c.J) * x.adjoint() - Complex(0.0, 0.5) * K;
    }

    Matrix4c apply(const Matrix4c& rho) const {
        if (kind_ == GeneratorKind::Dephasing) return lambda_.cwiseProduct(rho);
        const Matrix4c a = heff_ * rho;
        Matrix4c out = Complex(0.0, -1.0) * a + Complex(0.0, 1.0) * a.adjoint();
        for (const auto& [L, mdag] : jumps_) out.noalias() += L * rho * mdag;
        return out;
    }

private:
    GeneratorKind kind_;
    Matrix4c lambda_;
    Matrix4c heff_;
    std::vector<std::pair<Matrix4c, Matrix4c>> jumps_;
};

Matrix4c hermitian_part(const Matrix4c& m) { return 0.5 * (m + m.adjoint()); }

// RK4 substeps over one output interval. Frozen coefficients use the RK4 update polynomial
// 1 + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24, which is the same map evaluated once per h.
class Stepper {
public:
    Stepper(rates::CoefficientFn fn, GeneratorKind kind, bool frozen) : fn_(std::move(fn)), kind_(kind), frozen_(frozen) {
        if (frozen_) L_ = liouvillian(fn_(0.0), kind_);
    }

    Matrix4c run(Matrix4c rho, double t0, double t1, int n) {
        const double h = (t1 - t0) / n;
        if (frozen_) {
            const Matrix16c& P = propagator(h);
            Vector16c v = Eigen::Map<const Vector16c>(rho.data());
            for (int s = 0; s < n; ++s) {
                v = P * v;
                Eigen::Map<Matrix4c> m(v.data());
                m = hermitian_part(m);
            }
            return Eigen::Map<const Matrix4c>(v.data());
        }
        Prepared g0(fn_(t0), kind_);
        for (int s = 0; s < n; ++s) {
            const double ts = t0 + s * h;
            const Prepared gm(fn_(ts + 0.5 * h), kind_);
            Prepared g1(fn_(s + 1 == n ? t1 : ts + h), kind_);
            const Matrix4c k1 = g0.apply(rho);
            const Matrix4c k2 = gm.apply(rho + 0.5 * h * k1);
            const Matrix4c k3 = gm.apply(rho + 0.5 * h * k2);
            const Matrix4c k4 = g1.apply(rho + h * k3);
            rho = hermitian_part(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
            g0 = std::move(g1);
        }
        return rho;
    }

private:
    const Matrix16c& propagator(double h) {
        for (const auto& [key, P] : cache_) {
            if (key == h) return P;
        }
        const Matrix16c A = h * L_;
        const Matrix16c I = Matrix16c::Identity();
        Matrix16c P = I + A / 4.0;
        P = I + (A / 3.0) * P;
        P = I + (A / 2.0) * P;
        P = I + A * P;
        if (cache_.size() > 64) cache_.clear();
        cache_.emplace_back(h, P);
        return cache_.back().second;
    }

    rates::CoefficientFn fn_;
    GeneratorKind kind_;
    bool frozen_;
    Matrix16c L_;
    std::vector<std::pair<double, Matrix16c>> cache_;
};

} // namespace

Matrix16c liouvillian(const CoefficientSet& c, GeneratorKind kind) {
    Matrix16c L;
    for (int col = 0; col < 16; ++col) {
        Matrix4c e = Matrix4c::Zero();
        e(col % 4, col / 4) = 1.0;
        // generator_apply assumes a Hermitian argument; split e into Hermitian parts
        const Matrix4c re = 0.5 * (e + e.adjoint());
        const Matrix4c im = Complex(0.0, -0.5) * (e - e.adjoint());
        const Matrix4c out = generator_apply<double>(re, c, kind) + kI * generator_apply<double>(im, c, kind);
        L.col(col) = Eigen::Map<const Vector16c>(out.data());
    }
    return L;
}

Measures measure(const DensityMatrix4& rho) {
    return {concurrence(rho), triplet_singlet(rho.matrix())};
}

std::vector<double> uniform_grid(double t_max, int n_points) {
    if (n_points < 2 || !(t_max > 0.0)) {
        throw DomainError("uniform_grid: need t_max > 0 and n_points >= 2");
    }
    std::vector<double> t(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        t[static_cast<std::size_t>(k)] = t_max * k / (n_points - 1);
    }
    return t;
}

Trajectory evolve(const DensityMatrix4& rho0, const GeneratorSpec& gen, const std::vector<double>& t_grid,
                  const EvolveOptions& opts) {
    if (t_grid.empty()) {
        throw DomainError("evolve: empty time grid");
    }
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (!(t_grid[k] > t_grid[k - 1])) {
            throw DomainError("evolve: time grid must be strictly increasing");
        }
    }
    if (!gen.coefficients) {
        throw DomainError("evolve: generator has no coefficient provider");
    }

    Trajectory traj;
    rates::CoefficientFn fn = gen.coefficients;
    Matrix4c start = rho0.matrix();
    if (gen.markovian) {
        CoefficientSet frozen = gen.coefficients(std::numeric_limits<double>::infinity());
        if (gen.kind == GeneratorKind::Transverse) {
            const Complex g12 = frozen.gamma_down(0, 1);
            const double bound = std::sqrt(std::max(0.0, frozen.gamma_down(0, 0).real() * frozen.gamma_down(1, 1).real()));
            if (std::abs(g12) > bound * (1.0 + 1e-12) + 1e-300) {
                throw DomainError("evolve: correlated decay |gamma_12| exceeds the local decay rate");
            }
            if (std::abs(g12) > 0.0 && std::arg(g12) != 0.0) {
                traj.frame_phase = std::arg(g12);
                frozen = absorb_phase(frozen, traj.frame_phase);
                frozen.gamma_down(0, 1) = std::abs(g12);
                frozen.gamma_down(1, 0) = std::abs(g12);
                start = to_absorbed_frame(start, traj.frame_phase);
            }
        }
        fn = [frozen](double t) {
            CoefficientSet c = frozen;
            c.time = t;
            return c;
        };
    }

    const std::size_t n = t_grid.size();
    if (n == 1) {
        traj.times = t_grid;
        traj.states.push_back(DensityMatrix4::unchecked(start));
        traj.coefficient_log.push_back(fn(t_grid[0]));
        traj.measures.push_back(measure(traj.states.back()));
        return traj;
    }

    // Initial step from the coefficient magnitudes sampled over the grid.
    const double span = t_grid.back() - t_grid.front();
    double h = span / 1000.0;
    const std::size_t samples = std::min<std::size_t>(n, 33);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t k = samples == 1 ? 0 : s * (n - 1) / (samples - 1);
        const CoefficientSet c = fn(t_grid[k]);
        const double r = rate_scale(c);
        if (r > 0.0) h = std::min(h, 1.0 / (50.0 * r));
        if (std::abs(c.J) > 0.0) h = std::min(h, 1.0 / (50.0 * std::abs(c.J)));
    }
    if (gen.timescale > 0.0) h = std::min(h, gen.timescale / 20.0);
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);

    // Each output interval is refined on its own, so a singular start (1/f rates near t = 0)
    // does not force small steps everywhere. Interval tolerances add up to `tolerance`.
    Stepper stepper(fn, gen.kind, gen.markovian);
    traj.times = t_grid;
    traj.states.reserve(n);
    traj.coefficient_log.reserve(n);
    traj.measures.reserve(n);
    auto record = [&](const Matrix4c& rho, std::size_t k) {
        const StateDiagnostics d = validate_state(rho);
        if (!d.ok()) {
            std::ostringstream msg;
            msg << "state left the physical set: hermiticity defect " << d.hermiticity_defect << ", trace defect "
                << d.trace_defect << ", min eigenvalue " << d.min_eigenvalue;
            throw IntegrationError(msg.str(), t_grid[k]);
        }
        traj.states.push_back(DensityMatrix4::unchecked(rho));
        traj.coefficient_log.push_back(fn(t_grid[k]));
        traj.measures.push_back(measure(traj.states.back()));
    };
    record(start, 0);
    Matrix4c rho = start;
    int previous = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double dt = t_grid[k + 1] - t_grid[k];
        const double tol = std::max(opts.tolerance * dt / span, 1e-14);
        int m = static_cast<int>(std::max(1.0, std::ceil(dt / h * (1.0 - 1e-12))));
        m = std::max(m, previous / 4);
        // 1/f rates have log-singular derivatives at t = 0; there the interval is split
        // geometrically so each piece sees a smooth generator.
        const bool graded = !gen.markovian && t_grid[k] == 0.0;
        auto advance = [&](int substeps) {
            if (!graded) return stepper.run(rho, t_grid[k], t_grid[k + 1], substeps);
            constexpr int kPieces = 24;
            double a = t_grid[k + 1] * std::ldexp(1.0, -kPieces);
            Matrix4c out = stepper.run(rho, 0.0, a, substeps);
            for (int j = 0; j < kPieces; ++j) {
                out = stepper.run(out, a, 2.0 * a, substeps);
                a *= 2.0;
            }
            return out;
        };
        if (graded) m = 1;
        Matrix4c coarse = advance(m);
        if (!coarse.allFinite()) throw IntegrationError("non-finite state during integration", t_grid[k + 1]);
        bool converged = false;
        double diff = 0.0;
        int halvings = 0;
        while (halvings < opts.max_halvings) {
            if (m > (1 << 24)) break;
            m *= 2;
            ++halvings;
            const Matrix4c fine = advance(m);
            if (!fine.allFinite()) throw IntegrationError("non-finite state during integration", t_grid[k + 1]);
            diff = (fine - coarse).cwiseAbs().maxCoeff();
            coarse = fine;
            if (diff < tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "RK4 did not converge after " << opts.max_halvings << " halvings (difference " << diff << ")";
            throw IntegrationError(msg.str(), t_grid[k + 1]);
        }
        rho = coarse;
        previous = graded ? 0 : m;
        traj.halvings = std::max(traj.halvings, halvings);
        traj.convergence = std::max(traj.convergence, diff);
        traj.step = std::max(traj.step, dt / m);
        record(rho, k + 1);
    }
    return traj;
}

DensityMatrix4 thermal_steady_state(double alpha) {
    if (!(alpha >= 0.0) || alpha > 1.0) {
        throw DomainError("thermal_steady_state: alpha must lie in [0, 1]");
    }
    const double g44 = 0.5 / (1.0 + alpha + alpha * alpha);
    const Vector4c t = triplet_vector();
    const Vector4c s = singlet_vector();
    Matrix4c rho = alpha * g44 * t * t.adjoint() + 0.5 * s * s.adjoint();
    rho(0, 0) = alpha * alpha * g44;
    rho(3, 3) = g44;
    return DensityMatrix4(rho);
}

DensityMatrix4 steady_state(const GeneratorSpec& gen, double beta, double Omega) {
    if (!gen.markovian || gen.kind != GeneratorKind::Transverse) {
        throw DomainError("steady_state: unsupported generator (needs a Markovian transverse generator)");
    }
    const CoefficientSet c = gen.coefficients(std::numeric_limits<double>::infinity());
    const double g = c.gamma_down(0, 0).real();
    if (std::abs(std::abs(c.gamma_down(0, 1)) - g) > 1e-9 * std::abs(g)) {
        throw DomainError("steady_state: closed form requires gamma_12 = gamma_down");
    }
    if (beta < 0.0) {
        throw DomainError("steady_state: beta must be non-negative");
    }
    return thermal_steady_state(std::exp(-beta * Omega));
}

DensityMatrix4 steady_state_nullspace(const CoefficientSet& c, GeneratorKind kind, double singlet_population) {
    const Matrix16c L = liouvillian(c, kind);
    Eigen::JacobiSVD<Matrix16c> svd(L, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-10 * std::max(sv(0), 1e-300);
    std::vector<int> null;
    for (int k = 0; k < 16; ++k) {
        if (sv(k) <= cutoff) null.push_back(k);
    }
    if (null.empty()) {
        throw NumericError("steady_state_nullspace: Liouvillian has no null space");
    }
    const Vector4c s = singlet_vector();
    const int m = static_cast<int>(null.size());
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> A(2, m);
    std::vector<Matrix4c> basis;
    for (int k = 0; k < m; ++k) {
        const Vector16c v = svd.matrixV().col(null[static_cast<std::size_t>(k)]);
        basis.emplace_back(Eigen::Map<const Matrix4c>(v.data()));
        A(0, k) = basis.back().trace();
        A(1, k) = (s.adjoint() * basis.back() * s)(0);
    }
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> rhs(2);
    rhs << 1.0, singlet_population;
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> coef;
    if (m == 1) {
        coef = Eigen::Matrix<Complex, Eigen::Dynamic, 1>::Constant(1, 1.0 / A(0, 0));
    } else {
        coef = A.completeOrthogonalDecomposition().solve(rhs);
    }
    Matrix4c rho = Matrix4c::Zero();
    for (int k = 0; k < m; ++k) rho += coef(k) * basis[static_cast<std::size_t>(k)];
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix4(rho, 1e-12, 1e-8, 1e-8);
}

rates::CoefficientSet markovian_set(double gamma_down, Complex gamma_12, Complex J, double alpha) {
    CoefficientSet c;
    c.time = std::numeric_limits<double>::infinity();
    c.J = J;
    c.gamma_down << gamma_down, gamma_12, std::conj(gamma_12), gamma_down;
    c.gamma_up = alpha * c.gamma_down.transpose();
    return c;
}

} // namespace corrnoise
