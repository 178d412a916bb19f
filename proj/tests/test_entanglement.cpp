#include <doctest.h>

#include <cmath>
#include <random>

#include "corrnoise/entanglement.hpp"
#include "corrnoise/error.hpp"

using namespace corrnoise;

namespace {

Matrix2c random_unitary2(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = Complex(n(rng), n(rng));
    Eigen::HouseholderQR<Matrix2c> qr(g);
    return qr.householderQ();
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Eigen::Vector2cd random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::Vector2cd v(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
    return v.normalized();
}

// Wootters oracle written out independently: sqrt of eigenvalues of rho (sy sy) rho* (sy sy).
double oracle_concurrence(const Matrix4c& rho) {
    Matrix2c sy;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    const Matrix4c yy = kron(sy, sy);
    const Matrix4c r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4c> es(r);
    std::vector<double> l;
    for (int k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k).real())));
    std::sort(l.rbegin(), l.rend());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

} // namespace

TEST_CASE("concurrence of pure reference states") {
    for (NamedState s : {NamedState::BellPsiPlus, NamedState::BellPhiPlus, NamedState::BellI}) {
        CHECK(concurrence(named_state(s)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(concurrence_eigen(named_state(s)) == doctest::Approx(1.0).epsilon(1e-7));
    }
    CHECK(concurrence(DensityMatrix4::pure(singlet_vector())) == doctest::Approx(1.0).epsilon(1e-12));
    for (NamedState s : {NamedState::UpDown, NamedState::PlusPlus}) {
        CHECK(concurrence(named_state(s)) < 1e-12);
    }
    CHECK(concurrence(DensityMatrix4()) == 0.0);

    Matrix4c m = 0.5 * DensityMatrix4::pure(singlet_vector()).matrix();
    m(0, 0) += 0.5;
    CHECK(concurrence(DensityMatrix4(m)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("concurrence routes agree with an independent oracle") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
        const auto rho = random_state(rng, 4);
        const double c = concurrence(rho);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(std::abs(c - oracle_concurrence(rho.matrix())) < 1e-9);
        CHECK(std::abs(c - concurrence_eigen(rho)) < 1e-9);
    }
    for (int k = 0; k < 100; ++k) {
        const auto psi = random_state(rng, 1);
        CHECK(std::abs(concurrence(psi) - oracle_concurrence(psi.matrix())) < 1e-6);
    }
}

TEST_CASE("pure-state concurrence equals 2|ad - bc|") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int k = 0; k < 200; ++k) {
        Vector4c v;
        for (auto& a : v) a = Complex(n(rng), n(rng));
        v.normalize();
        const double expect = 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
        CHECK(concurrence(DensityMatrix4::pure(v)) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("ts form equals full concurrence on structured states") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        // Populations plus a coherence in the {ud, du} block only.
        double p[4];
        double sum = 0.0;
        for (double& x : p) sum += (x = u(rng));
        for (double& x : p) x /= sum;
        const double bound = std::sqrt(p[1] * p[2]);
        const Complex z = std::polar(bound * u(rng), 2 * kPi * u(rng));
        Matrix4c m = Matrix4c::Zero();
        for (int i = 0; i < 4; ++i) m(i, i) = p[i];
        m(1, 2) = z;
        m(2, 1) = std::conj(z);
        const DensityMatrix4 rho(m);
        const auto ts = triplet_singlet(m);
        const double c = concurrence_ts_form(ts.G_t, ts.G_s, ts.G_ts.imag(), ts.G11, ts.G44);
        CHECK(std::abs(c - concurrence(rho)) < 1e-10);
    }
    CHECK(concurrence_ts_form(0.3, 0.3, 0.0, 0.0, 0.0) == 0.0);
    CHECK(concurrence_ts_form(0.0, 0.5, 0.0, 0.0, 0.0) == 0.5);
}

TEST_CASE("concurrence is invariant under local unitaries") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 200; ++k) {
        const auto rho = random_state(rng, 1 + k % 4);
        const Matrix4c U = kron(random_unitary2(rng), random_unitary2(rng));
        const Matrix4c r2 = U * rho.matrix() * U.adjoint();
        CHECK(std::abs(concurrence(DensityMatrix4::unchecked(r2)) - concurrence(rho)) < 1e-10);
    }
}

TEST_CASE("separable mixtures have zero concurrence") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const int terms = 1 + k % 8;
        Matrix4c m = Matrix4c::Zero();
        double total = 0.0;
        for (int j = 0; j < terms; ++j) {
            const double w = u(rng);
            Vector4c v;
            const auto a = random_qubit(rng);
            const auto b = random_qubit(rng);
            for (int i = 0; i < 2; ++i)
                for (int l = 0; l < 2; ++l) v(2 * i + l) = a(i) * b(l);
            m += w * v * v.adjoint();
            total += w;
        }
        m /= total;
        CHECK(concurrence(DensityMatrix4::unchecked(m)) < 1e-9);
    }
}

TEST_CASE("entanglement of formation") {
    CHECK(entanglement_of_formation(0.0) == 0.0);
    CHECK(entanglement_of_formation(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
        const double e = entanglement_of_formation(k / 100.0);
        CHECK(e > prev);
        prev = e;
    }
    CHECK_THROWS_AS(entanglement_of_formation(-0.01), DomainError);
    CHECK_THROWS_AS(entanglement_of_formation(1.01), DomainError);
    CHECK_NOTHROW(entanglement_of_formation(1.0 + 1e-10));
}

TEST_CASE("singlet fidelity and the Werner bound") {
    CHECK(singlet_fidelity(DensityMatrix4::pure(singlet_vector())) == doctest::Approx(1.0));
    CHECK(singlet_fidelity(DensityMatrix4::pure(triplet_vector())) == doctest::Approx(0.0));
    CHECK(singlet_fidelity(DensityMatrix4()) == doctest::Approx(0.25));
    CHECK(werner_lower_bound(0.5) == 0.0);
    CHECK(werner_lower_bound(0.2) == 0.0);
    CHECK(werner_lower_bound(1.0) == doctest::Approx(1.0));

    std::mt19937_64 rng(19);
    for (int k = 0; k < 500; ++k) {
        const auto rho = random_state(rng, 1 + k % 4);
        CHECK(werner_lower_bound(singlet_fidelity(rho)) <= entanglement_of_formation(concurrence(rho)) + 1e-10);
    }
}

TEST_CASE("Werner states saturate the bound") {
    const Matrix4c S = DensityMatrix4::pure(singlet_vector()).matrix();
    for (int k = 1; k <= 50; ++k) {
        const double F = 0.5 + 0.5 * k / 50.0;
        const Matrix4c m = F * S + (1 - F) / 3.0 * (Matrix4c::Identity() - S);
        const DensityMatrix4 rho(m);
        CHECK(singlet_fidelity(rho) == doctest::Approx(F));
        CHECK(std::abs(entanglement_of_formation(concurrence(rho)) - werner_lower_bound(F)) < 1e-10);
    }
}
