#include "helpers.hpp"

#include "timeop/models.hpp"
#include "timeop/operator_core.hpp"

#include <doctest.h>

#include <numbers>

using namespace timeop;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix diag(std::initializer_list<double> values) {
    RealVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double x : values) v(k++) = x;
    return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("HermitianOperator rejects bad input") {
    CHECK_THROWS_AS(HermitianOperator::from_matrix(ComplexMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(HermitianOperator::from_matrix(ComplexMatrix(0, 0)), std::invalid_argument);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianOperator::from_matrix(a), std::invalid_argument);
    a(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(HermitianOperator::from_matrix(a), std::invalid_argument);
    ComplexMatrix b = ComplexMatrix::Identity(2, 2);
    b(0, 0) = Complex(1.0, 1e-3);
    CHECK_THROWS_AS(HermitianOperator::from_matrix(b), std::invalid_argument);
}

TEST_CASE("eigendecomposition: identity and Pauli-y") {
    const EigenSystem id = hermitian_eigendecomposition(HermitianOperator::identity(3));
    for (int k = 0; k < 3; ++k) CHECK(id.eigenvalues(k) == doctest::Approx(1.0).epsilon(1e-15));

    ComplexMatrix y(2, 2);
    y << 0.0, -I, I, 0.0;
    const EigenSystem es = hermitian_eigendecomposition(HermitianOperator::from_matrix(y));
    CHECK(es.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(es.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigendecomposition: residual and orthonormality on random Hermitian matrices") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 5, 17, 60}) {
        const ComplexMatrix a = testing::random_hermitian(n, rng);
        const EigenSystem es = hermitian_eigendecomposition(HermitianOperator::from_matrix(a));
        const ComplexMatrix& u = es.eigenvectors;
        CHECK((a * u - u * es.eigenvalues.cast<Complex>().asDiagonal()).norm() <= 1e-10 * a.norm());
        CHECK((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() <= 1e-10);
        for (Eigen::Index k = 1; k < n; ++k) CHECK(es.eigenvalues(k) >= es.eigenvalues(k - 1));
    }
}

TEST_CASE("eigendecomposition: random Hermitian spectra agree with the bisection oracle") {
    std::mt19937_64 rng(12);
    for (int n : {3, 9, 33}) {
        const ComplexMatrix a = testing::random_hermitian(n, rng);
        const RealVector ours = hermitian_eigendecomposition(HermitianOperator::from_matrix(a)).eigenvalues;
        const auto ref = testing::oracle_eigenvalues(a);
        for (int k = 0; k < n; ++k) CHECK(std::abs(ours(k) - ref[static_cast<std::size_t>(k)]) <= 1e-10);
    }
}

TEST_CASE("eigendecomposition: Galapon N=64 matches the bisection oracle to 1e-9") {
    const ModelPair pair = build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, 64}));
    const RealVector ours = hermitian_eigendecomposition(pair.time_operator).eigenvalues;
    const auto ref = testing::oracle_eigenvalues(testing::reference_galapon(1.0, 64));
    REQUIRE(ref.size() == 65);
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(ours(static_cast<Eigen::Index>(k)) - ref[k]) <= 1e-9);
}

TEST_CASE("unitary_exponential: zero parameter is the identity") {
    std::mt19937_64 rng(13);
    const auto a = HermitianOperator::from_matrix(testing::random_hermitian(7, rng));
    const UnitaryPropagator u = unitary_exponential(a, 0.0);
    CHECK((u.matrix - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(u.parameter == 0.0);
}

TEST_CASE("unitary_exponential: diag(1,3,5) at pi is -I") {
    const auto a = HermitianOperator::from_matrix(diag({1.0, 3.0, 5.0}));
    const ComplexMatrix u = unitary_exponential(a, std::numbers::pi).matrix;
    CHECK((u + ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("unitary_exponential: unitarity and the group law") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> theta(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = HermitianOperator::from_matrix(testing::random_hermitian(12, rng));
        const double s = theta(rng);
        const double t = theta(rng);
        const ComplexMatrix us = unitary_exponential(a, s).matrix;
        const ComplexMatrix ut = unitary_exponential(a, t).matrix;
        const ComplexMatrix ust = unitary_exponential(a, s + t).matrix;
        CHECK((us.adjoint() * us - ComplexMatrix::Identity(12, 12)).norm() <= 1e-10);
        CHECK((us * ut - ust).norm() <= 1e-10);
    }
}

TEST_CASE("psd_sqrt: identity, diagonal and projector") {
    CHECK((psd_sqrt(HermitianOperator::identity(4)).matrix() - ComplexMatrix::Identity(4, 4)).norm() <= 1e-12);
    const auto d = psd_sqrt(HermitianOperator::from_matrix(diag({4.0, 9.0})));
    CHECK((d.matrix() - diag({2.0, 3.0})).norm() <= 1e-12);

    std::mt19937_64 rng(15);
    std::normal_distribution<double> g;
    ComplexVector v(6);
    for (auto& x : v) x = {g(rng), g(rng)};
    v.normalize();
    const ComplexMatrix proj = v * v.adjoint();
    const auto root = psd_sqrt(HermitianOperator::from_matrix(0.5 * (proj + proj.adjoint())));
    CHECK((root.matrix() - proj).norm() <= 1e-12);
}

TEST_CASE("psd_sqrt: elementwise on random diagonal inputs") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    RealVector v(9);
    for (auto& x : v) x = u(rng);
    const ComplexMatrix root = psd_sqrt(HermitianOperator::diagonal(v)).matrix();
    for (Eigen::Index k = 0; k < 9; ++k) CHECK(std::abs(root(k, k) - std::sqrt(v(k))) <= 1e-12);
    CHECK((root - ComplexMatrix(root.diagonal().asDiagonal())).norm() <= 1e-12);
}

TEST_CASE("psd_sqrt: clamps roundoff negatives and rejects real ones") {
    const auto tiny = psd_sqrt(HermitianOperator::from_matrix(diag({-1e-12, 1.0})));
    CHECK(std::abs(tiny.matrix()(0, 0)) <= 1e-12);
    try {
        (void)psd_sqrt(HermitianOperator::from_matrix(diag({-1e-3, 1.0})));
        FAIL("expected NotPositiveSemidefinite");
    } catch (const NotPositiveSemidefinite& e) {
        CHECK(e.min_eigenvalue() == doctest::Approx(-1e-3));
        CHECK(std::string(e.what()).find("not positive semidefinite") != std::string::npos);
    }
}

TEST_CASE("commutator: zero cases, antisymmetry and dimension mismatch") {
    std::mt19937_64 rng(17);
    const auto a = HermitianOperator::from_matrix(testing::random_hermitian(8, rng));
    const auto b = HermitianOperator::from_matrix(testing::random_hermitian(8, rng));
    CHECK(commutator(a, a).cwiseAbs().maxCoeff() <= 1e-14);
    const auto d1 = HermitianOperator::from_matrix(diag({1, 2, 3}));
    const auto d2 = HermitianOperator::from_matrix(diag({-4, 0.5, 7}));
    CHECK(commutator(d1, d2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((commutator(a, b) + commutator(b, a)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK_THROWS_AS(commutator(a, d1), std::invalid_argument);
}

TEST_CASE("commutator: Galapon N=8 against its Hamiltonian has -i off the diagonal") {
    const ModelPair pair = build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, 8}));
    const ComplexMatrix c = commutator(pair.time_operator, pair.hamiltonian);
    for (Eigen::Index n = 0; n < 9; ++n) {
        for (Eigen::Index m = 0; m < 9; ++m) {
            const Complex expected = n == m ? Complex(0.0) : -I;
            CHECK(std::abs(c(n, m) - expected) <= 1e-14);
        }
    }
}

TEST_CASE("helpers: hermiticity defect, max entry, finiteness") {
    ComplexMatrix a(2, 2);
    a << 1.0, Complex(2.0, 1.0), Complex(2.0, -1.5), 3.0;
    CHECK(hermiticity_defect(a) == doctest::Approx(0.5));
    CHECK(max_abs_entry(a) == doctest::Approx(3.0));
    CHECK(all_finite(a));
    a(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(all_finite(a));
}
