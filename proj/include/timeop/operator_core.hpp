// operator_core.hpp: dense complex operator kernel
//
// Hermiticity-checked operator type, eigendecomposition, spectral exponentials,
// PSD square roots and commutators. All functions are pure.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace timeop {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Raised when a numerical routine fails to deliver a result within its
// contract (non-convergence, residual check failure). The CLI maps it to
// exit status 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPositiveSemidefinite : public NumericalError {
public:
    explicit NotPositiveSemidefinite(double min_eigenvalue);
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

// max_ij |A_ij - conj(A_ji)|
double hermiticity_defect(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

class HermitianOperator {
public:
    // Throws std::invalid_argument if the matrix is empty, non-square,
    // non-finite, or its hermiticity defect exceeds the configured bound.
    static HermitianOperator from_matrix(ComplexMatrix m);
    // Builds diag(values).
    static HermitianOperator diagonal(const RealVector& values);
    static HermitianOperator identity(Eigen::Index dim);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }
    double hermiticity_defect() const noexcept { return defect_; }

private:
    HermitianOperator(ComplexMatrix m, double defect) : matrix_(std::move(m)), defect_(defect) {}

    ComplexMatrix matrix_;
    double defect_ = 0.0;
};

struct EigenSystem {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // orthonormal columns
};

// Throws NumericalError on non-convergence or when the reconstruction /
// orthonormality residuals exceed the configured tolerance. `label` names
// the matrix in diagnostics.
EigenSystem hermitian_eigendecomposition(const HermitianOperator& a, std::string_view label = "operator");

struct UnitaryPropagator {
    ComplexMatrix matrix;
    std::string generator;
    double parameter = 0.0;
};

// e^{i theta A} = U diag(e^{i theta l}) U*. theta == 0 yields the identity exactly.
UnitaryPropagator unitary_exponential(const HermitianOperator& a, double theta, std::string_view label = "operator");
// Reuses an existing decomposition of A.
UnitaryPropagator unitary_exponential(const EigenSystem& es, double theta, std::string_view label = "operator");

HermitianOperator psd_sqrt(const HermitianOperator& a);

// AB - BA. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace timeop
