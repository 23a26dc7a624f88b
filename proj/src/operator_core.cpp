#include "timeop/operator_core.hpp"

#include "timeop/tolerances.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace timeop {

NotPositiveSemidefinite::NotPositiveSemidefinite(double min_eigenvalue)
    : NumericalError([&] {
          std::ostringstream os;
          os.precision(17);
          os << "not positive semidefinite: min eigenvalue " << min_eigenvalue << " < -"
             << kTolerances.psd_floor;
          return os.str();
      }()),
      min_eigenvalue_(min_eigenvalue) {}

double hermiticity_defect(const ComplexMatrix& a) {
    double defect = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i <= j && i < a.rows(); ++i) {
            defect = std::max(defect, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return defect;
}

double max_abs_entry(const ComplexMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const Complex z = a.data()[k];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

HermitianOperator HermitianOperator::from_matrix(ComplexMatrix m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square with dim >= 1");
    }
    if (!all_finite(m)) {
        throw std::invalid_argument("HermitianOperator: matrix has non-finite entries");
    }
    const double defect = timeop::hermiticity_defect(m);
    const double bound = kTolerances.hermiticity * (1.0 + max_abs_entry(m));
    if (defect > bound) {
        std::ostringstream os;
        os << "HermitianOperator: hermiticity defect " << defect << " exceeds " << bound;
        throw std::invalid_argument(os.str());
    }
    return HermitianOperator(std::move(m), defect);
}

HermitianOperator HermitianOperator::diagonal(const RealVector& values) {
    return from_matrix(values.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
    return from_matrix(ComplexMatrix::Identity(dim, dim));
}

EigenSystem hermitian_eigendecomposition(const HermitianOperator& a, std::string_view label) {
    using Solver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;
    const ComplexMatrix& m = a.matrix();
    Solver solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "eigendecomposition of '" << label << "' (dim " << a.dim()
           << ") did not converge within " << Solver::m_maxIterations * a.dim() << " iterations";
        throw NumericalError(os.str());
    }

    EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};

    const double scale = m.norm();
    const double recon = (m * es.eigenvectors - es.eigenvectors * es.eigenvalues.cast<Complex>().asDiagonal()).norm();
    const double ortho =
        (es.eigenvectors.adjoint() * es.eigenvectors - ComplexMatrix::Identity(a.dim(), a.dim())).norm();
    if (recon > kTolerances.eigen_residual * scale || ortho > kTolerances.eigen_residual) {
        std::ostringstream os;
        os << "eigendecomposition of '" << label << "' failed residual check: reconstruction " << recon
           << ", orthonormality " << ortho;
        throw NumericalError(os.str());
    }
    return es;
}

UnitaryPropagator unitary_exponential(const EigenSystem& es, double theta, std::string_view label) {
    const Eigen::Index n = es.eigenvalues.size();
    UnitaryPropagator out{ComplexMatrix::Identity(n, n), std::string(label), theta};
    if (theta == 0.0) return out;

    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases(k) = std::polar(1.0, theta * es.eigenvalues(k));
    }
    out.matrix = es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();

    const double defect = (out.matrix.adjoint() * out.matrix - ComplexMatrix::Identity(n, n)).norm();
    if (defect > kTolerances.unitarity) {
        std::ostringstream os;
        os << "exp(i*" << theta << "*" << label << ") is not unitary: defect " << defect;
        throw NumericalError(os.str());
    }
    return out;
}

UnitaryPropagator unitary_exponential(const HermitianOperator& a, double theta, std::string_view label) {
    if (theta == 0.0) {
        return UnitaryPropagator{ComplexMatrix::Identity(a.dim(), a.dim()), std::string(label), 0.0};
    }
    return unitary_exponential(hermitian_eigendecomposition(a, label), theta, label);
}

HermitianOperator psd_sqrt(const HermitianOperator& a) {
    const EigenSystem es = hermitian_eigendecomposition(a, "psd_sqrt input");
    const double min_eig = es.eigenvalues(0);
    if (min_eig < -kTolerances.psd_floor) throw NotPositiveSemidefinite(min_eig);

    // Eigenvalues at roundoff level are zero: their square roots (~1e-8) would
    // otherwise dominate the error for rank-deficient inputs such as projectors.
    const double scale = std::max(std::abs(es.eigenvalues(0)), std::abs(es.eigenvalues(es.eigenvalues.size() - 1)));
    const double cutoff = static_cast<double>(a.dim()) * std::numeric_limits<double>::epsilon() * scale;
    const RealVector clamped = (es.eigenvalues.array() > cutoff).select(es.eigenvalues, 0.0);
    RealVector roots = clamped.cwiseSqrt();
    ComplexMatrix r = es.eigenvectors * roots.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    // The product is Hermitian only up to roundoff; average with the adjoint.
    r = (0.5 * (r + r.adjoint())).eval();

    const double residual = (r * r - a.matrix()).norm();
    if (residual > kTolerances.psd_sqrt_residual * (1.0 + a.matrix().norm())) {
        std::ostringstream os;
        os << "psd_sqrt residual " << residual << " exceeds tolerance";
        throw NumericalError(os.str());
    }
    return HermitianOperator::from_matrix(std::move(r));
}

ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("commutator: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
    return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

}  // namespace timeop
