// verification.hpp: commutator, Weyl-type, uncertainty and spectrum checks
//
// Each check turns one algebraic claim about a (T, H) pair into measured
// numbers in a ResidualReport. Exact identities are gated at 1e-12;
// discretisation-limited claims are gated by the caller's tolerance or
// judged by convergence ratios across grids.

#pragma once

#include "timeop/models.hpp"
#include "timeop/operator_core.hpp"
#include "timeop/residual_report.hpp"
#include "timeop/states.hpp"
#include "timeop/tolerances.hpp"

#include <span>
#include <vector>

namespace timeop {

// For each vector v: r+ = ||[T,H]v - iv||, r- = ||[T,H]v + iv||. The gated value
// is min(r+, r-); aux records both residuals and the better-matching sign
// (+1, -1, or 0 when they tie). notes["coefficient"] is "+i", "-i", "mixed" or
// "none".
ResidualReport ccr_report(const ModelPair& pair, std::span<const LabeledState> vectors,
                          double tolerance = kTolerances.exact_identity);

// ||T e^{-itH} psi - e^{-itH}(T + t) psi||, the intertwining that follows from
// [T,H] = i. The (T - t) variant is reported as aux "printed_form_residual".
ResidualReport weak_weyl_residual(const ModelPair& pair, double t, const ComplexVector& psi,
                                  double tolerance = kTolerances.exact_identity);

// ||(e^{isH} e^{itT} - e^{ist} e^{itT} e^{isH}) psi||. The alternate form with
// e^{-ist} e^{itH} e^{isT} on the right is reported as aux "printed_form_residual".
// Requires |s|, |t| <= 1.
ResidualReport weyl_relation_residual(const ModelPair& pair, double s, double t, const ComplexVector& psi,
                                      double tolerance = kTolerances.exact_identity);

// dT dH >= |<psi,[T,H]psi>| / 2, gated as rhs - lhs <= 1e-12.
ResidualReport robertson_check(const ModelPair& pair, const ComplexVector& psi);

struct SweepRow {
    Eigen::Index size = 0;  // matrix dimension
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double runtime_ms = 0.0;
};

struct SweepTable {
    double omega = 1.0;
    std::vector<SweepRow> rows;  // ascending size
};

struct SweepResult {
    SweepTable table;
    ResidualReport report;  // containment and lambda_max monotonicity per row
};

// Eigenvalues of the Galapon truncation of dimension `dim` for E_n = omega(n + 1/2).
RealVector galapon_eigenvalues(double omega, Eigen::Index dim);

// sizes must be strictly ascending matrix dimensions, each >= 2.
SweepResult spectrum_sweep(double omega, std::span<const Eigen::Index> sizes);

// Second eigenvalue route: general complex Schur decomposition, real parts sorted.
// Used as a cross-check of the Hermitian solver.
RealVector schur_eigenvalues(const ComplexMatrix& a);

}  // namespace timeop
