#pragma once

// Every numerical threshold used by the library lives here so that acceptance
// runs are reproducible from a single record.

namespace timeop {

struct Tolerances {
    // max |A_ij - conj(A_ji)| <= hermiticity * (1 + max |A_ij|)
    double hermiticity = 1e-12;
    // ||A U - U diag(l)||_F <= eigen_residual * ||A||_F, ||U*U - I||_F <= eigen_residual
    double eigen_residual = 1e-10;
    double unitarity = 1e-10;
    // eigenvalues in [-psd_floor, 0) are clamped to zero by psd_sqrt
    double psd_floor = 1e-10;
    // ||R R - A||_F <= psd_sqrt_residual * (1 + ||A||_F)
    double psd_sqrt_residual = 1e-9;

    double exact_identity = 1e-12;
    double zero_parameter = 1e-14;
    double min_spectral_gap = 1e-12;

    double povm_completeness = 1e-12;
    double povm_hermiticity = 1e-12;
    double povm_positivity = 1e-10;  // min eigenvalue >= -povm_positivity
    double dilation_isometry = 1e-12;
    double dilation_reconstruction = 1e-10;

    double spectrum_containment = 1e-9;
    double robertson_slack = 1e-12;
    double state_normalization = 1e-10;

    // relative growth of sum 1/E_n^2 over the last quartile that triggers the warning
    double summability_growth = 0.01;
    double grid_uniformity = 1e-12;
};

inline constexpr Tolerances kTolerances{};

}  // namespace timeop
