#pragma once

#include "timeop/operator_core.hpp"

#include "sturm_bisection.hpp"

#include <complex>
#include <random>
#include <vector>

namespace testing {

inline timeop::ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    timeop::ComplexMatrix a(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) a(r, c) = {g(rng), g(rng)};
    }
    return 0.5 * (a + a.adjoint());
}

inline std::vector<double> oracle_eigenvalues(const timeop::ComplexMatrix& a) {
    std::vector<std::complex<double>> rows(static_cast<std::size_t>(a.size()));
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) rows[static_cast<std::size_t>(r * a.cols() + c)] = a(r, c);
    }
    return oracle::hermitian_eigenvalues(rows, static_cast<std::size_t>(a.rows()));
}

// Galapon matrix written straight from T_nm = i/(E_n - E_m), E_n = omega(n + 1/2).
inline timeop::ComplexMatrix reference_galapon(double omega, int n_max) {
    const Eigen::Index n = n_max + 1;
    timeop::ComplexMatrix t = timeop::ComplexMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            if (r != c) t(r, c) = std::complex<double>(0.0, 1.0) / (omega * static_cast<double>(r - c));
        }
    }
    return t;
}

}  // namespace testing
