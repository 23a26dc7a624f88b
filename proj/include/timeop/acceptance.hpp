// acceptance.hpp: the end-to-end criteria, runnable from tests and the CLI
#pragma once

#include "timeop/residual_report.hpp"
#include "timeop/states.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace timeop {

// Independent eigenvalue route for the spectrum criterion: returns the
// ascending eigenvalues of a Hermitian matrix.
using EigenvalueOracle = std::function<std::vector<double>(const ComplexMatrix&)>;

struct AcceptanceOptions {
    EigenvalueOracle oracle;  // empty: the Schur route from verification.hpp
    std::string oracle_name = "complex Schur (Eigen::ComplexEigenSolver)";
    std::uint64_t seed = 20140301;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    double runtime_ms = 0.0;
    double runtime_limit_ms = 0.0;
    std::vector<ResidualReport> reports;

    bool within_time() const noexcept { return runtime_ms < runtime_limit_ms; }
    bool passed() const noexcept {
        if (!within_time() || reports.empty()) return false;
        for (const auto& r : reports) {
            if (!r.passed()) return false;
        }
        return true;
    }
};

// The packet used by the grid criteria: p0 = 5, width 0.5, centred at x0 = -2.
GaussianPacket acceptance_packet();

CriterionResult check_exact_ccr(const AcceptanceOptions& options);
CriterionResult check_spectrum(const AcceptanceOptions& options);
CriterionResult check_phase_povm(const AcceptanceOptions& options);
CriterionResult check_naimark(const AcceptanceOptions& options);
CriterionResult check_weak_weyl(const AcceptanceOptions& options);
CriterionResult check_robertson(const AcceptanceOptions& options);
CriterionResult check_arrival(const AcceptanceOptions& options);
CriterionResult check_weyl(const AcceptanceOptions& options);

// All criteria in order 1..8.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

}  // namespace timeop
