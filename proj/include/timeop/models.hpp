// models.hpp: Hamiltonian / time-operator pairs as finite matrices
//
// Discrete-spectrum models (Galapon operator, oscillator phase operator) and
// momentum-grid models (Aharonov-Bohm, falling particle, transport,
// relativistic). Every pair carries the conventions that were applied to
// reach a measured commutator coefficient of +i (or, for the phase operator,
// the coefficient it actually has).

#pragma once

#include "timeop/operator_core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace timeop {

// ----------------------------- discrete spectra ------------------------------

struct HarmonicSpectrum {
    double omega = 1.0;
    int n_max = 1;  // highest level; the spectrum has n_max + 1 entries
};

struct ExplicitSpectrum {
    std::vector<double> energies;
};

using SpectrumDescriptor = std::variant<HarmonicSpectrum, ExplicitSpectrum>;

struct DiscreteSpectrum {
    std::vector<double> energies;  // strictly increasing
    std::optional<double> omega;   // set for harmonic spectra
    double min_gap = 0.0;
    // Partial sum of 1/E_n^2 over the truncation. A finite prefix cannot decide
    // convergence; the warning flag records a growing tail.
    double summability_estimate = 0.0;
    bool summability_warning = false;

    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(energies.size()); }
};

DiscreteSpectrum make_discrete_spectrum(const SpectrumDescriptor& descriptor);
HermitianOperator discrete_hamiltonian(const DiscreteSpectrum& spectrum);

// -------------------------------- model pairs --------------------------------

enum class ModelKind { galapon, phase, aharonov_bohm, falling, transport, relativistic };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelPair {
    HermitianOperator hamiltonian;
    HermitianOperator time_operator;
    ModelKind kind;
    std::vector<std::string> conventions;
    std::string domain_note;
};

// T_nm = i / (E_n - E_m), T_nn = 0. Throws std::invalid_argument for a
// quasi-degenerate spectrum (min gap below 1e-12).
ModelPair build_galapon(const DiscreteSpectrum& spectrum);

// First-moment operator of the oscillator phase POVM: pi on the diagonal and
// 1 / (i (n - m)) off it, paired with H = diag(n + 1/2).
ModelPair build_phase_operator(int n_max);

// ------------------------------- momentum grid -------------------------------

struct GridWindow {
    std::size_t first = 0;  // index of the first point
    std::size_t count = 0;
};

struct MomentumGrid {
    std::vector<double> points;  // strictly increasing
    double spacing = 0.0;
    double zero_exclusion = 0.0;
    std::vector<GridWindow> windows;  // one or two uniform runs

    Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(points.size()); }
};

// Uniform grid on [p_lo, p_hi] with `points` nodes, skipping (-eps0, eps0).
// A range that straddles zero becomes two windows anchored at -eps0 and +eps0.
MomentumGrid build_momentum_grid(double p_lo, double p_hi, int points, double zero_exclusion);

HermitianOperator momentum_operator(const MomentumGrid& grid);
// Q = i d/dp: central differences, one-sided at window edges, then
// antisymmetrised so that Q is exactly Hermitian.
HermitianOperator position_operator(const MomentumGrid& grid);

struct GridModelParams {
    double mass = 1.0;       // aharonov_bohm, falling
    double gravity = 1.0;    // falling
    double velocity = 1.0;   // transport: H = velocity * P
    double rest_mass = 0.0;  // relativistic
};

ModelPair build_grid_model(ModelKind kind, const MomentumGrid& grid, const GridModelParams& params);

}  // namespace timeop
