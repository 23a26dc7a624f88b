// povm.hpp: binned POVMs, moments, Naimark dilation, arrival-time density
#pragma once

#include "timeop/models.hpp"
#include "timeop/operator_core.hpp"
#include "timeop/residual_report.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace timeop {

class OutcomePartition {
public:
    // Edges must be finite and strictly increasing, at least two of them.
    static OutcomePartition from_edges(std::vector<double> edges);
    static OutcomePartition uniform(double t_lo, double t_hi, std::size_t bins);
    // Uniform partition of [0, 2pi] whose last edge is exactly 2*pi.
    static OutcomePartition uniform_period(std::size_t bins);

    double t_lo() const noexcept { return edges_.front(); }
    double t_hi() const noexcept { return edges_.back(); }
    std::size_t bins() const noexcept { return edges_.size() - 1; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    double lower(std::size_t bin) const { return edges_.at(bin); }
    double upper(std::size_t bin) const { return edges_.at(bin + 1); }
    double midpoint(std::size_t bin) const { return 0.5 * (lower(bin) + upper(bin)); }

private:
    explicit OutcomePartition(std::vector<double> edges) : edges_(std::move(edges)) {}
    std::vector<double> edges_;
};

struct PovmConstruction {
    std::string description;
    std::optional<int> phase_n_max;  // set only for the oscillator phase POVM
};

struct Povm {
    OutcomePartition partition;
    std::vector<HermitianOperator> elements;  // one per bin
    PovmConstruction construction;

    Eigen::Index dim() const { return elements.front().dim(); }
};

// Validates element count against the partition and common dimension.
Povm make_povm(OutcomePartition partition, std::vector<HermitianOperator> elements, PovmConstruction construction);

// F([a,b])_nm = (1/2pi) int_a^b e^{i(n-m)t} dt in closed form. The partition
// must span exactly [0, 2pi].
Povm build_phase_povm(int n_max, const OutcomePartition& partition);

// Sums the elements of bins j and j+1 and drops the shared edge.
Povm merge_adjacent_bins(const Povm& povm, std::size_t j);

// Completeness ||sum F_j - I||_F, worst hermiticity defect and the most negative
// bin eigenvalue (gated as -min_eigenvalue).
ResidualReport povm_axioms_check(const Povm& povm);

enum class MomentRule { midpoint, exact_phase };

// order 1 or 2. midpoint: sum_j c_j^order F_j. exact_phase: per-bin closed-form
// integrals (1/2pi) int t^order e^{i(n-m)t} dt, valid only for phase POVMs.
HermitianOperator povm_moment(const Povm& povm, int order, MomentRule rule);

// Block selector on the dilation space C^{dim*K}: identity on slot `slot`,
// zero elsewhere. Stored as its 0/1 diagonal.
struct SlotProjector {
    Eigen::Index slot = 0;
    Eigen::Index block_dim = 0;
    Eigen::Index slots = 0;

    RealVector diagonal() const;
    ComplexMatrix dense() const;
};

struct NaimarkDilation {
    ComplexMatrix isometry;  // (dim*K) x dim, blocks sqrt(F_j)
    std::vector<SlotProjector> projectors;
    std::vector<double> reconstruction_errors;  // ||V* E_j V - F_j||_F
    double isometry_defect = 0.0;               // ||V* V - I||_F
};

// Incomplete or non-Hermitian families throw std::invalid_argument; a bin below
// the PSD floor throws NotPositiveSemidefinite from psd_sqrt.
NaimarkDilation naimark_dilate(const Povm& povm);

// Structural report on a dilation: isometry, projector algebra, reconstruction.
ResidualReport dilation_check(const Povm& povm, const NaimarkDilation& dilation);

// Time-of-arrival density of a free particle,
//   Pi(t) = (1/2pi) [ |sum_{p>0} dp sqrt(p/m) e^{i t p^2/2m} psi(p)|^2
//                   + |sum_{p<0} dp sqrt(-p/m) e^{i t p^2/2m} psi(p)|^2 ].
// `amplitudes` must be normalised with the dp-weighted norm.
std::vector<double> arrival_density(const MomentumGrid& grid, const ComplexVector& amplitudes, double mass,
                                    std::span<const double> times);

}  // namespace timeop
