// states.hpp: test-state factories
#pragma once

#include "timeop/models.hpp"
#include "timeop/operator_core.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace timeop {

struct LabeledState {
    std::string label;
    ComplexVector vector;  // unit Euclidean norm
};

// (e_k - e_l)/sqrt(2) for every 0 <= k < l < dim, in lexicographic (k, l) order.
std::vector<LabeledState> difference_vectors(Eigen::Index dim);
std::vector<LabeledState> basis_vectors(Eigen::Index dim);

// Complex standard normal components, normalised: uniform on the unit sphere.
ComplexVector haar_random_state(Eigen::Index dim, std::mt19937_64& rng);

struct GaussianPacket {
    double p0 = 5.0;     // mean momentum
    double width = 0.5;  // standard deviation of |psi(p)|^2
    double x0 = 0.0;     // mean position, through the phase exp(-i p x0)
};

// psi_j ∝ exp(-(p_j - p0)^2 / (4 width^2)) exp(-i p_j x0), unit Euclidean norm.
ComplexVector gaussian_packet(const MomentumGrid& grid, const GaussianPacket& packet);

// Euclidean-normalised state <-> amplitudes normalised with the dp-weighted norm.
ComplexVector to_grid_amplitudes(const ComplexVector& state, const MomentumGrid& grid);

}  // namespace timeop
