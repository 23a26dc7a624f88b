#include "timeop/states.hpp"

#include <cmath>
#include <stdexcept>

namespace timeop {

std::vector<LabeledState> difference_vectors(Eigen::Index dim) {
    if (dim < 2) throw std::invalid_argument("difference_vectors: dim must be >= 2");
    std::vector<LabeledState> out;
    out.reserve(static_cast<std::size_t>(dim * (dim - 1) / 2));
    const double amp = 1.0 / std::sqrt(2.0);
    for (Eigen::Index k = 0; k < dim; ++k) {
        for (Eigen::Index l = k + 1; l < dim; ++l) {
            ComplexVector v = ComplexVector::Zero(dim);
            v(k) = amp;
            v(l) = -amp;
            out.push_back({"e" + std::to_string(k) + "-e" + std::to_string(l), std::move(v)});
        }
    }
    return out;
}

std::vector<LabeledState> basis_vectors(Eigen::Index dim) {
    std::vector<LabeledState> out;
    for (Eigen::Index k = 0; k < dim; ++k) {
        out.push_back({"e" + std::to_string(k), ComplexVector::Unit(dim, k)});
    }
    return out;
}

ComplexVector haar_random_state(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(k) = Complex(re, im);
    }
    return v / v.norm();
}

ComplexVector gaussian_packet(const MomentumGrid& grid, const GaussianPacket& packet) {
    if (!(packet.width > 0.0)) throw std::invalid_argument("gaussian_packet: width must be positive");
    ComplexVector v(grid.size());
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
        const double p = grid.points[static_cast<std::size_t>(j)];
        const double d = p - packet.p0;
        v(j) = std::polar(std::exp(-d * d / (4.0 * packet.width * packet.width)), -p * packet.x0);
    }
    const double norm = v.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("gaussian_packet: packet vanishes on the grid");
    return v / norm;
}

ComplexVector to_grid_amplitudes(const ComplexVector& state, const MomentumGrid& grid) {
    return state / std::sqrt(grid.spacing);
}

}  // namespace timeop
