#include "timeop/povm.hpp"
#include "timeop/tolerances.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace timeop {

std::vector<double> arrival_density(const MomentumGrid& grid, const ComplexVector& amplitudes, double mass,
                                    std::span<const double> times) {
    if (times.empty()) throw std::invalid_argument("arrival_density: empty time vector");
    if (!(mass > 0.0)) throw std::invalid_argument("arrival_density: mass must be positive");
    if (amplitudes.size() != grid.size() || grid.size() == 0) {
        throw std::invalid_argument("arrival_density: amplitudes do not match the grid");
    }
    const double dp = grid.spacing;
    const double norm2 = amplitudes.squaredNorm() * dp;
    if (std::abs(norm2 - 1.0) > kTolerances.state_normalization) {
        throw std::invalid_argument("arrival_density: state is not normalised (dp-weighted norm^2 = " +
                                    std::to_string(norm2) + ")");
    }

    // Per-point weights dp*sqrt(|p|/m)*psi(p) and phase rates p^2/2m.
    const Eigen::Index n = grid.size();
    ComplexVector weight(n);
    RealVector rate(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double p = grid.points[static_cast<std::size_t>(j)];
        if (p == 0.0) throw std::invalid_argument("arrival_density: grid contains p = 0");
        weight(j) = dp * std::sqrt(std::abs(p) / mass) * amplitudes(j);
        rate(j) = p * p / (2.0 * mass);
    }

    std::vector<double> density(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        Complex right(0.0, 0.0);
        Complex left(0.0, 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex term = std::polar(1.0, t * rate(j)) * weight(j);
            if (grid.points[static_cast<std::size_t>(j)] > 0.0) {
                right += term;
            } else {
                left += term;
            }
        }
        density[k] = (std::norm(right) + std::norm(left)) / (2.0 * std::numbers::pi);
    }
    return density;
}

}  // namespace timeop
