#include "timeop/models.hpp"

#include "timeop/tolerances.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace timeop {

namespace {

void fill_summability(DiscreteSpectrum& s) {
    const std::size_t n = s.energies.size();
    std::vector<double> terms(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double e = s.energies[k];
        terms[k] = e == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (e * e);
    }
    const std::size_t tail = std::max<std::size_t>(1, n / 4);
    double head_sum = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        total += terms[k];
        if (k + tail < n) head_sum += terms[k];
    }
    s.summability_estimate = total;
    if (!std::isfinite(total) || head_sum <= 0.0) {
        s.summability_warning = true;
        return;
    }
    s.summability_warning = (total - head_sum) / head_sum > kTolerances.summability_growth;
}

}  // namespace

DiscreteSpectrum make_discrete_spectrum(const SpectrumDescriptor& descriptor) {
    DiscreteSpectrum s;
    if (const auto* h = std::get_if<HarmonicSpectrum>(&descriptor)) {
        if (!(h->omega > 0.0) || !std::isfinite(h->omega)) {
            throw std::invalid_argument("harmonic spectrum: omega must be a positive finite number");
        }
        if (h->n_max < 1) throw std::invalid_argument("harmonic spectrum: n_max must be >= 1");
        s.omega = h->omega;
        s.energies.resize(static_cast<std::size_t>(h->n_max) + 1);
        for (int n = 0; n <= h->n_max; ++n) s.energies[static_cast<std::size_t>(n)] = h->omega * (n + 0.5);
    } else {
        s.energies = std::get<ExplicitSpectrum>(descriptor).energies;
        if (s.energies.size() < 2) throw std::invalid_argument("explicit spectrum: need at least two levels");
    }

    s.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.energies.size(); ++k) {
        if (!std::isfinite(s.energies[k])) throw std::invalid_argument("spectrum: non-finite level");
        if (k == 0) continue;
        const double gap = s.energies[k] - s.energies[k - 1];
        if (!(gap > 0.0)) {
            std::ostringstream os;
            os << "spectrum: levels must be strictly increasing (E_" << k - 1 << " = " << s.energies[k - 1]
               << ", E_" << k << " = " << s.energies[k] << ")";
            throw std::invalid_argument(os.str());
        }
        s.min_gap = std::min(s.min_gap, gap);
    }
    fill_summability(s);
    return s;
}

HermitianOperator discrete_hamiltonian(const DiscreteSpectrum& spectrum) {
    return HermitianOperator::diagonal(Eigen::Map<const RealVector>(spectrum.energies.data(), spectrum.dim()));
}

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::galapon: return "galapon";
        case ModelKind::phase: return "phase";
        case ModelKind::aharonov_bohm: return "aharonov_bohm";
        case ModelKind::falling: return "falling";
        case ModelKind::transport: return "transport";
        case ModelKind::relativistic: return "relativistic";
    }
    return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    for (ModelKind k : {ModelKind::galapon, ModelKind::phase, ModelKind::aharonov_bohm, ModelKind::falling,
                        ModelKind::transport, ModelKind::relativistic}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

ModelPair build_galapon(const DiscreteSpectrum& spectrum) {
    if (spectrum.dim() < 2) throw std::invalid_argument("build_galapon: need at least two levels");
    if (spectrum.min_gap < kTolerances.min_spectral_gap) {
        std::ostringstream os;
        os << "build_galapon: quasi-degenerate spectrum (min gap " << spectrum.min_gap << " < "
           << kTolerances.min_spectral_gap << ")";
        throw std::invalid_argument(os.str());
    }
    const Eigen::Index n = spectrum.dim();
    ComplexMatrix t = ComplexMatrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            if (r == c) continue;
            const double de = spectrum.energies[static_cast<std::size_t>(r)] - spectrum.energies[static_cast<std::size_t>(c)];
            t(r, c) = Complex(0.0, 1.0 / de);
        }
    }
    return ModelPair{discrete_hamiltonian(spectrum), HermitianOperator::from_matrix(std::move(t)),
                     ModelKind::galapon, {}, "span{e_k - e_l : 0 <= k < l <= N}"};
}

ModelPair build_phase_operator(int n_max) {
    if (n_max < 1) throw std::invalid_argument("build_phase_operator: n_max must be >= 1");
    const Eigen::Index n = n_max + 1;
    ComplexMatrix t(n, n);
    RealVector levels(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        levels(r) = static_cast<double>(r) + 0.5;
        for (Eigen::Index c = 0; c < n; ++c) {
            t(r, c) = r == c ? Complex(std::numbers::pi, 0.0)
                             : Complex(0.0, -1.0 / static_cast<double>(r - c));  // 1 / (i (r - c))
        }
    }
    return ModelPair{HermitianOperator::diagonal(levels),
                     HermitianOperator::from_matrix(std::move(t)),
                     ModelKind::phase,
                     {"T = pi*I - T_galapon(omega=1); commutator coefficient on e_k - e_l is -i"},
                     "span{e_k - e_l : 0 <= k < l <= n_max}"};
}

// ------------------------------- momentum grid -------------------------------

MomentumGrid build_momentum_grid(double p_lo, double p_hi, int points, double zero_exclusion) {
    if (points < 8) throw std::invalid_argument("momentum grid: need at least 8 points");
    if (!(zero_exclusion > 0.0)) {
        throw std::invalid_argument("momentum grid: zero exclusion must be positive (P^-1 undefined at 0)");
    }
    if (!(p_lo < p_hi) || !std::isfinite(p_lo) || !std::isfinite(p_hi)) {
        throw std::invalid_argument("momentum grid: need finite p_lo < p_hi");
    }
    const double eps0 = zero_exclusion;
    auto inside_exclusion = [eps0](double p) { return std::abs(p) < eps0; };
    if (inside_exclusion(p_lo) || inside_exclusion(p_hi)) {
        throw std::invalid_argument("momentum grid: window intersects the zero-exclusion zone");
    }

    MomentumGrid g;
    g.zero_exclusion = eps0;
    const auto m = static_cast<std::size_t>(points);
    g.points.resize(m);

    if (p_lo >= eps0 || p_hi <= -eps0) {
        g.spacing = (p_hi - p_lo) / static_cast<double>(m - 1);
        for (std::size_t k = 0; k < m; ++k) g.points[k] = p_lo + static_cast<double>(k) * g.spacing;
        g.points.back() = p_hi;
        g.windows = {GridWindow{0, m}};
        return g;
    }

    // Two windows [p_lo, -eps0] and [eps0, p_hi] sharing one spacing.
    const double len_neg = -eps0 - p_lo;
    const double len_pos = p_hi - eps0;
    g.spacing = (len_neg + len_pos) / static_cast<double>(m - 2);
    const double steps_neg = len_neg / g.spacing;
    const double rounded = std::round(steps_neg);
    if (std::abs(steps_neg - rounded) > 1e-9 * std::max(1.0, steps_neg)) {
        throw std::invalid_argument("momentum grid: window lengths are incommensurate with the point count");
    }
    const auto n_neg = static_cast<std::size_t>(rounded) + 1;
    const std::size_t n_pos = m - n_neg;
    if (n_neg < 2 || n_pos < 2) throw std::invalid_argument("momentum grid: each window needs at least two points");

    // Anchored at +-eps0 so that a symmetric request yields an exactly mirrored grid.
    for (std::size_t k = 0; k < n_neg; ++k) {
        g.points[k] = -eps0 - static_cast<double>(n_neg - 1 - k) * g.spacing;
    }
    for (std::size_t k = 0; k < n_pos; ++k) g.points[n_neg + k] = eps0 + static_cast<double>(k) * g.spacing;
    g.windows = {GridWindow{0, n_neg}, GridWindow{n_neg, n_pos}};
    return g;
}

HermitianOperator momentum_operator(const MomentumGrid& grid) {
    return HermitianOperator::diagonal(Eigen::Map<const RealVector>(grid.points.data(), grid.size()));
}

HermitianOperator position_operator(const MomentumGrid& grid) {
    const Eigen::Index n = grid.size();
    const double h = grid.spacing;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (const GridWindow& w : grid.windows) {
        const auto lo = static_cast<Eigen::Index>(w.first);
        const auto hi = static_cast<Eigen::Index>(w.first + w.count) - 1;
        for (Eigen::Index j = lo; j <= hi; ++j) {
            if (j == lo) {
                d(j, j) = -1.0 / h;
                d(j, j + 1) = 1.0 / h;
            } else if (j == hi) {
                d(j, j - 1) = -1.0 / h;
                d(j, j) = 1.0 / h;
            } else {
                d(j, j - 1) = -0.5 / h;
                d(j, j + 1) = 0.5 / h;
            }
        }
    }
    const Eigen::MatrixXd antisym = 0.5 * (d - d.transpose());
    return HermitianOperator::from_matrix(Complex(0.0, 1.0) * antisym.cast<Complex>());
}

ModelPair build_grid_model(ModelKind kind, const MomentumGrid& grid, const GridModelParams& params) {
    if (grid.points.empty()) throw std::invalid_argument("grid model: empty grid");
    for (double p : grid.points) {
        if (std::abs(p) < grid.zero_exclusion || p == 0.0) throw std::invalid_argument("grid model: singular P");
    }

    const Eigen::Index n = grid.size();
    const Eigen::Map<const RealVector> p(grid.points.data(), n);
    const ComplexMatrix q = position_operator(grid).matrix();
    const ComplexVector p_inv = p.cwiseInverse().cast<Complex>();

    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("grid model: ") + what);
    };

    switch (kind) {
        case ModelKind::aharonov_bohm: {
            const double m = params.mass;
            require(m > 0.0, "mass must be positive");
            const RealVector energy = p.array().square() / (2.0 * m);
            ComplexMatrix t = (0.5 * m) * (q * p_inv.asDiagonal() + p_inv.asDiagonal() * q);
            return ModelPair{HermitianOperator::diagonal(energy),
                             HermitianOperator::from_matrix(std::move(t)),
                             kind,
                             {"T = (m/2)(Q P^-1 + P^-1 Q); the 1/(2m) prefactor variant is dimensionally "
                              "inconsistent and gives no +i commutator with H = P^2/2m"},
                             "interior-supported states on the momentum grid, away from p = 0"};
        }
        case ModelKind::falling: {
            const double m = params.mass;
            const double g = params.gravity;
            require(m > 0.0, "mass must be positive");
            require(g > 0.0, "gravity must be positive");
            ComplexMatrix h = (p.array().square() / (2.0 * m)).matrix().cast<Complex>().asDiagonal();
            h -= (m * g) * q;
            const RealVector t = p / (m * g);
            return ModelPair{HermitianOperator::from_matrix(std::move(h)), HermitianOperator::diagonal(t), kind, {},
                             "interior-supported states on the momentum grid"};
        }
        case ModelKind::transport: {
            const double a = params.velocity;
            require(a != 0.0 && std::isfinite(a), "transport velocity a must be non-zero");
            return ModelPair{HermitianOperator::diagonal(a * p), HermitianOperator::from_matrix(q / a), kind, {},
                             "interior-supported states on the momentum grid"};
        }
        case ModelKind::relativistic: {
            const double m0 = params.rest_mass;
            require(m0 >= 0.0, "rest mass must be non-negative");
            const RealVector energy = (p.array().square() + m0 * m0).sqrt();
            const ComplexVector ratio = (energy.array() / p.array()).matrix().cast<Complex>();  // H P^-1
            ComplexMatrix t = 0.5 * (ratio.asDiagonal() * q + q * ratio.asDiagonal());
            return ModelPair{HermitianOperator::diagonal(energy),
                             HermitianOperator::from_matrix(std::move(t)),
                             kind,
                             {"T = (H P^-1 Q + Q P^-1 H)/2; without the factor 1/2 the commutator is 2i",
                              "classified as weak-Weyl type; the type-1 label sometimes attached to it is not used"},
                             "interior-supported states on the momentum grid, away from p = 0"};
        }
        case ModelKind::galapon:
        case ModelKind::phase:
            break;
    }
    throw std::invalid_argument("grid model: kind '" + std::string(to_string(kind)) + "' is not a grid model");
}

}  // namespace timeop
