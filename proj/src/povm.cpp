#include "timeop/povm.hpp"

#include "timeop/tolerances.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace timeop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{i delta t} for integer delta; both ends of the period map to exactly 1.
Complex unit_phase(long delta, double t) {
    if (t == 0.0 || t == kTwoPi) return Complex(1.0, 0.0);
    return std::polar(1.0, static_cast<double>(delta) * t);
}

void require_full_period(const OutcomePartition& partition, const char* who) {
    if (partition.t_lo() != 0.0 || partition.t_hi() != kTwoPi) {
        throw std::invalid_argument(std::string(who) + ": partition must span exactly [0, 2pi]");
    }
}

// Antiderivative G of (1/2pi) t^order e^{i delta t}, evaluated at t.
Complex phase_antiderivative(long delta, int order, double t) {
    if (delta == 0) return Complex(std::pow(t, order + 1) / ((order + 1) * kTwoPi), 0.0);
    const double d = static_cast<double>(delta);
    const Complex i(0.0, 1.0);
    const Complex e = unit_phase(delta, t);
    Complex poly;
    switch (order) {
        case 0: poly = 1.0 / (i * d); break;
        case 1: poly = t / (i * d) + 1.0 / (d * d); break;
        case 2: poly = t * t / (i * d) + 2.0 * t / (d * d) - 2.0 / (i * d * d * d); break;
        default: throw std::invalid_argument("phase moment: order must be 0, 1 or 2");
    }
    return e * poly / kTwoPi;
}

// (1/2pi) int_a^b t^order e^{i(n-m)t} dt for all n, m <= n_max.
ComplexMatrix phase_bin_integral(int n_max, int order, double a, double b) {
    const Eigen::Index n = n_max + 1;
    ComplexMatrix out(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r; c < n; ++c) {
            const long delta = static_cast<long>(r - c);
            const Complex v = phase_antiderivative(delta, order, b) - phase_antiderivative(delta, order, a);
            out(r, c) = v;
            out(c, r) = std::conj(v);
        }
        out(r, r) = Complex(out(r, r).real(), 0.0);
    }
    return out;
}

}  // namespace

// ------------------------------ OutcomePartition ------------------------------

OutcomePartition OutcomePartition::from_edges(std::vector<double> edges) {
    if (edges.size() < 2) throw std::invalid_argument("partition: need at least two edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (!std::isfinite(edges[k])) throw std::invalid_argument("partition: non-finite edge");
        if (k > 0 && !(edges[k] > edges[k - 1])) {
            throw std::invalid_argument("partition: edges must be strictly increasing");
        }
    }
    return OutcomePartition(std::move(edges));
}

OutcomePartition OutcomePartition::uniform(double t_lo, double t_hi, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("partition: need at least one bin");
    std::vector<double> edges(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) {
        edges[k] = t_lo + (t_hi - t_lo) * static_cast<double>(k) / static_cast<double>(bins);
    }
    edges.front() = t_lo;
    edges.back() = t_hi;
    return from_edges(std::move(edges));
}

OutcomePartition OutcomePartition::uniform_period(std::size_t bins) { return uniform(0.0, kTwoPi, bins); }

// ------------------------------------ Povm ------------------------------------

Povm make_povm(OutcomePartition partition, std::vector<HermitianOperator> elements, PovmConstruction construction) {
    if (elements.size() != partition.bins()) {
        throw std::invalid_argument("povm: " + std::to_string(elements.size()) + " elements for " +
                                    std::to_string(partition.bins()) + " bins");
    }
    for (const auto& e : elements) {
        if (e.dim() != elements.front().dim()) throw std::invalid_argument("povm: elements differ in dimension");
    }
    return Povm{std::move(partition), std::move(elements), std::move(construction)};
}

Povm build_phase_povm(int n_max, const OutcomePartition& partition) {
    if (n_max < 1) throw std::invalid_argument("build_phase_povm: n_max must be >= 1");
    require_full_period(partition, "build_phase_povm");
    std::vector<HermitianOperator> elements;
    elements.reserve(partition.bins());
    for (std::size_t j = 0; j < partition.bins(); ++j) {
        elements.push_back(
            HermitianOperator::from_matrix(phase_bin_integral(n_max, 0, partition.lower(j), partition.upper(j))));
    }
    return make_povm(partition, std::move(elements),
                     PovmConstruction{"oscillator phase POVM, n_max=" + std::to_string(n_max), n_max});
}

Povm merge_adjacent_bins(const Povm& povm, std::size_t j) {
    if (j + 1 >= povm.partition.bins()) throw std::invalid_argument("merge_adjacent_bins: bin index out of range");
    std::vector<double> edges = povm.partition.edges();
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    std::vector<HermitianOperator> elements;
    for (std::size_t k = 0; k < povm.elements.size(); ++k) {
        if (k == j) {
            elements.push_back(
                HermitianOperator::from_matrix(povm.elements[k].matrix() + povm.elements[k + 1].matrix()));
            ++k;
        } else {
            elements.push_back(povm.elements[k]);
        }
    }
    return make_povm(OutcomePartition::from_edges(std::move(edges)), std::move(elements), povm.construction);
}

ResidualReport povm_axioms_check(const Povm& povm) {
    const Eigen::Index n = povm.dim();
    ComplexMatrix total = ComplexMatrix::Zero(n, n);
    double worst_defect = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    std::size_t worst_bin = 0;
    for (std::size_t j = 0; j < povm.elements.size(); ++j) {
        const ComplexMatrix& f = povm.elements[j].matrix();
        total += f;
        worst_defect = std::max(worst_defect, hermiticity_defect(f));
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(f, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("povm_axioms_check: eigenvalues of bin " + std::to_string(j) + " did not converge");
        }
        if (solver.eigenvalues()(0) < min_eig) {
            min_eig = solver.eigenvalues()(0);
            worst_bin = j;
        }
    }

    ResidualReport report;
    report.check_name = "povm_axioms";
    report.context["construction"] = povm.construction.description;
    report.context["bins"] = std::to_string(povm.partition.bins());
    report.context["dim"] = std::to_string(n);
    report.add("completeness", (total - ComplexMatrix::Identity(n, n)).norm(), kTolerances.povm_completeness);
    report.add("hermiticity", worst_defect, kTolerances.povm_hermiticity);
    auto& pos = report.add("negativity", -min_eig, kTolerances.povm_positivity);
    pos.aux["min_eigenvalue"] = min_eig;
    pos.aux["bin"] = static_cast<double>(worst_bin);
    return report;
}

HermitianOperator povm_moment(const Povm& povm, int order, MomentRule rule) {
    if (order != 1 && order != 2) throw std::invalid_argument("povm_moment: order must be 1 or 2");
    const Eigen::Index n = povm.dim();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    const OutcomePartition& part = povm.partition;

    if (rule == MomentRule::midpoint) {
        for (std::size_t j = 0; j < part.bins(); ++j) {
            out += std::pow(part.midpoint(j), order) * povm.elements[j].matrix();
        }
    } else {
        if (!povm.construction.phase_n_max) {
            throw std::invalid_argument("povm_moment: exact_phase rule requires a phase POVM");
        }
        require_full_period(part, "povm_moment");
        for (std::size_t j = 0; j < part.bins(); ++j) {
            out += phase_bin_integral(*povm.construction.phase_n_max, order, part.lower(j), part.upper(j));
        }
    }
    return HermitianOperator::from_matrix(std::move(out));
}

// ------------------------------ Naimark dilation ------------------------------

RealVector SlotProjector::diagonal() const {
    RealVector d = RealVector::Zero(block_dim * slots);
    d.segment(slot * block_dim, block_dim).setOnes();
    return d;
}

ComplexMatrix SlotProjector::dense() const { return diagonal().cast<Complex>().asDiagonal(); }

NaimarkDilation naimark_dilate(const Povm& povm) {
    const ResidualReport axioms = povm_axioms_check(povm);
    if (!axioms.at("completeness").passed() || !axioms.at("hermiticity").passed()) {
        throw std::invalid_argument("naimark_dilate: elements are not a complete Hermitian family");
    }

    const Eigen::Index n = povm.dim();
    const auto k = static_cast<Eigen::Index>(povm.elements.size());
    NaimarkDilation out;
    out.isometry = ComplexMatrix::Zero(n * k, n);
    for (Eigen::Index j = 0; j < k; ++j) {
        out.isometry.middleRows(j * n, n) = psd_sqrt(povm.elements[static_cast<std::size_t>(j)]).matrix();
        out.projectors.push_back(SlotProjector{j, n, k});
    }
    out.isometry_defect = (out.isometry.adjoint() * out.isometry - ComplexMatrix::Identity(n, n)).norm();
    for (Eigen::Index j = 0; j < k; ++j) {
        const RealVector mask = out.projectors[static_cast<std::size_t>(j)].diagonal();
        const ComplexMatrix compressed = out.isometry.adjoint() * mask.cast<Complex>().asDiagonal() * out.isometry;
        out.reconstruction_errors.push_back((compressed - povm.elements[static_cast<std::size_t>(j)].matrix()).norm());
    }
    return out;
}

ResidualReport dilation_check(const Povm& povm, const NaimarkDilation& dilation) {
    ResidualReport report;
    report.check_name = "naimark_dilation";
    report.context["construction"] = povm.construction.description;
    report.context["bins"] = std::to_string(povm.partition.bins());

    report.add("isometry", dilation.isometry_defect, kTolerances.dilation_isometry);

    const Eigen::Index big = dilation.isometry.rows();
    RealVector sum = RealVector::Zero(big);
    double idempotency = 0.0;
    double orthogonality = 0.0;
    std::vector<RealVector> masks;
    for (const auto& proj : dilation.projectors) masks.push_back(proj.diagonal());
    for (std::size_t j = 0; j < masks.size(); ++j) {
        sum += masks[j];
        idempotency = std::max(idempotency, (masks[j].cwiseProduct(masks[j]) - masks[j]).cwiseAbs().maxCoeff());
        for (std::size_t l = j + 1; l < masks.size(); ++l) {
            orthogonality = std::max(orthogonality, masks[j].cwiseProduct(masks[l]).cwiseAbs().maxCoeff());
        }
    }
    report.add("projector_idempotency", idempotency, 0.0);
    report.add("projector_orthogonality", orthogonality, 0.0);
    report.add("projector_completeness", (sum - RealVector::Ones(big)).cwiseAbs().maxCoeff(), 0.0);

    double worst = 0.0;
    for (double e : dilation.reconstruction_errors) worst = std::max(worst, e);
    report.add("reconstruction", worst, kTolerances.dilation_reconstruction);
    return report;
}

}  // namespace timeop
