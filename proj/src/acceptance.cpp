#include "timeop/acceptance.hpp"

#include "timeop/models.hpp"
#include "timeop/povm.hpp"
#include "timeop/report.hpp"
#include "timeop/tolerances.hpp"
#include "timeop/verification.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace timeop {

namespace {

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ResidualReport summary(std::string name) {
    ResidualReport r;
    r.check_name = std::move(name);
    return r;
}

double flag(bool ok) { return ok ? 0.0 : 1.0; }

MomentumGrid acceptance_grid(int points) { return build_momentum_grid(1.0, 9.0, points, 0.5); }

double max_abs_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

template <typename F>
double trapezoid(const std::vector<double>& t, F&& f) {
    double acc = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) acc += 0.5 * (t[k] - t[k - 1]) * (f(k - 1) + f(k));
    return acc;
}

}  // namespace

GaussianPacket acceptance_packet() { return GaussianPacket{5.0, 0.5, -2.0}; }

CriterionResult check_exact_ccr(const AcceptanceOptions&) {
    Stopwatch clock;
    CriterionResult out{1, "exact commutator on the Galapon difference domain", 0.0, 5000.0, {}};
    for (int n : {16, 64}) {
        const ModelPair pair = build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, n}));
        const auto vectors = difference_vectors(pair.hamiltonian.dim());
        const ResidualReport ccr = ccr_report(pair, vectors);

        ResidualReport r = summary("exact_ccr[N=" + std::to_string(n) + "]");
        double worst = 0.0;
        for (const auto& m : ccr.measurements) worst = std::max(worst, m.aux.at("r_plus"));
        auto& m = r.add("max_r_plus", worst, kTolerances.exact_identity);
        m.aux["pairs"] = static_cast<double>(vectors.size());
        r.notes["coefficient"] = ccr.notes.at("coefficient");
        out.reports.push_back(std::move(r));
    }
    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_spectrum(const AcceptanceOptions& options) {
    Stopwatch clock;
    CriterionResult out{2, "Galapon spectrum containment, growth and scaling", 0.0, 60000.0, {}};
    const std::vector<Eigen::Index> sizes{64, 128, 256};

    const SweepResult unit = spectrum_sweep(1.0, sizes);
    const SweepResult doubled = spectrum_sweep(2.0, sizes);
    out.reports.push_back(unit.report);
    out.reports.push_back(doubled.report);

    ResidualReport growth = summary("lambda_max_growth");
    ResidualReport scaling = summary("omega_scaling");
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const std::string tag = "[" + std::to_string(sizes[k]) + "]";
        for (const SweepResult* sweep : {&unit, &doubled}) {
            if (k == 0) continue;
            const double inc = sweep->table.rows[k].lambda_max - sweep->table.rows[k - 1].lambda_max;
            auto& m = growth.add("strict_increase[omega=" + format_double(sweep->table.omega) + "]" + tag,
                                 flag(inc > 0.0), 0.0);
            m.aux["increment"] = inc;
        }
        const double expected = unit.table.rows[k].lambda_max / 2.0;
        scaling.add("lambda_max" + tag, std::abs(doubled.table.rows[k].lambda_max - expected),
                    kTolerances.exact_identity);
    }
    out.reports.push_back(std::move(growth));
    out.reports.push_back(std::move(scaling));

    const ModelPair pair = build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, 63}));
    const RealVector ours = hermitian_eigendecomposition(pair.time_operator, "galapon T (dim 64)").eigenvalues;
    std::vector<double> theirs;
    if (options.oracle) {
        theirs = options.oracle(pair.time_operator.matrix());
    } else {
        const RealVector schur = schur_eigenvalues(pair.time_operator.matrix());
        theirs.assign(schur.data(), schur.data() + schur.size());
    }
    ResidualReport oracle = summary("eigenvalue_oracle[64]");
    oracle.notes["oracle"] = options.oracle_name;
    double diff = theirs.size() == static_cast<std::size_t>(ours.size()) ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < theirs.size() && k < static_cast<std::size_t>(ours.size()); ++k) {
        diff = std::max(diff, std::abs(theirs[k] - ours(static_cast<Eigen::Index>(k))));
    }
    oracle.add("max_abs_difference", diff, kTolerances.spectrum_containment);
    out.reports.push_back(std::move(oracle));

    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_phase_povm(const AcceptanceOptions&) {
    Stopwatch clock;
    CriterionResult out{3, "phase POVM completeness, positivity and first moment", 0.0, 30000.0, {}};
    constexpr int n_max = 32;
    const Povm povm = build_phase_povm(n_max, OutcomePartition::uniform_period(64));
    out.reports.push_back(povm_axioms_check(povm));

    const ModelPair phase = build_phase_operator(n_max);
    const HermitianOperator moment = povm_moment(povm, 1, MomentRule::exact_phase);
    ResidualReport r = summary("phase_first_moment");
    r.add("moment_vs_closed_form", (moment.matrix() - phase.time_operator.matrix()).norm(), 1e-10);

    const ModelPair galapon = build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, n_max}));
    const Eigen::Index dim = n_max + 1;
    const ComplexMatrix expected =
        std::numbers::pi * ComplexMatrix::Identity(dim, dim) - galapon.time_operator.matrix();
    r.add("phase_vs_pi_minus_galapon", max_abs_entry_diff(phase.time_operator.matrix(), expected),
          kTolerances.exact_identity);
    out.reports.push_back(std::move(r));

    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_naimark(const AcceptanceOptions&) {
    Stopwatch clock;
    CriterionResult out{4, "Naimark dilation of the phase POVM", 0.0, 30000.0, {}};
    const Povm povm = build_phase_povm(32, OutcomePartition::uniform_period(16));
    const NaimarkDilation dilation = naimark_dilate(povm);
    out.reports.push_back(dilation_check(povm, dilation));
    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_weak_weyl(const AcceptanceOptions&) {
    Stopwatch clock;
    CriterionResult out{5, "weak Weyl convergence and CCR sign for the Aharonov-Bohm pair", 0.0, 20000.0, {}};
    constexpr double t = 0.1;
    std::vector<double> residuals;
    ResidualReport sign = summary("ab_ccr_sign");
    for (int points : {200, 400}) {
        const MomentumGrid grid = acceptance_grid(points);
        const ModelPair pair = build_grid_model(ModelKind::aharonov_bohm, grid, GridModelParams{});
        const ComplexVector psi = gaussian_packet(grid, acceptance_packet());
        const ResidualReport ww = weak_weyl_residual(pair, t, psi, std::numeric_limits<double>::infinity());
        residuals.push_back(ww.at("residual").value);
        if (points == 400) {
            const std::vector<LabeledState> packet{{"packet", psi}};
            const ResidualReport ccr = ccr_report(pair, packet, 1e-2);
            const Measurement& m = ccr.measurements.front();
            auto& s = sign.add("coefficient_is_plus_i", flag(m.aux.at("sign") > 0), 0.0);
            s.aux = m.aux;
            sign.add("ccr_residual", m.value, 1e-2);
            sign.conventions = pair.conventions;
        }
    }
    ResidualReport conv = summary("weak_weyl_convergence");
    const double ratio = residuals[0] / residuals[1];
    auto& m = conv.add("ratio_shortfall", 3.0 - ratio, 0.0);
    m.aux["residual_M200"] = residuals[0];
    m.aux["residual_M400"] = residuals[1];
    m.aux["ratio"] = ratio;
    out.reports.push_back(std::move(conv));
    out.reports.push_back(std::move(sign));
    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_robertson(const AcceptanceOptions& options) {
    Stopwatch clock;
    CriterionResult out{6, "Robertson time-energy bound", 0.0, 30000.0, {}};
    std::mt19937_64 rng(options.seed);

    const MomentumGrid grid = acceptance_grid(200);
    std::vector<ModelPair> pairs;
    pairs.push_back(build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, 32})));
    pairs.push_back(build_phase_operator(32));
    pairs.push_back(build_grid_model(ModelKind::falling, grid, GridModelParams{}));
    GridModelParams transport;
    transport.velocity = 2.0;
    pairs.push_back(build_grid_model(ModelKind::transport, grid, transport));

    ResidualReport random = summary("robertson_random_states");
    for (const ModelPair& pair : pairs) {
        double worst = -std::numeric_limits<double>::infinity();
        int violations = 0;
        for (int k = 0; k < 1000; ++k) {
            const ResidualReport r = robertson_check(pair, haar_random_state(pair.hamiltonian.dim(), rng));
            worst = std::max(worst, r.measurements.front().value);
            violations += !r.passed();
        }
        auto& m = random.add("max_violation[" + std::string(to_string(pair.kind)) + "]", worst,
                             kTolerances.robertson_slack);
        m.aux["violations"] = violations;
        m.aux["states"] = 1000;
    }
    out.reports.push_back(std::move(random));

    ResidualReport diff = summary("robertson_difference_vectors");
    for (std::size_t p = 0; p < 2; ++p) {
        double rhs_err = 0.0;
        double worst = -std::numeric_limits<double>::infinity();
        for (const LabeledState& v : difference_vectors(pairs[p].hamiltonian.dim())) {
            const ResidualReport r = robertson_check(pairs[p], v.vector);
            rhs_err = std::max(rhs_err, std::abs(r.measurements.front().aux.at("rhs") - 0.5));
            worst = std::max(worst, r.measurements.front().value);
        }
        const std::string kind(to_string(pairs[p].kind));
        diff.add("rhs_minus_half[" + kind + "]", rhs_err, kTolerances.exact_identity);
        diff.add("max_violation[" + kind + "]", worst, kTolerances.robertson_slack);
    }
    out.reports.push_back(std::move(diff));
    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_arrival(const AcceptanceOptions&) {
    Stopwatch clock;
    CriterionResult out{7, "arrival-time density against the Aharonov-Bohm operator", 0.0, 20000.0, {}};
    const MomentumGrid grid = acceptance_grid(400);
    const ComplexVector psi = gaussian_packet(grid, acceptance_packet());
    const ModelPair ab = build_grid_model(ModelKind::aharonov_bohm, grid, GridModelParams{});

    std::vector<double> times;
    for (int k = 0; k <= 6000; ++k) times.push_back(-3.0 + 1e-3 * k);
    const std::vector<double> density = arrival_density(grid, to_grid_amplitudes(psi, grid), 1.0, times);

    const double mass = trapezoid(times, [&](std::size_t k) { return density[k]; });
    const double first = trapezoid(times, [&](std::size_t k) { return times[k] * density[k]; });
    const double expectation = psi.dot(ab.time_operator.matrix() * psi).real();
    double min_density = density.front();
    for (double d : density) min_density = std::min(min_density, d);

    ResidualReport r = summary("arrival_density");
    r.add("normalization", std::abs(mass - 1.0), 1e-3).aux["integral"] = mass;
    auto& m = r.add("first_moment_relative", std::abs(first - expectation) / std::abs(expectation), 1e-2);
    m.aux["first_moment"] = first;
    m.aux["ab_expectation"] = expectation;
    r.add("negativity", -min_density, 0.0);
    r.conventions = {"state amplitude restored inside the momentum integrals",
                     "phase exponent t p^2 / 2m, matching H = P^2 / 2m"};
    out.reports.push_back(std::move(r));
    out.runtime_ms = clock.elapsed_ms();
    return out;
}

CriterionResult check_weyl(const AcceptanceOptions& options) {
    Stopwatch clock;
    CriterionResult out{8, "Weyl relation zero cases and transport refinement", 0.0,
                        std::numeric_limits<double>::infinity(), {}};
    std::mt19937_64 rng(options.seed + 8);

    const MomentumGrid grid = acceptance_grid(100);
    GridModelParams relativistic;
    relativistic.rest_mass = 1.0;
    std::vector<ModelPair> pairs;
    pairs.push_back(build_galapon(make_discrete_spectrum(HarmonicSpectrum{1.0, 16})));
    pairs.push_back(build_phase_operator(16));
    pairs.push_back(build_grid_model(ModelKind::aharonov_bohm, grid, GridModelParams{}));
    pairs.push_back(build_grid_model(ModelKind::falling, grid, GridModelParams{}));
    pairs.push_back(build_grid_model(ModelKind::transport, grid, GridModelParams{}));
    pairs.push_back(build_grid_model(ModelKind::relativistic, grid, relativistic));

    ResidualReport zero = summary("weyl_zero_cases");
    const std::pair<double, double> cases[] = {{0.0, 0.7}, {0.7, 0.0}, {0.0, 0.0}};
    for (const ModelPair& pair : pairs) {
        const ComplexVector psi = haar_random_state(pair.hamiltonian.dim(), rng);
        for (const auto& [s, t] : cases) {
            const ResidualReport r = weyl_relation_residual(pair, s, t, psi, kTolerances.zero_parameter);
            zero.add(std::string(to_string(pair.kind)) + "(s=" + format_double(s) + ",t=" + format_double(t) + ")",
                     r.measurements.front().value, kTolerances.zero_parameter);
        }
    }
    out.reports.push_back(std::move(zero));

    ResidualReport refine = summary("weyl_transport_refinement");
    std::vector<double> residuals;
    for (int points : {200, 400}) {
        const MomentumGrid g = acceptance_grid(points);
        const ModelPair pair = build_grid_model(ModelKind::transport, g, GridModelParams{});
        const ResidualReport r = weyl_relation_residual(pair, 0.3, 0.3, gaussian_packet(g, acceptance_packet()));
        residuals.push_back(r.measurements.front().value);
    }
    auto& m = refine.add("not_decreasing", flag(residuals[1] < residuals[0]), 0.0);
    m.aux["increase"] = residuals[1] - residuals[0];
    m.aux["residual_M200"] = residuals[0];
    m.aux["residual_M400"] = residuals[1];
    refine.add("residual_M400", residuals[1], 1e-2);
    out.reports.push_back(std::move(refine));

    out.runtime_ms = clock.elapsed_ms();
    return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    return {check_exact_ccr(options), check_spectrum(options),  check_phase_povm(options),
            check_naimark(options),   check_weak_weyl(options), check_robertson(options),
            check_arrival(options),   check_weyl(options)};
}

}  // namespace timeop
