#include "timeop/verification.hpp"

#include "timeop/report.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace timeop {

namespace {

void require_state(const ModelPair& pair, const ComplexVector& psi, const char* who) {
    if (psi.size() != pair.hamiltonian.dim()) {
        throw std::invalid_argument(std::string(who) + ": state dimension " + std::to_string(psi.size()) +
                                    " does not match model dimension " + std::to_string(pair.hamiltonian.dim()));
    }
    if (std::abs(psi.norm() - 1.0) > kTolerances.state_normalization) {
        throw std::invalid_argument(std::string(who) + ": state is not normalised");
    }
}

void describe(ResidualReport& report, const ModelPair& pair) {
    report.context["model"] = std::string(to_string(pair.kind));
    report.context["dim"] = std::to_string(pair.hamiltonian.dim());
    report.conventions = pair.conventions;
}

}  // namespace

ResidualReport ccr_report(const ModelPair& pair, std::span<const LabeledState> vectors, double tolerance) {
    const ComplexMatrix c = commutator(pair.time_operator, pair.hamiltonian);
    const Complex i(0.0, 1.0);

    ResidualReport report;
    report.check_name = "ccr";
    describe(report, pair);
    report.context["vectors"] = std::to_string(vectors.size());

    int plus = 0;
    int minus = 0;
    for (const LabeledState& s : vectors) {
        require_state(pair, s.vector, "ccr_report");
        const ComplexVector cv = c * s.vector;
        const double r_plus = (cv - i * s.vector).norm();
        const double r_minus = (cv + i * s.vector).norm();
        const int sign = r_plus < r_minus ? 1 : (r_minus < r_plus ? -1 : 0);
        plus += sign > 0;
        minus += sign < 0;
        auto& m = report.add(s.label, std::min(r_plus, r_minus), tolerance);
        m.aux["r_plus"] = r_plus;
        m.aux["r_minus"] = r_minus;
        m.aux["sign"] = sign;
        m.aux["coefficient_im"] = s.vector.dot(cv).imag();
    }
    const auto n = static_cast<int>(vectors.size());
    report.notes["coefficient"] = plus == n ? "+i" : (minus == n ? "-i" : (plus + minus == 0 ? "none" : "mixed"));
    return report;
}

ResidualReport weak_weyl_residual(const ModelPair& pair, double t, const ComplexVector& psi, double tolerance) {
    require_state(pair, psi, "weak_weyl_residual");
    const ComplexMatrix& time = pair.time_operator.matrix();
    const ComplexMatrix u = unitary_exponential(pair.hamiltonian, -t, "H").matrix;

    const ComplexVector t_psi = time * psi;
    const ComplexVector lhs = time * (u * psi);
    const double residual = (lhs - u * (t_psi + t * psi)).norm();
    const double printed = (lhs - u * (t_psi - t * psi)).norm();

    ResidualReport report;
    report.check_name = "weak_weyl";
    describe(report, pair);
    report.context["t"] = format_double(t);
    report.conventions.push_back("T e^{-itH} = e^{-itH}(T + t), consistent with [T,H] = +i");
    auto& m = report.add("residual", residual, tolerance);
    m.aux["printed_form_residual"] = printed;
    return report;
}

ResidualReport weyl_relation_residual(const ModelPair& pair, double s, double t, const ComplexVector& psi,
                                      double tolerance) {
    require_state(pair, psi, "weyl_relation_residual");
    if (std::abs(s) > 1.0 || std::abs(t) > 1.0) {
        throw std::invalid_argument("weyl_relation_residual: |s| and |t| must not exceed 1");
    }
    const EigenSystem h_sys =
        s == 0.0 && t == 0.0 ? EigenSystem{} : hermitian_eigendecomposition(pair.hamiltonian, "H");
    const EigenSystem t_sys =
        s == 0.0 && t == 0.0 ? EigenSystem{} : hermitian_eigendecomposition(pair.time_operator, "T");
    const Eigen::Index n = psi.size();
    auto propagate = [n](const EigenSystem& es, double theta, const char* name) {
        if (theta == 0.0) return ComplexMatrix(ComplexMatrix::Identity(n, n));
        return unitary_exponential(es, theta, name).matrix;
    };
    const ComplexMatrix e_sh = propagate(h_sys, s, "H");
    const ComplexMatrix e_tt = propagate(t_sys, t, "T");
    const ComplexMatrix e_th = propagate(h_sys, t, "H");
    const ComplexMatrix e_st = propagate(t_sys, s, "T");

    const ComplexVector lhs = e_sh * (e_tt * psi);
    const ComplexVector rhs = std::polar(1.0, s * t) * (e_tt * (e_sh * psi));
    const ComplexVector printed_rhs = std::polar(1.0, -s * t) * (e_th * (e_st * psi));

    ResidualReport report;
    report.check_name = "weyl_relation";
    describe(report, pair);
    report.context["s"] = format_double(s);
    report.context["t"] = format_double(t);
    report.conventions.push_back("e^{isH} e^{itT} = e^{ist} e^{itT} e^{isH}, consistent with [T,H] = +i");
    auto& m = report.add("residual", (lhs - rhs).norm(), tolerance);
    m.aux["printed_form_residual"] = (lhs - printed_rhs).norm();
    return report;
}

ResidualReport robertson_check(const ModelPair& pair, const ComplexVector& psi) {
    require_state(pair, psi, "robertson_check");
    const ComplexMatrix& t = pair.time_operator.matrix();
    const ComplexMatrix& h = pair.hamiltonian.matrix();
    const ComplexVector t_psi = t * psi;
    const ComplexVector h_psi = h * psi;
    const double mean_t = psi.dot(t_psi).real();
    const double mean_h = psi.dot(h_psi).real();
    const double delta_t = (t_psi - mean_t * psi).norm();
    const double delta_h = (h_psi - mean_h * psi).norm();
    // <psi,[T,H]psi> = <T psi, H psi> - <H psi, T psi>
    const Complex bracket = t_psi.dot(h_psi) - h_psi.dot(t_psi);
    const double lhs = delta_t * delta_h;
    const double rhs = 0.5 * std::abs(bracket);

    ResidualReport report;
    report.check_name = "robertson";
    describe(report, pair);
    auto& m = report.add("violation", rhs - lhs, kTolerances.robertson_slack);
    m.aux["lhs"] = lhs;
    m.aux["rhs"] = rhs;
    m.aux["delta_t"] = delta_t;
    m.aux["delta_h"] = delta_h;
    return report;
}

RealVector galapon_eigenvalues(double omega, Eigen::Index dim) {
    if (dim < 2) throw std::invalid_argument("galapon_eigenvalues: dim must be >= 2");
    const DiscreteSpectrum spectrum = make_discrete_spectrum(HarmonicSpectrum{omega, static_cast<int>(dim - 1)});
    const ModelPair pair = build_galapon(spectrum);
    return hermitian_eigendecomposition(pair.time_operator, "galapon T (dim " + std::to_string(dim) + ")").eigenvalues;
}

SweepResult spectrum_sweep(double omega, std::span<const Eigen::Index> sizes) {
    if (sizes.empty()) throw std::invalid_argument("spectrum_sweep: no sizes");
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] < 2) throw std::invalid_argument("spectrum_sweep: sizes must be >= 2");
        if (k > 0 && sizes[k] <= sizes[k - 1]) throw std::invalid_argument("spectrum_sweep: sizes must ascend");
    }

    SweepResult out;
    out.table.omega = omega;
    out.report.check_name = "spectrum_sweep";
    out.report.context["model"] = "galapon";
    out.report.context["omega"] = format_double(omega);
    const double bound = std::numbers::pi / omega;

    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        const RealVector ev = galapon_eigenvalues(omega, sizes[k]);
        const auto stop = std::chrono::steady_clock::now();
        SweepRow row{sizes[k], ev(0), ev(ev.size() - 1),
                     std::chrono::duration<double, std::milli>(stop - start).count()};

        const std::string tag = "[" + std::to_string(row.size) + "]";
        const double norm2 = std::max(std::abs(row.lambda_min), std::abs(row.lambda_max));
        auto& c = out.report.add("containment" + tag, std::max(0.0, norm2 - bound), kTolerances.spectrum_containment);
        c.aux["lambda_min"] = row.lambda_min;
        c.aux["lambda_max"] = row.lambda_max;
        c.aux["norm"] = norm2;
        if (k > 0) {
            const double prev = out.table.rows.back().lambda_max;
            auto& mono = out.report.add("monotonicity" + tag, std::max(0.0, prev - row.lambda_max), 0.0);
            mono.aux["increment"] = row.lambda_max - prev;
        }
        out.table.rows.push_back(row);
    }
    return out;
}

RealVector schur_eigenvalues(const ComplexMatrix& a) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
    if (solver.info() != Eigen::Success) throw NumericalError("schur_eigenvalues: did not converge");
    RealVector ev = solver.eigenvalues().real();
    std::sort(ev.data(), ev.data() + ev.size());
    return ev;
}

}  // namespace timeop
