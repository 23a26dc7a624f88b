#include "pipelines.hpp"

#include "timeop/acceptance.hpp"
#include "timeop/povm.hpp"
#include "timeop/tolerances.hpp"
#include "timeop/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

namespace timeop::cli {

namespace fs = std::filesystem;
using timeop::to_json;

namespace {

MomentumGrid make_grid(const RunConfig& c) {
    return build_momentum_grid(c.grid.p_min, c.grid.p_max, c.grid.points, c.grid.eps0);
}

ModelPair make_model(const RunConfig& c) {
    const ModelSpec& m = c.model;
    switch (m.kind) {
        case ModelKind::galapon:
            if (m.energies) return build_galapon(make_discrete_spectrum(ExplicitSpectrum{*m.energies}));
            return build_galapon(make_discrete_spectrum(HarmonicSpectrum{m.omega, m.n}));
        case ModelKind::phase:
            return build_phase_operator(m.n);
        default:
            return build_grid_model(m.kind, make_grid(c), m.params);
    }
}

std::vector<LabeledState> make_states(const RunConfig& c, Eigen::Index dim) {
    switch (c.vectors) {
        case VectorSet::differences: return difference_vectors(dim);
        case VectorSet::basis: return basis_vectors(dim);
        case VectorSet::random: {
            std::mt19937_64 rng(c.seed);
            std::vector<LabeledState> out;
            for (int k = 0; k < c.random_states; ++k) {
                out.push_back({"random" + std::to_string(k), haar_random_state(dim, rng)});
            }
            return out;
        }
        case VectorSet::packet: return {{"packet", gaussian_packet(make_grid(c), c.packet)}};
    }
    return {};
}

void add_conventions(Bundle& b, const std::vector<std::string>& conventions) {
    for (const auto& s : conventions) {
        if (std::find(b.conventions.begin(), b.conventions.end(), s) == b.conventions.end()) {
            b.conventions.push_back(s);
        }
    }
}

void add_report(Bundle& b, ResidualReport r) {
    add_conventions(b, r.conventions);
    b.results.push_back(to_json(r));
    b.reports.push_back(std::move(r));
}

std::string model_label(const ModelPair& pair) { return std::string(to_string(pair.kind)); }

void spectrum(const RunConfig& c, Bundle& b) {
    const ModelPair pair = make_model(c);
    add_conventions(b, pair.conventions);
    const RealVector ev = hermitian_eigendecomposition(pair.time_operator, "T").eigenvalues;
    const RealVector schur = schur_eigenvalues(pair.time_operator.matrix());

    ResidualReport r;
    r.check_name = "spectrum";
    r.context["model"] = model_label(pair);
    r.context["dim"] = std::to_string(ev.size());
    r.add("schur_agreement", (ev - schur).cwiseAbs().maxCoeff(), kTolerances.spectrum_containment);
    if (pair.kind == ModelKind::galapon && !c.model.energies) {
        const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        auto& m = r.add("containment", std::max(0.0, norm - std::numbers::pi / c.model.omega),
                        kTolerances.spectrum_containment);
        m.aux["norm"] = norm;
        m.aux["bound"] = std::numbers::pi / c.model.omega;
    }

    CsvTable table{"spectrum", {"index", "eigenvalue"}, {}};
    Json values = Json::array();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        table.rows.push_back({std::to_string(k), format_double(ev(k))});
        values.push_back(ev(k));
    }
    add_report(b, std::move(r));
    b.results.push_back(Json{{"type", "spectrum"}, {"model", model_label(pair)}, {"operator", "T"}, {"eigenvalues", values}});
    b.tables.push_back(std::move(table));
}

void ccr(const RunConfig& c, Bundle& b) {
    const ModelPair pair = make_model(c);
    add_conventions(b, pair.conventions);
    const auto states = make_states(c, pair.hamiltonian.dim());
    ResidualReport r = ccr_report(pair, states, c.tolerance.value_or(kTolerances.exact_identity));
    r.context["vector_set"] = std::string(to_string(c.vectors));

    CsvTable table{"ccr", {"label", "r_plus", "r_minus", "sign", "coefficient_im"}, {}};
    for (const auto& m : r.measurements) {
        table.rows.push_back({m.label, format_double(m.aux.at("r_plus")), format_double(m.aux.at("r_minus")),
                              format_double(m.aux.at("sign")), format_double(m.aux.at("coefficient_im"))});
    }
    add_report(b, std::move(r));
    b.tables.push_back(std::move(table));
}

// One report per command; one measurement per state.
template <typename Check>
void per_state(const RunConfig& c, Bundle& b, const char* name, Check&& check) {
    const ModelPair pair = make_model(c);
    add_conventions(b, pair.conventions);
    const auto states = make_states(c, pair.hamiltonian.dim());
    const double tol = c.tolerance.value_or(1e-2);

    ResidualReport r;
    r.check_name = name;
    CsvTable table{name, {"label", "residual", "printed_form_residual"}, {}};
    for (const LabeledState& s : states) {
        const ResidualReport one = check(pair, s.vector, tol);
        if (r.context.empty()) {
            r.context = one.context;
            r.conventions = one.conventions;
        }
        const Measurement& m = one.at("residual");
        r.add(s.label, m.value, tol).aux = m.aux;
        table.rows.push_back({s.label, format_double(m.value), format_double(m.aux.at("printed_form_residual"))});
    }
    r.context["vector_set"] = std::string(to_string(c.vectors));
    add_report(b, std::move(r));
    b.tables.push_back(std::move(table));
}

Povm config_povm(const RunConfig& c) {
    return build_phase_povm(c.model.n, OutcomePartition::uniform_period(static_cast<std::size_t>(c.bins)));
}

CsvTable povm_table(const Povm& povm) {
    CsvTable table{"povm", {"bin", "t_lo", "t_hi", "trace"}, {}};
    for (std::size_t j = 0; j < povm.elements.size(); ++j) {
        table.rows.push_back({std::to_string(j), format_double(povm.partition.lower(j)),
                              format_double(povm.partition.upper(j)),
                              format_double(povm.elements[j].matrix().trace().real())});
    }
    return table;
}

void povm(const RunConfig& c, Bundle& b) {
    const Povm p = config_povm(c);
    add_report(b, povm_axioms_check(p));

    const ModelPair phase = build_phase_operator(c.model.n);
    add_conventions(b, phase.conventions);
    ResidualReport r;
    r.check_name = "phase_first_moment";
    r.context["model"] = "phase";
    r.context["bins"] = std::to_string(c.bins);
    const ComplexMatrix exact = povm_moment(p, 1, MomentRule::exact_phase).matrix();
    const ComplexMatrix midpoint = povm_moment(p, 1, MomentRule::midpoint).matrix();
    auto& m = r.add("moment_vs_closed_form", (exact - phase.time_operator.matrix()).norm(), 1e-10);
    m.aux["midpoint_rule_difference"] = (midpoint - phase.time_operator.matrix()).norm();
    add_report(b, std::move(r));

    b.results.push_back(to_json(p));
    b.tables.push_back(povm_table(p));
}

void dilate(const RunConfig& c, Bundle& b) {
    const Povm p = config_povm(c);
    add_report(b, povm_axioms_check(p));
    const NaimarkDilation d = naimark_dilate(p);
    add_report(b, dilation_check(p, d));

    CsvTable table{"dilation", {"bin", "reconstruction_error"}, {}};
    for (std::size_t j = 0; j < d.reconstruction_errors.size(); ++j) {
        table.rows.push_back({std::to_string(j), format_double(d.reconstruction_errors[j])});
    }
    b.results.push_back(Json{{"type", "naimark_dilation"},
                             {"slots", d.projectors.size()},
                             {"block_dim", p.dim()},
                             {"isometry", to_json(d.isometry)}});
    b.tables.push_back(std::move(table));
}

void arrival(const RunConfig& c, Bundle& b) {
    const MomentumGrid grid = make_grid(c);
    const ModelPair ab = build_grid_model(ModelKind::aharonov_bohm, grid, c.model.params);
    add_conventions(b, ab.conventions);
    const ComplexVector psi = gaussian_packet(grid, c.packet);

    std::vector<double> times;
    const auto steps = static_cast<long>(std::floor((c.times.stop - c.times.start) / c.times.step + 1e-9));
    for (long k = 0; k <= steps; ++k) times.push_back(c.times.start + c.times.step * static_cast<double>(k));
    const std::vector<double> density = arrival_density(grid, to_grid_amplitudes(psi, grid), c.model.params.mass, times);

    double mass = 0.0;
    double first = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double h = 0.5 * (times[k] - times[k - 1]);
        mass += h * (density[k - 1] + density[k]);
        first += h * (times[k - 1] * density[k - 1] + times[k] * density[k]);
    }
    const double expectation = psi.dot(ab.time_operator.matrix() * psi).real();
    const double min_density = *std::min_element(density.begin(), density.end());

    ResidualReport r;
    r.check_name = "arrival_density";
    r.context["model"] = "aharonov_bohm";
    r.context["dim"] = std::to_string(grid.size());
    r.context["samples"] = std::to_string(times.size());
    r.add("normalization", std::abs(mass - 1.0), 1e-3).aux["integral"] = mass;
    auto& m = r.add("first_moment_relative", std::abs(first - expectation) / std::abs(expectation), 1e-2);
    m.aux["first_moment"] = first;
    m.aux["ab_expectation"] = expectation;
    r.add("negativity", -min_density, 0.0);
    add_report(b, std::move(r));
    b.tables.push_back(density_csv(times, density));
}

void sweep(const RunConfig& c, Bundle& b) {
    const SweepResult s = spectrum_sweep(c.model.omega, c.sizes);
    add_report(b, s.report);
    b.results.push_back(to_json(s.table));
    b.tables.push_back(sweep_csv(s.table));
}

void all(const RunConfig& c, Bundle& b) {
    AcceptanceOptions options;
    options.seed = c.seed;
    CsvTable table{"acceptance", {"id", "title", "passed"}, {}};
    for (const CriterionResult& crit : run_acceptance(options)) {
        Json reports = Json::array();
        for (const auto& r : crit.reports) {
            add_conventions(b, r.conventions);
            reports.push_back(to_json(r));
            b.reports.push_back(r);
        }
        ResidualReport timing;
        timing.check_name = "criterion" + std::to_string(crit.id) + "_runtime";
        timing.add("over_limit", crit.within_time() ? 0.0 : 1.0, 0.0).aux["limit_ms"] = crit.runtime_limit_ms;
        b.reports.push_back(std::move(timing));
        b.results.push_back(Json{{"type", "acceptance_criterion"},
                                 {"id", crit.id},
                                 {"title", crit.title},
                                 {"passed", crit.passed()},
                                 {"within_time", crit.within_time()},
                                 {"reports", std::move(reports)}});
        table.rows.push_back({std::to_string(crit.id), crit.title, crit.passed() ? "true" : "false"});
    }
    b.tables.push_back(std::move(table));
}

void remove_quietly(const fs::path& p) {
    std::error_code ec;
    fs::remove(p, ec);
}

}  // namespace

Bundle compute(const RunConfig& c) {
    Bundle b;
    switch (c.command) {
        case Command::spectrum: spectrum(c, b); break;
        case Command::ccr: ccr(c, b); break;
        case Command::weakweyl:
            per_state(c, b, "weak_weyl", [&c](const ModelPair& p, const ComplexVector& v, double tol) {
                return weak_weyl_residual(p, c.t, v, tol);
            });
            break;
        case Command::weyl:
            per_state(c, b, "weyl_relation", [&c](const ModelPair& p, const ComplexVector& v, double tol) {
                return weyl_relation_residual(p, c.s, c.t, v, tol);
            });
            break;
        case Command::povm: povm(c, b); break;
        case Command::dilate: dilate(c, b); break;
        case Command::arrival: arrival(c, b); break;
        case Command::sweep: sweep(c, b); break;
        case Command::all: all(c, b); break;
    }
    return b;
}

Json assemble_report(const RunConfig& c, const Bundle& b, const std::string& timestamp) {
    bool passed = !b.reports.empty();
    for (const auto& r : b.reports) passed = passed && r.passed();
    return Json{{"metadata",
                 {{"version", kVersion},
                  {"command", to_string(c.command)},
                  {"seed", c.seed},
                  {"timestamp", timestamp},
                  {"conventions", b.conventions},
                  {"config", to_json(c)}}},
                {"passed", passed},
                {"results", b.results}};
}

std::vector<fs::path> write_outputs(const RunConfig& c, const Bundle& b, const Json& report) {
    std::vector<std::pair<std::string, std::string>> files;
    if (c.format != Format::csv) files.emplace_back("report.json", report.dump(2) + "\n");
    if (c.format != Format::json) {
        for (const auto& t : b.tables) files.emplace_back(t.name + ".csv", t.render());
    }

    const fs::path dir(c.output_dir);
    std::vector<fs::path> temps;
    std::vector<fs::path> placed;
    try {
        fs::create_directories(dir);
        for (const auto& [name, contents] : files) {
            const fs::path tmp = dir / ("." + name + ".tmp");
            temps.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << contents;
            out.close();
            if (!out) throw std::runtime_error("cannot write " + tmp.string());
        }
        for (std::size_t k = 0; k < files.size(); ++k) {
            const fs::path target = dir / files[k].first;
            fs::rename(temps[k], target);
            placed.push_back(target);
        }
    } catch (...) {
        for (const auto& p : temps) remove_quietly(p);
        for (const auto& p : placed) remove_quietly(p);
        throw;
    }
    return placed;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Bundle bundle;
    try {
        bundle = compute(config);
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        write_outputs(config, bundle, assemble_report(config, bundle, utc_timestamp()));
    } catch (const std::exception& e) {
        err << "output failure: " << e.what() << "\n";
        return kExitIo;
    }

    std::vector<std::string> failing;
    for (const auto& r : bundle.reports) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.check_name;
        if (auto it = r.context.find("model"); it != r.context.end()) out << " [" << it->second << "]";
        out << " max=" << format_double(r.max_value()) << " (" << r.measurements.size() << " measurements)\n";
        if (!r.passed()) failing.push_back(r.check_name);
    }
    if (!failing.empty()) {
        err << "failed checks:";
        for (const auto& f : failing) err << " " << f;
        err << "\n";
        return kExitCheckFailed;
    }
    return kExitPass;
}

}  // namespace timeop::cli
