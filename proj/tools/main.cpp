#include "pipelines.hpp"
#include "run_config.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>

namespace {

using timeop::Json;
using namespace timeop::cli;

// Flag values collected per subcommand; only flags actually given reach the config.
struct Flags {
    std::optional<std::string> model, vectors, output_dir, format;
    std::optional<double> omega, mass, gravity, velocity, rest_mass, p_min, p_max, eps0, p0, width, x0, s, t,
        t_start, t_stop, t_step, tolerance;
    std::optional<int> n, points, random_states, bins;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<long long>> sizes;
    std::optional<std::vector<double>> energies;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--model", f.model, "galapon|phase|aharonov_bohm|falling|transport|relativistic");
    sub->add_option("--omega", f.omega, "oscillator frequency");
    sub->add_option("--n", f.n, "highest level index N (dimension N+1)");
    sub->add_option("--energies", f.energies, "explicit galapon spectrum")->delimiter(',');
    sub->add_option("--mass", f.mass);
    sub->add_option("--gravity", f.gravity);
    sub->add_option("--velocity", f.velocity);
    sub->add_option("--rest-mass", f.rest_mass);
    sub->add_option("--p-min", f.p_min, "momentum grid lower end");
    sub->add_option("--p-max", f.p_max, "momentum grid upper end");
    sub->add_option("--points", f.points, "momentum grid points");
    sub->add_option("--eps0", f.eps0, "zero-exclusion half width");
    sub->add_option("--sizes", f.sizes, "matrix dimensions for sweep")->delimiter(',');
    sub->add_option("--vectors", f.vectors, "differences|basis|random|packet");
    sub->add_option("--random-states", f.random_states);
    sub->add_option("--p0", f.p0, "packet mean momentum");
    sub->add_option("--width", f.width, "packet momentum width");
    sub->add_option("--x0", f.x0, "packet mean position");
    sub->add_option("--s", f.s);
    sub->add_option("--t", f.t);
    sub->add_option("--bins", f.bins, "POVM bins on [0, 2pi]");
    sub->add_option("--t-start", f.t_start);
    sub->add_option("--t-stop", f.t_stop);
    sub->add_option("--t-step", f.t_step);
    sub->add_option("--tolerance", f.tolerance);
    sub->add_option("--seed", f.seed);
    sub->add_option("--output-dir", f.output_dir);
    sub->add_option("--format", f.format, "json|csv|both");
}

template <typename T>
void put(Json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

Json to_config_json(const std::string& command, const Flags& f) {
    Json j{{"command", command}};
    Json model = Json::object();
    put(model, "kind", f.model);
    put(model, "omega", f.omega);
    put(model, "n", f.n);
    put(model, "energies", f.energies);
    put(model, "mass", f.mass);
    put(model, "gravity", f.gravity);
    put(model, "velocity", f.velocity);
    put(model, "rest_mass", f.rest_mass);
    if (!model.empty()) j["model"] = model;
    Json grid = Json::object();
    put(grid, "p_min", f.p_min);
    put(grid, "p_max", f.p_max);
    put(grid, "points", f.points);
    put(grid, "eps0", f.eps0);
    if (!grid.empty()) j["grid"] = grid;
    Json packet = Json::object();
    put(packet, "p0", f.p0);
    put(packet, "width", f.width);
    put(packet, "x0", f.x0);
    if (!packet.empty()) j["packet"] = packet;
    Json times = Json::object();
    put(times, "start", f.t_start);
    put(times, "stop", f.t_stop);
    put(times, "step", f.t_step);
    if (!times.empty()) j["times"] = times;
    put(j, "sizes", f.sizes);
    put(j, "vectors", f.vectors);
    put(j, "random_states", f.random_states);
    put(j, "s", f.s);
    put(j, "t", f.t);
    put(j, "bins", f.bins);
    put(j, "tolerance", f.tolerance);
    put(j, "seed", f.seed);
    put(j, "output_dir", f.output_dir);
    put(j, "format", f.format);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timeop: finite-dimensional time-operator checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Flags flags;
    std::string config_path;
    std::function<RunConfig()> make_config;

    for (const char* name : {"spectrum", "ccr", "weakweyl", "weyl", "povm", "dilate", "arrival", "sweep", "all"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_flags(sub, flags);
        sub->callback([&make_config, &flags, name] {
            make_config = [&flags, name] { return parse_config(to_config_json(name, flags)); };
        });
    }
    CLI::App* run_cmd = app.add_subcommand("run", "execute a JSON run configuration");
    run_cmd->add_option("--config", config_path, "path to the configuration file")->required();
    run_cmd->callback([&make_config, &config_path] {
        make_config = [&config_path] { return load_config_file(config_path); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    RunConfig config;
    try {
        config = make_config();
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return timeop::cli::run(config, std::cout, std::cerr);
}
