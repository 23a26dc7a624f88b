#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <type_traits>

namespace timeop::cli {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view name, const std::pair<std::string_view, E> (&table)[N]) {
    for (const auto& [key, value] : table) {
        if (key == name) return value;
    }
    return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(E value, const std::pair<std::string_view, E> (&table)[N]) {
    for (const auto& [key, v] : table) {
        if (v == value) return key;
    }
    return "?";
}

constexpr std::pair<std::string_view, Command> kCommands[] = {
    {"spectrum", Command::spectrum}, {"ccr", Command::ccr},         {"weakweyl", Command::weakweyl},
    {"weyl", Command::weyl},         {"povm", Command::povm},       {"dilate", Command::dilate},
    {"arrival", Command::arrival},   {"sweep", Command::sweep},     {"all", Command::all}};
constexpr std::pair<std::string_view, VectorSet> kVectors[] = {{"differences", VectorSet::differences},
                                                               {"basis", VectorSet::basis},
                                                               {"random", VectorSet::random},
                                                               {"packet", VectorSet::packet}};
constexpr std::pair<std::string_view, Format> kFormats[] = {
    {"json", Format::json}, {"csv", Format::csv}, {"both", Format::both}};

// Reads typed fields out of one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + "must be a JSON object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        out = as<T>(j_.at(key), key);
    }

    template <typename T>
    void read(const char* key, std::optional<T>& out) {
        seen_.insert(key);
        if (!j_.contains(key) || j_.at(key).is_null()) return;
        out = as<T>(j_.at(key), key);
    }

    bool has(const char* key) const { return j_.contains(key); }

    const Json* child(const char* key) {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) throw ConfigError(where() + "unknown key '" + key + "'");
        }
    }

    std::string where() const { return path_.empty() ? "config: " : "config." + path_ + ": "; }

private:
    template <typename T>
    T as(const Json& v, const char* key) const {
        const std::string name = where() + "'" + key + "' ";
        if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) throw ConfigError(name + "must be a number");
            const double d = v.get<double>();
            if (!std::isfinite(d)) throw ConfigError(name + "must be finite");
            return d;
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ConfigError(name + "must be a string");
            return v.get<std::string>();
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            if (v.is_number_unsigned()) return v.get<std::uint64_t>();
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                throw ConfigError(name + "must be a non-negative integer");
            }
            return static_cast<std::uint64_t>(v.get<long long>());
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ConfigError(name + "must be an integer");
            const auto i = v.get<long long>();
            if (i < std::numeric_limits<T>::min() || i > std::numeric_limits<T>::max()) {
                throw ConfigError(name + "is out of range");
            }
            return static_cast<T>(i);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            if (!v.is_array()) throw ConfigError(name + "must be an array of numbers");
            std::vector<double> out;
            for (const auto& e : v) out.push_back(as<double>(e, key));
            return out;
        } else {
            static_assert(std::is_same_v<T, std::vector<long long>>);
            if (!v.is_array()) throw ConfigError(name + "must be an array of integers");
            std::vector<long long> out;
            for (const auto& e : v) out.push_back(as<long long>(e, key));
            return out;
        }
    }

    const Json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError("config: " + message);
}

}  // namespace

std::string_view to_string(Command c) { return name_of(c, kCommands); }
std::string_view to_string(VectorSet v) { return name_of(v, kVectors); }
std::string_view to_string(Format f) { return name_of(f, kFormats); }

bool is_grid_model(ModelKind kind) {
    return kind != ModelKind::galapon && kind != ModelKind::phase;
}

RunConfig parse_config(const Json& j) {
    RunConfig c;
    ObjectReader top(j, "");

    std::string command;
    top.read("command", command);
    require(top.has("command"), "'command' is required");
    const auto cmd = lookup(command, kCommands);
    require(cmd.has_value(), "unknown command '" + command + "'");
    c.command = *cmd;

    if (const Json* m = top.child("model")) {
        ObjectReader r(*m, "model");
        std::string kind = std::string(timeop::to_string(c.model.kind));
        r.read("kind", kind);
        const auto k = parse_model_kind(kind);
        require(k.has_value(), "unknown model kind '" + kind + "'");
        c.model.kind = *k;
        r.read("omega", c.model.omega);
        r.read("n", c.model.n);
        r.read("energies", c.model.energies);
        r.read("mass", c.model.params.mass);
        r.read("gravity", c.model.params.gravity);
        r.read("velocity", c.model.params.velocity);
        r.read("rest_mass", c.model.params.rest_mass);
        r.finish();
    }
    if (const Json* g = top.child("grid")) {
        ObjectReader r(*g, "grid");
        r.read("p_min", c.grid.p_min);
        r.read("p_max", c.grid.p_max);
        r.read("points", c.grid.points);
        r.read("eps0", c.grid.eps0);
        r.finish();
    }
    std::vector<long long> sizes(c.sizes.begin(), c.sizes.end());
    top.read("sizes", sizes);
    c.sizes.assign(sizes.begin(), sizes.end());
    std::optional<std::string> vectors;
    top.read("vectors", vectors);
    top.read("random_states", c.random_states);
    if (const Json* p = top.child("packet")) {
        ObjectReader r(*p, "packet");
        r.read("p0", c.packet.p0);
        r.read("width", c.packet.width);
        r.read("x0", c.packet.x0);
        r.finish();
    }
    top.read("s", c.s);
    top.read("t", c.t);
    top.read("bins", c.bins);
    if (const Json* t = top.child("times")) {
        ObjectReader r(*t, "times");
        r.read("start", c.times.start);
        r.read("stop", c.times.stop);
        r.read("step", c.times.step);
        r.finish();
    }
    top.read("tolerance", c.tolerance);
    top.read("seed", c.seed);
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') c.output_dir = env;
    top.read("output_dir", c.output_dir);
    std::string format(to_string(c.format));
    top.read("format", format);
    const auto fmt = lookup(format, kFormats);
    require(fmt.has_value(), "unknown format '" + format + "'");
    c.format = *fmt;
    top.finish();

    if (vectors) {
        const auto vs = lookup(*vectors, kVectors);
        require(vs.has_value(), "unknown vector set '" + *vectors + "'");
        c.vectors = *vs;
    } else if (c.command == Command::weakweyl || c.command == Command::weyl) {
        c.vectors = is_grid_model(c.model.kind) ? VectorSet::packet : VectorSet::random;
    }

    // ranges
    const ModelSpec& m = c.model;
    require(m.omega > 0.0, "model.omega must be positive");
    require(m.n >= 1, "model.n must be >= 1");
    if (m.energies) {
        require(m.kind == ModelKind::galapon, "model.energies applies only to the galapon model");
        require(m.energies->size() >= 2, "model.energies needs at least two levels");
    }
    require(m.params.mass > 0.0, "model.mass must be positive");
    require(m.params.gravity > 0.0, "model.gravity must be positive");
    require(m.params.velocity != 0.0, "model.velocity must be nonzero");
    require(m.params.rest_mass >= 0.0, "model.rest_mass must be non-negative");
    require(c.grid.p_max > c.grid.p_min, "grid.p_max must exceed grid.p_min");
    require(c.grid.points >= 8, "grid.points must be >= 8");
    require(c.grid.eps0 > 0.0, "grid.eps0 must be positive");
    require(!c.sizes.empty(), "sizes must not be empty");
    for (std::size_t k = 0; k < c.sizes.size(); ++k) {
        require(c.sizes[k] >= 2, "sizes must be >= 2");
        require(k == 0 || c.sizes[k] > c.sizes[k - 1], "sizes must be strictly ascending");
    }
    require(c.random_states >= 1, "random_states must be >= 1");
    require(c.packet.width > 0.0, "packet.width must be positive");
    require(std::abs(c.s) <= 1.0 && std::abs(c.t) <= 1.0, "|s| and |t| must not exceed 1");
    require(c.bins >= 1, "bins must be >= 1");
    require(c.times.step > 0.0, "times.step must be positive");
    require(c.times.stop > c.times.start, "times.stop must exceed times.start");
    require((c.times.stop - c.times.start) / c.times.step <= 1e7, "times: too many samples");
    require(!c.tolerance || *c.tolerance >= 0.0, "tolerance must be non-negative");
    require(!c.output_dir.empty(), "output_dir must not be empty");

    // command-specific
    const bool grid = is_grid_model(m.kind);
    switch (c.command) {
        case Command::sweep:
            require(m.kind == ModelKind::galapon && !m.energies, "sweep runs on the harmonic galapon model");
            break;
        case Command::povm:
        case Command::dilate:
            require(m.kind == ModelKind::phase, "povm and dilate use the phase model");
            break;
        case Command::arrival:
            require(m.kind == ModelKind::aharonov_bohm, "arrival uses the aharonov_bohm model");
            break;
        case Command::ccr:
        case Command::weakweyl:
        case Command::weyl:
            require(c.vectors != VectorSet::packet || grid, "vectors=packet needs a momentum-grid model");
            break;
        default:
            break;
    }
    if (grid && c.command != Command::all && c.command != Command::sweep) {
        try {
            (void)build_momentum_grid(c.grid.p_min, c.grid.p_max, c.grid.points, c.grid.eps0);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: grid: ") + e.what());
        }
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

Json to_json(const RunConfig& c) {
    Json model = {{"kind", timeop::to_string(c.model.kind)},
                  {"omega", c.model.omega},
                  {"n", c.model.n},
                  {"mass", c.model.params.mass},
                  {"gravity", c.model.params.gravity},
                  {"velocity", c.model.params.velocity},
                  {"rest_mass", c.model.params.rest_mass}};
    if (c.model.energies) model["energies"] = *c.model.energies;
    Json j = {{"command", to_string(c.command)},
              {"model", model},
              {"grid", {{"p_min", c.grid.p_min}, {"p_max", c.grid.p_max}, {"points", c.grid.points}, {"eps0", c.grid.eps0}}},
              {"sizes", c.sizes},
              {"vectors", to_string(c.vectors)},
              {"random_states", c.random_states},
              {"packet", {{"p0", c.packet.p0}, {"width", c.packet.width}, {"x0", c.packet.x0}}},
              {"s", c.s},
              {"t", c.t},
              {"bins", c.bins},
              {"times", {{"start", c.times.start}, {"stop", c.times.stop}, {"step", c.times.step}}},
              {"seed", c.seed},
              {"output_dir", c.output_dir},
              {"format", to_string(c.format)}};
    j["tolerance"] = c.tolerance ? Json(*c.tolerance) : Json(nullptr);
    return j;
}

}  // namespace timeop::cli
