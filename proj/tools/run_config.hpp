// run_config.hpp: the validated configuration behind every CLI command
#pragma once

#include "timeop/models.hpp"
#include "timeop/report.hpp"
#include "timeop/states.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace timeop::cli {

// Invalid or unreadable configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kOutputDirEnv = "TIMEOP_OUTPUT_DIR";

enum class Command { spectrum, ccr, weakweyl, weyl, povm, dilate, arrival, sweep, all };
enum class VectorSet { differences, basis, random, packet };
enum class Format { json, csv, both };

std::string_view to_string(Command c);
std::string_view to_string(VectorSet v);
std::string_view to_string(Format f);

struct ModelSpec {
    ModelKind kind = ModelKind::galapon;
    double omega = 1.0;
    int n = 16;  // highest level index; the matrix has n + 1 rows
    std::optional<std::vector<double>> energies;
    GridModelParams params;
};

struct GridSpec {
    double p_min = 1.0;
    double p_max = 9.0;
    int points = 200;
    double eps0 = 0.5;
};

struct TimeRange {
    double start = -3.0;
    double stop = 3.0;
    double step = 1e-3;
};

struct RunConfig {
    Command command = Command::ccr;
    ModelSpec model;
    GridSpec grid;
    std::vector<Eigen::Index> sizes{64, 128, 256};
    // Default: packet (grid models) or random (discrete) for weakweyl/weyl,
    // differences otherwise.
    VectorSet vectors = VectorSet::differences;
    int random_states = 10;
    GaussianPacket packet{5.0, 0.5, -2.0};
    double s = 0.3;
    double t = 0.1;
    int bins = 64;
    TimeRange times;
    std::optional<double> tolerance;
    std::uint64_t seed = 20140301;
    std::string output_dir = ".";
    Format format = Format::json;
};

bool is_grid_model(ModelKind kind);

// Parses and validates; unknown keys, wrong types and out-of-range values
// throw ConfigError. A missing output_dir falls back to $TIMEOP_OUTPUT_DIR,
// then ".".
RunConfig parse_config(const Json& j);
RunConfig load_config_file(const std::string& path);

Json to_json(const RunConfig& config);

}  // namespace timeop::cli
