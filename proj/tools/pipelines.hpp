// pipelines.hpp: command dispatch, report assembly and file output
#pragma once

#include "run_config.hpp"

#include "timeop/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace timeop::cli {

inline constexpr const char* kVersion = "1.0.0";

// Exit statuses.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

struct Bundle {
    std::vector<ResidualReport> reports;  // gated; decide the exit status
    Json results = Json::array();         // every result in output order
    std::vector<CsvTable> tables;
    std::vector<std::string> conventions;
};

// Runs the pipeline named by config.command. No files are touched.
Bundle compute(const RunConfig& config);

// report.json contents. `timestamp` is the only field that varies between
// identical runs.
Json assemble_report(const RunConfig& config, const Bundle& bundle, const std::string& timestamp);

// Writes report.json and/or the CSV tables into config.output_dir. Every file
// goes through a temporary and a rename; on failure the files already placed
// are removed and the error rethrown.
std::vector<std::filesystem::path> write_outputs(const RunConfig& config, const Bundle& bundle,
                                                 const Json& report);

// compute + write + one summary line per check on `out`. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string utc_timestamp();

}  // namespace timeop::cli
