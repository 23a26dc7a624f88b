#include "pipelines.hpp"
#include "run_config.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace timeop;
using namespace timeop::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("timeop_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_files(const fs::path& dir) {
    if (!fs::exists(dir)) return 0;
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run_json(const Json& j) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(parse_config(j), out, err);
    return {status, out.str(), err.str()};
}

int shell(const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("config: defaults and echo") {
    const RunConfig c = parse_config(Json{{"command", "ccr"}, {"output_dir", "x"}});
    CHECK(c.command == Command::ccr);
    CHECK(c.model.kind == ModelKind::galapon);
    CHECK(c.vectors == VectorSet::differences);
    CHECK(c.format == Format::json);
    const RunConfig again = parse_config(to_json(c));
    CHECK(to_json(again) == to_json(c));
}

TEST_CASE("config: command-dependent vector default") {
    CHECK(parse_config(Json{{"command", "weakweyl"}, {"model", {{"kind", "aharonov_bohm"}}}}).vectors == VectorSet::packet);
    CHECK(parse_config(Json{{"command", "weyl"}}).vectors == VectorSet::random);
}

TEST_CASE("config: rejects unknown keys, bad types and bad values") {
    const Json bad[] = {
        Json::object(),
        Json{{"command", "dance"}},
        Json{{"command", "ccr"}, {"colour", 1}},
        Json{{"command", "ccr"}, {"model", {{"kind", "galapon"}, {"spin", 1}}}},
        Json{{"command", "ccr"}, {"model", {{"kind", "harmonic"}}}},
        Json{{"command", "ccr"}, {"model", {{"omega", "one"}}}},
        Json{{"command", "ccr"}, {"model", {{"omega", -1.0}}}},
        Json{{"command", "ccr"}, {"model", {{"n", 0}}}},
        Json{{"command", "ccr"}, {"model", {{"n", 2.5}}}},
        Json{{"command", "sweep"}, {"sizes", {64, 32}}},
        Json{{"command", "sweep"}, {"sizes", {1}}},
        Json{{"command", "sweep"}, {"sizes", Json::array()}},
        Json{{"command", "sweep"}, {"model", {{"kind", "phase"}}}},
        Json{{"command", "povm"}},
        Json{{"command", "povm"}, {"model", {{"kind", "phase"}}}, {"bins", 0}},
        Json{{"command", "arrival"}, {"model", {{"kind", "falling"}}}},
        Json{{"command", "weyl"}, {"s", 1.5}},
        Json{{"command", "ccr"}, {"vectors", "packet"}},
        Json{{"command", "ccr"}, {"vectors", "sideways"}},
        Json{{"command", "ccr"}, {"format", "xml"}},
        Json{{"command", "ccr"}, {"seed", -3}},
        Json{{"command", "ccr"}, {"grid", {{"points", 4}}}},
        Json{{"command", "ccr"}, {"model", {{"kind", "falling"}}}, {"grid", {{"p_min", -0.2}, {"p_max", 1.0}}}},
        Json{{"command", "arrival"}, {"model", {{"kind", "aharonov_bohm"}}}, {"times", {{"step", 0.0}}}},
        Json{{"command", "ccr"}, {"packet", {{"width", 0.0}}}},
        Json{{"command", "ccr"}, {"packet", {{"sigma", 1.0}}}},
        Json{{"command", "ccr"}, {"model", {{"kind", "phase"}, {"energies", {1, 2}}}}},
        Json{{"command", "ccr"}, {"tolerance", -1.0}},
        Json::array(),
    };
    for (const Json& j : bad) {
        CAPTURE(j.dump());
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
}

TEST_CASE("config: output directory falls back to the environment") {
    ::setenv(kOutputDirEnv, "/tmp/from_env", 1);
    CHECK(parse_config(Json{{"command", "ccr"}}).output_dir == "/tmp/from_env");
    CHECK(parse_config(Json{{"command", "ccr"}, {"output_dir", "explicit"}}).output_dir == "explicit");
    ::unsetenv(kOutputDirEnv);
    CHECK(parse_config(Json{{"command", "ccr"}}).output_dir == ".");
}

TEST_CASE("config: missing or malformed file is a usage error") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/missing.json"), ConfigError);
    const fs::path dir = fresh_dir("badjson");
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << "{ not json";
    CHECK_THROWS_AS(load_config_file((dir / "c.json").string()), ConfigError);
}

TEST_CASE("run: sweep to CSV only") {
    const fs::path dir = fresh_dir("sweep");
    const Outcome o = run_json(Json{{"command", "sweep"},
                                    {"model", {{"kind", "galapon"}, {"omega", 1.0}}},
                                    {"sizes", {64, 128, 256}},
                                    {"format", "csv"},
                                    {"output_dir", dir.string()}});
    CHECK(o.status == 0);
    CHECK_FALSE(fs::exists(dir / "report.json"));
    const std::string csv = slurp(dir / "sweep.csv");
    CHECK(csv.rfind("N,lambda_min,lambda_max,runtime_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.back() == '\n');
    CHECK(o.out.find("PASS spectrum_sweep") != std::string::npos);
}

TEST_CASE("run: ccr over 136 difference vectors") {
    const fs::path dir = fresh_dir("ccr");
    const Outcome o = run_json(Json{{"command", "ccr"},
                                    {"model", {{"kind", "galapon"}, {"omega", 1.0}, {"n", 16}}},
                                    {"vectors", "differences"},
                                    {"format", "both"},
                                    {"output_dir", dir.string()}});
    CHECK(o.status == 0);
    const Json report = Json::parse(slurp(dir / "report.json"));
    CHECK(report.at("passed") == true);
    CHECK(report.at("metadata").at("version") == kVersion);
    const Json& ccr = report.at("results").at(0);
    CHECK(ccr.at("check") == "ccr");
    REQUIRE(ccr.at("measurements").size() == 136);
    for (const auto& m : ccr.at("measurements")) CHECK(m.at("value").get<double>() <= 1e-12);
    const std::string csv = slurp(dir / "ccr.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 137);
}

TEST_CASE("run: failing checks exit 1 and are named") {
    const fs::path dir = fresh_dir("fail");
    const Outcome o = run_json(Json{{"command", "ccr"}, {"vectors", "basis"}, {"output_dir", dir.string()}});
    CHECK(o.status == 1);
    CHECK(o.err.find("failed checks: ccr") != std::string::npos);
    CHECK(o.out.find("FAIL ccr") != std::string::npos);
    CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("run: builder rejection after validation is a usage error") {
    const fs::path dir = fresh_dir("degenerate");
    const Outcome o = run_json(Json{{"command", "ccr"},
                                    {"model", {{"kind", "galapon"}, {"energies", {1.0, 1.0 + 1e-13, 2.0}}}},
                                    {"output_dir", dir.string()}});
    CHECK(o.status == 2);
    CHECK(count_files(dir) == 0);
}

TEST_CASE("run: every command produces its outputs") {
    const std::vector<Json> configs = {
        {{"command", "spectrum"}, {"model", {{"kind", "phase"}, {"n", 10}}}},
        {{"command", "weakweyl"}, {"model", {{"kind", "aharonov_bohm"}}}},
        {{"command", "weyl"}, {"model", {{"kind", "transport"}}}, {"s", 0.3}, {"t", 0.3}},
        {{"command", "povm"}, {"model", {{"kind", "phase"}, {"n", 8}}}, {"bins", 8}},
        {{"command", "dilate"}, {"model", {{"kind", "phase"}, {"n", 8}}}, {"bins", 4}},
        {{"command", "arrival"}, {"model", {{"kind", "aharonov_bohm"}}}, {"grid", {{"points", 400}}}},
    };
    const char* tables[] = {"spectrum.csv", "weak_weyl.csv", "weyl_relation.csv", "povm.csv", "dilation.csv", "arrival.csv"};
    for (std::size_t k = 0; k < configs.size(); ++k) {
        CAPTURE(configs[k].dump());
        const fs::path dir = fresh_dir("cmd" + std::to_string(k));
        Json j = configs[k];
        j["output_dir"] = dir.string();
        j["format"] = "both";
        const Outcome o = run_json(j);
        CHECK(o.status == 0);
        CHECK(fs::exists(dir / "report.json"));
        CHECK(fs::exists(dir / tables[k]));
    }
}

TEST_CASE("run: identical configs give identical JSON apart from the timestamp") {
    const Json base{{"command", "weyl"}, {"model", {{"kind", "galapon"}, {"n", 6}}}, {"vectors", "random"},
                    {"random_states", 3}, {"seed", 99}, {"s", 0.4}, {"t", 0.2}};
    std::vector<Json> reports;
    for (int k = 0; k < 2; ++k) {
        const fs::path dir = fresh_dir("idem" + std::to_string(k));
        Json j = base;
        j["output_dir"] = "same";
        RunConfig c = parse_config(j);
        const Bundle b = compute(c);
        c.output_dir = dir.string();
        write_outputs(c, b, assemble_report(parse_config(j), b, "T" + std::to_string(k)));
        Json r = Json::parse(slurp(dir / "report.json"));
        CHECK(r.at("metadata").at("timestamp") == "T" + std::to_string(k));
        r["metadata"].erase("timestamp");
        reports.push_back(r);
    }
    CHECK(reports[0].dump() == reports[1].dump());
}

TEST_CASE("write_outputs leaves nothing behind when a rename fails") {
    const fs::path dir = fresh_dir("partial");
    fs::create_directories(dir / "sweep.csv" / "blocker");
    RunConfig c = parse_config(Json{{"command", "sweep"}, {"sizes", {4, 8}}, {"format", "both"}, {"output_dir", dir.string()}});
    const Bundle b = compute(c);
    CHECK_THROWS(write_outputs(c, b, assemble_report(c, b, "now")));
    CHECK_FALSE(fs::exists(dir / "report.json"));
    CHECK_FALSE(fs::exists(dir / ".report.json.tmp"));
    CHECK_FALSE(fs::exists(dir / ".sweep.csv.tmp"));

    std::ostringstream out;
    std::ostringstream err;
    CHECK(run(c, out, err) == kExitIo);
}

TEST_CASE("binary: missing config exits 2 and writes nothing") {
    const fs::path dir = fresh_dir("bin_missing");
    fs::create_directories(dir);
    const std::string cmd = std::string("cd ") + dir.string() + " && TIMEOP_OUTPUT_DIR=" + dir.string() + " " +
                            TIMEOP_CLI_PATH + " run --config missing.json > /dev/null 2>&1";
    CHECK(shell(cmd) == 2);
    CHECK(count_files(dir) == 0);
}

TEST_CASE("binary: usage errors exit 2") {
    CHECK(shell(std::string(TIMEOP_CLI_PATH) + " > /dev/null 2>&1") == 2);
    CHECK(shell(std::string(TIMEOP_CLI_PATH) + " ccr --omega nope > /dev/null 2>&1") == 2);
    CHECK(shell(std::string(TIMEOP_CLI_PATH) + " ccr --model nope > /dev/null 2>&1") == 2);
    CHECK(shell(std::string(TIMEOP_CLI_PATH) + " --help > /dev/null 2>&1") == 0);
}

TEST_CASE("binary: ccr and sweep examples") {
    const fs::path dir = fresh_dir("bin_ok");
    const std::string ccr = std::string(TIMEOP_CLI_PATH) +
                            " ccr --model galapon --omega 1 --n 16 --vectors differences --output-dir " + dir.string() +
                            " > " + (dir.parent_path() / "timeop_test_ccr_stdout.txt").string();
    CHECK(shell(ccr) == 0);
    const Json report = Json::parse(slurp(dir / "report.json"));
    CHECK(report.at("results").at(0).at("measurements").size() == 136);
    CHECK(report.at("metadata").at("config").at("model").at("n") == 16);

    const fs::path sweep_dir = fresh_dir("bin_sweep");
    const std::string sweep = std::string(TIMEOP_CLI_PATH) +
                              " sweep --model galapon --omega 1 --sizes 64,128,256 --format csv --output-dir " +
                              sweep_dir.string() + " > /dev/null";
    CHECK(shell(sweep) == 0);
    CHECK(count_files(sweep_dir) == 1);
    const std::string csv = slurp(sweep_dir / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("binary: run --config executes a file") {
    const fs::path dir = fresh_dir("bin_config");
    fs::create_directories(dir);
    const Json cfg{{"command", "povm"}, {"model", {{"kind", "phase"}, {"n", 6}}}, {"bins", 6},
                   {"output_dir", (dir / "out").string()}, {"format", "both"}};
    std::ofstream(dir / "cfg.json") << cfg.dump();
    CHECK(shell(std::string(TIMEOP_CLI_PATH) + " run --config " + (dir / "cfg.json").string() + " > /dev/null") == 0);
    CHECK(fs::exists(dir / "out" / "report.json"));
    CHECK(fs::exists(dir / "out" / "povm.csv"));
}
