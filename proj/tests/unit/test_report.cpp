#include "helpers.hpp"

#include "timeop/povm.hpp"
#include "timeop/report.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>

using namespace timeop;

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 200; ++k) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        const std::string s = format_double(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("complex matrix JSON round-trip is exact") {
    std::mt19937_64 rng(42);
    const ComplexMatrix a = testing::random_hermitian(5, rng);
    const Json j = to_json(a);
    CHECK(j.at("re").size() == 5);
    CHECK(j.at("im").at(0).size() == 5);
    const ComplexMatrix b = complex_matrix_from_json(Json::parse(j.dump()));
    CHECK(a == b);
    CHECK_THROWS_AS(complex_matrix_from_json(Json{{"re", Json::array()}, {"im", Json::array()}}), std::invalid_argument);
    CHECK_THROWS_AS(complex_matrix_from_json(Json{{"re", {{1, 2}, {3}}}, {"im", {{0, 0}, {0}}}}), std::invalid_argument);
}

TEST_CASE("residual report JSON names check, tolerances and outcome") {
    ResidualReport r;
    r.check_name = "demo";
    r.context["model"] = "galapon";
    r.add("a", 1e-13, 1e-12).aux["extra"] = 2.0;
    r.add("b", 0.5, 0.1);
    const Json j = to_json(r);
    CHECK(j.at("check") == "demo");
    CHECK(j.at("passed") == false);
    CHECK(j.at("context").at("model") == "galapon");
    CHECK(j.at("measurements").at(0).at("tolerance") == 1e-12);
    CHECK(j.at("measurements").at(0).at("aux").at("extra") == 2.0);
    CHECK(j.at("measurements").at(1).at("passed") == false);
    CHECK(j.at("max_value") == 0.5);
}

TEST_CASE("residual report semantics") {
    ResidualReport r;
    CHECK_FALSE(r.passed());
    CHECK(std::isnan(r.max_value()));
    r.add("x", std::nan(""), 1.0);
    CHECK_FALSE(r.passed());
    CHECK_THROWS_AS(r.at("y"), std::out_of_range);
    ResidualReport ok;
    ok.add("x", 1.0, 1.0);
    CHECK(ok.passed());
}

TEST_CASE("sweep serialisation leaves runtimes out of JSON but keeps them in CSV") {
    SweepTable t{1.0, {{64, -3.0, 3.0, 12.5}, {128, -3.1, 3.1, 40.0}}};
    const Json j = to_json(t);
    CHECK(j.at("rows").size() == 2);
    CHECK_FALSE(j.at("rows").at(0).contains("runtime_ms"));
    const std::string csv = sweep_csv(t).render();
    CHECK(csv == "N,lambda_min,lambda_max,runtime_ms\n64,-3,3,12.5\n128,-3.1,3.1,40\n");
}

TEST_CASE("CSV rendering: header, newline, quoting and ragged rows") {
    CsvTable t{"x", {"a", "b"}, {{"1", "two, three"}, {"say \"hi\"", "4"}}};
    CHECK(t.render() == "a,b\n1,\"two, three\"\n\"say \"\"hi\"\"\",4\n");
    CsvTable empty{"e", {"t", "density"}, {}};
    CHECK(empty.render() == "t,density\n");
    t.rows.push_back({"only"});
    CHECK_THROWS_AS(t.render(), std::logic_error);

    const std::vector<double> times{0.0, 0.5};
    const std::vector<double> dens{1.0, 0.25};
    CHECK(density_csv(times, dens).render() == "t,density\n0,1\n0.5,0.25\n");
    const std::vector<double> short_dens{1.0};
    CHECK_THROWS_AS(density_csv(times, short_dens), std::invalid_argument);
}

TEST_CASE("POVM JSON carries edges and nested re/im elements") {
    const Povm p = build_phase_povm(2, OutcomePartition::uniform_period(3));
    const Json j = to_json(p);
    CHECK(j.at("bin_edges").size() == 4);
    CHECK(j.at("elements").size() == 3);
    CHECK(complex_matrix_from_json(j.at("elements").at(1)) == p.elements[1].matrix());
}
