// report.hpp: JSON and CSV serialisation of results
//
// Complex matrices serialise as {"re": [[...]], "im": [[...]]}; floats use the
// shortest decimal form that round-trips. CSV tables always carry a header
// row and end with a newline; cells are quoted RFC 4180 style when
// they need it.
#pragma once

#include "timeop/operator_core.hpp"
#include "timeop/povm.hpp"
#include "timeop/residual_report.hpp"
#include "timeop/verification.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace timeop {

using Json = nlohmann::json;

std::string format_double(double value);

Json to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j);
Json to_json(const ResidualReport& report);
// Wall-clock runtimes are left out so that reports are reproducible.
Json to_json(const SweepTable& table);
Json to_json(const Povm& povm);

struct CsvTable {
    std::string name;  // file stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Throws std::logic_error if a row width differs from the header.
    std::string render() const;
};

CsvTable sweep_csv(const SweepTable& table);
CsvTable density_csv(std::span<const double> times, std::span<const double> density);

}  // namespace timeop
