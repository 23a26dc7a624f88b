#include "timeop/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace timeop {

double ResidualReport::max_value() const noexcept {
    if (measurements.empty()) return std::nan("");
    double worst = measurements.front().value;
    for (const auto& m : measurements) worst = std::max(worst, m.value);
    return worst;
}

const Measurement& ResidualReport::at(std::string_view label) const {
    for (const auto& m : measurements) {
        if (m.label == label) return m;
    }
    throw std::out_of_range("ResidualReport '" + check_name + "': no measurement '" + std::string(label) + "'");
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

Json to_json(const ComplexMatrix& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json rr = Json::array();
        Json ir = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    const auto rows = static_cast<Eigen::Index>(re.size());
    if (rows == 0 || im.size() != re.size()) throw std::invalid_argument("complex matrix json: bad shape");
    const auto cols = static_cast<Eigen::Index>(re.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& rr = re.at(static_cast<std::size_t>(r));
        const Json& ir = im.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(rr.size()) != cols || ir.size() != rr.size()) {
            throw std::invalid_argument("complex matrix json: ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = Complex(rr.at(static_cast<std::size_t>(c)).get<double>(),
                              ir.at(static_cast<std::size_t>(c)).get<double>());
        }
    }
    return m;
}

Json to_json(const ResidualReport& report) {
    Json measurements = Json::array();
    for (const auto& m : report.measurements) {
        Json entry{{"label", m.label}, {"value", m.value}, {"tolerance", m.tolerance}, {"passed", m.passed()}};
        if (!m.aux.empty()) entry["aux"] = m.aux;
        measurements.push_back(std::move(entry));
    }
    return Json{{"type", "residual_report"},
                {"check", report.check_name},
                {"passed", report.passed()},
                {"max_value", report.max_value()},
                {"measurements", std::move(measurements)},
                {"notes", report.notes},
                {"conventions", report.conventions},
                {"context", report.context}};
}

Json to_json(const SweepTable& table) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        rows.push_back(Json{{"N", r.size}, {"lambda_min", r.lambda_min}, {"lambda_max", r.lambda_max}});
    }
    return Json{{"type", "sweep_table"}, {"model", "galapon"}, {"omega", table.omega}, {"rows", std::move(rows)}};
}

Json to_json(const Povm& povm) {
    Json elements = Json::array();
    for (const auto& e : povm.elements) elements.push_back(to_json(e.matrix()));
    return Json{{"type", "povm"},
                {"construction", povm.construction.description},
                {"bin_edges", povm.partition.edges()},
                {"elements", std::move(elements)}};
}

std::string CsvTable::render() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            const std::string& cell = cells[k];
            if (cell.find_first_of(",\"\r\n") == std::string::npos) {
                out += cell;
                continue;
            }
            out += '"';
            for (char ch : cell) {
                if (ch == '"') out += '"';
                out += ch;
            }
            out += '"';
        }
        out += '\n';
    };
    emit(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::logic_error("csv table '" + name + "': ragged row");
        emit(row);
    }
    return out;
}

CsvTable sweep_csv(const SweepTable& table) {
    CsvTable csv{"sweep", {"N", "lambda_min", "lambda_max", "runtime_ms"}, {}};
    for (const auto& r : table.rows) {
        csv.rows.push_back({std::to_string(r.size), format_double(r.lambda_min), format_double(r.lambda_max),
                            format_double(r.runtime_ms)});
    }
    return csv;
}

CsvTable density_csv(std::span<const double> times, std::span<const double> density) {
    if (times.size() != density.size()) throw std::invalid_argument("density_csv: length mismatch");
    CsvTable csv{"arrival", {"t", "density"}, {}};
    for (std::size_t k = 0; k < times.size(); ++k) {
        csv.rows.push_back({format_double(times[k]), format_double(density[k])});
    }
    return csv;
}

}  // namespace timeop
