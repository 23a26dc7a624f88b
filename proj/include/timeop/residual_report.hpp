// residual_report.hpp: the common result record of every check
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace timeop {

// One gated number. A measurement passes iff value <= tolerance, so every
// check phrases its quantity as a defect (NaN never passes).
struct Measurement {
    std::string label;
    double value = 0.0;
    double tolerance = 0.0;
    std::map<std::string, double> aux;  // informational, not gated

    bool passed() const noexcept { return value <= tolerance; }
};

struct ResidualReport {
    std::string check_name;
    std::vector<Measurement> measurements;
    std::map<std::string, std::string> notes;
    std::vector<std::string> conventions;
    std::map<std::string, std::string> context;

    bool passed() const noexcept {
        if (measurements.empty()) return false;
        for (const auto& m : measurements) {
            if (!m.passed()) return false;
        }
        return true;
    }

    // Largest gated value, or NaN when empty.
    double max_value() const noexcept;
    // Throws std::out_of_range for an unknown label.
    const Measurement& at(std::string_view label) const;

    Measurement& add(std::string label, double value, double tolerance) {
        measurements.push_back(Measurement{std::move(label), value, tolerance, {}});
        return measurements.back();
    }
};

}  // namespace timeop
