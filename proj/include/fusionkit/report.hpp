#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fusionkit/check.hpp"

namespace fusionkit {

struct ReportCheck {
    std::string name;
    bool passed = true;
    std::optional<double> residual;
    std::vector<int> witness;
    std::string detail;

    friend bool operator==(const ReportCheck&, const ReportCheck&) = default;
};

struct InputDigest {
    std::string path;
    std::string fnv1a64;

    friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

/// Outcome of one CLI command.
struct Report {
    std::string command;
    std::vector<std::string> argv;
    std::vector<InputDigest> inputs;
    std::vector<ReportCheck> checks;
    std::vector<std::string> summary; ///< headline lines for the human rendering
    nlohmann::json data = nlohmann::json::object();
    std::string error_kind; ///< empty, "usage", "input", "inconsistency", "capacity", "numerical"
    std::string error_message;
    int exit_code = 0;
    double wall_time = 0.0;

    bool all_passed() const;
    /// "pass", "fail" or "error"
    std::string overall() const;

    friend bool operator==(const Report&, const Report&) = default;
};

/// Appends every check of a validation report.
void add_checks(Report& report, const ValidationReport& v, bool with_residual = false);

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);
std::string render_human(const Report& report);

} // namespace fusionkit
