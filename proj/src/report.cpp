#include "fusionkit/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

using json = nlohmann::json;

bool Report::all_passed() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

std::string Report::overall() const
{
    if (!error_kind.empty())
        return "error";
    return all_passed() ? "pass" : "fail";
}

void add_checks(Report& report, const ValidationReport& v, bool with_residual)
{
    for (const auto& c : v.checks) {
        ReportCheck rc{c.name, c.passed, std::nullopt, c.witness, c.detail};
        if (with_residual && std::isfinite(c.residual))
            rc.residual = c.residual;
        report.checks.push_back(std::move(rc));
    }
}

json report_to_json(const Report& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"residual", c.residual ? json(*c.residual) : json(nullptr)},
                          {"witness", c.witness},
                          {"detail", c.detail}});
    json inputs = json::array();
    for (const auto& in : r.inputs)
        inputs.push_back({{"path", in.path}, {"fnv1a64", in.fnv1a64}});
    json error = nullptr;
    if (!r.error_kind.empty())
        error = {{"kind", r.error_kind}, {"message", r.error_message}};
    return json{{"tool", "fusionkit"},
                {"command", r.command},
                {"argv", r.argv},
                {"inputs", inputs},
                {"checks", checks},
                {"summary", r.summary},
                {"overall", r.overall()},
                {"exit_code", r.exit_code},
                {"error", error},
                {"data", r.data},
                {"wall_time", r.wall_time}};
}

Report report_from_json(const json& j)
{
    Report r;
    try {
        r.command = j.at("command").get<std::string>();
        r.argv = j.at("argv").get<std::vector<std::string>>();
        for (const auto& in : j.at("inputs"))
            r.inputs.push_back({in.at("path").get<std::string>(), in.at("fnv1a64").get<std::string>()});
        for (const auto& c : j.at("checks")) {
            ReportCheck rc;
            rc.name = c.at("name").get<std::string>();
            rc.passed = c.at("passed").get<bool>();
            if (!c.at("residual").is_null())
                rc.residual = c.at("residual").get<double>();
            rc.witness = c.at("witness").get<std::vector<int>>();
            rc.detail = c.at("detail").get<std::string>();
            r.checks.push_back(std::move(rc));
        }
        r.summary = j.at("summary").get<std::vector<std::string>>();
        if (!j.at("error").is_null()) {
            r.error_kind = j.at("error").at("kind").get<std::string>();
            r.error_message = j.at("error").at("message").get<std::string>();
        }
        r.exit_code = j.at("exit_code").get<int>();
        r.data = j.at("data");
        r.wall_time = j.at("wall_time").get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("report: ") + e.what());
    }
    if (j.contains("overall") && j.at("overall") != r.overall())
        throw InputError("report: overall status disagrees with its checks");
    return r;
}

namespace {

std::string upper(std::string s)
{
    for (char& c : s)
        c = char(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

void render_value(std::ostream& os, const json& v, int indent);

void render_object(std::ostream& os, const json& obj, int indent)
{
    for (const auto& [k, v] : obj.items()) {
        // long values (tensors, case lists) are left to the JSON report
        if (v.dump().size() > 160)
            continue;
        os << std::string(indent, ' ') << k << ":";
        if (v.is_object() && !v.empty()) {
            os << "\n";
            render_object(os, v, indent + 2);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << "\n";
            for (const auto& item : v) {
                os << std::string(indent + 2, ' ') << "-\n";
                render_object(os, item, indent + 4);
            }
        } else {
            os << " ";
            render_value(os, v, indent);
            os << "\n";
        }
    }
}

void render_value(std::ostream& os, const json& v, int)
{
    if (v.is_string())
        os << v.get<std::string>();
    else
        os << v.dump();
}

} // namespace

std::string render_human(const Report& r)
{
    std::ostringstream os;
    os << "fusionkit";
    for (const auto& a : r.argv)
        os << ' ' << a;
    os << "\n";
    for (const auto& in : r.inputs)
        os << "input " << in.path << " (fnv1a64 " << in.fnv1a64 << ")\n";
    if (!r.checks.empty()) {
        std::size_t width = 0;
        for (const auto& c : r.checks)
            width = std::max(width, c.name.size());
        for (const auto& c : r.checks) {
            os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
            const bool more = c.residual || !c.witness.empty() || (!c.passed && !c.detail.empty());
            if (more)
                os << std::string(width - c.name.size(), ' ');
            if (c.residual)
                os << "  residual " << std::setprecision(3) << std::scientific << *c.residual
                   << std::defaultfloat;
            if (!c.witness.empty()) {
                os << "  witness (";
                for (std::size_t i = 0; i < c.witness.size(); ++i)
                    os << (i ? "," : "") << c.witness[i];
                os << ")";
            }
            if (!c.passed && !c.detail.empty())
                os << "  " << c.detail;
            os << "\n";
        }
    }
    if (!r.summary.empty()) {
        os << "\n";
        for (const auto& line : r.summary)
            os << line << "\n";
    }
    if (!r.data.empty()) {
        os << "\n";
        render_object(os, r.data, 0);
    }
    if (!r.error_kind.empty())
        os << "\nerror (" << r.error_kind << "): " << r.error_message << "\n";
    os << "\noverall: " << upper(r.overall()) << "  (exit " << r.exit_code << ", "
       << std::setprecision(3) << std::fixed << r.wall_time << " s)\n";
    return os.str();
}

} // namespace fusionkit
