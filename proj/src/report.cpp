#include "drinlab/report.hpp"

#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace drinlab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

bool ReportDoc::all_checks_pass() const {
    for (const auto& [name, ok] : checks)
        if (!ok) return false;
    return true;
}

namespace {

std::string csv_cell(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string ReportDoc::to_csv() const {
    std::string out = "# config: " + config + "\n";
    if (!timestamp.empty()) out += "# generated: " + timestamp + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ",";
        out += csv_cell(columns[i]);
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += csv_cell(row[i]);
        }
        out += "\n";
    }
    for (const auto& [name, ok] : checks)
        out += std::string("# assert ") + name + ": " + (ok ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string ReportDoc::to_json() const {
    nlohmann::ordered_json j;
    j["config"] = config;
    if (!timestamp.empty()) j["generated"] = timestamp;
    j["columns"] = columns;
    j["rows"] = rows;
    auto& checks_j = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& [name, ok] : checks)
        checks_j.push_back({{"name", name}, {"pass", ok}});
    return j.dump(2) + "\n";
}

std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

} // namespace drinlab
