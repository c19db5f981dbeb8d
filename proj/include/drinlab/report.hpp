#pragma once

#include <string>
#include <vector>

namespace drinlab {

/// Deterministic text form of a double (shortest round-trip via %.10g).
std::string format_double(double v);

/// Tabular report with a config comment line, optional timestamp, data rows
/// and per-assertion summary lines.  Rendering is byte-stable: identical
/// contents produce identical CSV and JSON bytes.
struct ReportDoc {
    std::string config;                          // rendered after "# config: "
    std::string timestamp;                       // empty = suppressed
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, bool>> checks; // name -> pass

    bool all_checks_pass() const;
    std::string to_csv() const;
    std::string to_json() const;
};

std::string now_iso8601();

} // namespace drinlab
