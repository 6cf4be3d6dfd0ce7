#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "farey/statistics.hpp"
#include "farey/verification.hpp"

namespace farey {

enum class OutputFormat { jsonl, csv };

// 17 significant digits: enough to round-trip any binary64 exactly.
inline std::string decimal17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

// JSON has no NaN literal; absent values (skipped checks) serialize as null
// in JSONL and as empty cells in CSV.
inline std::string json_number(double v) { return std::isfinite(v) ? decimal17(v) : "null"; }
inline std::string csv_number(double v) { return std::isfinite(v) ? decimal17(v) : ""; }

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "skip";
    }
}

inline const char* class_name(CheckClass c) {
    return c == CheckClass::observation ? "observation" : "theorem";
}

}  // namespace detail

// --- verification reports ---------------------------------------------
// One record per (k, check). The trailing class/status/reason columns carry
// the observation-class marker and skipped-with-reason entries.

inline constexpr const char* kReportCsvHeader =
    "k,check_name,lower,actual,upper,margin,pass,backend,elapsed_ms,class,status,reason";

inline void write_report_row(std::ostream& os, Level k, const CheckResult& c,
                             const std::string& backend, OutputFormat format,
                             bool timings = true) {
    using namespace detail;
    const double elapsed = timings ? c.elapsed_ms : 0.0;
    const bool pass = !c.failed();
    if (format == OutputFormat::jsonl) {
        os << "{\"k\":" << k << ",\"check_name\":\"" << c.name << "\""
           << ",\"lower\":" << json_number(c.lower) << ",\"actual\":" << json_number(c.actual)
           << ",\"upper\":" << json_number(c.upper) << ",\"margin\":" << json_number(c.margin)
           << ",\"pass\":" << (pass ? "true" : "false") << ",\"backend\":\"" << backend << "\""
           << ",\"elapsed_ms\":" << json_number(elapsed) << ",\"class\":\"" << class_name(c.check_class)
           << "\",\"status\":\"" << status_name(c.status) << "\",\"reason\":\"" << c.reason
           << "\"}\n";
    } else {
        os << k << ',' << c.name << ',' << csv_number(c.lower) << ',' << csv_number(c.actual)
           << ',' << csv_number(c.upper) << ',' << csv_number(c.margin) << ','
           << (pass ? "true" : "false") << ',' << backend << ',' << csv_number(elapsed) << ','
           << class_name(c.check_class) << ',' << status_name(c.status) << ',' << c.reason
           << '\n';
    }
}

inline void write_reports(std::ostream& os, std::span<const BoundReport> reports,
                          OutputFormat format, bool timings = true) {
    if (format == OutputFormat::csv) os << kReportCsvHeader << '\n';
    for (const auto& report : reports)
        for (const auto& check : report.checks)
            write_report_row(os, report.k, check, report.backend, format, timings);
}

// --- level statistics ---------------------------------------------------
// Exact columns hold "numerator/denominator" strings in rational mode and
// stay empty under the floating backend.

inline constexpr const char* kLevelCsvHeader =
    "k,even_sum,odd_sum,s_k,extra_interval,pair_count,"
    "even_sum_exact,odd_sum_exact,s_k_exact,extra_interval_exact";

inline std::string exact_string(const Value& v) {
    return v.is_exact() ? rational_string(v.rational()) : std::string();
}

inline void write_level_row(std::ostream& os, const LevelStatistics& s, OutputFormat format) {
    if (format == OutputFormat::jsonl) {
        os << "{\"k\":" << s.k << ",\"even_sum\":" << decimal17(s.even_sum.as_double())
           << ",\"odd_sum\":" << decimal17(s.odd_sum.as_double())
           << ",\"s_k\":" << decimal17(s.s_k.as_double())
           << ",\"extra_interval\":" << decimal17(s.extra_interval.as_double())
           << ",\"pair_count\":" << s.pair_count;
        if (s.even_sum.is_exact()) {
            os << ",\"even_sum_exact\":\"" << exact_string(s.even_sum) << "\""
               << ",\"odd_sum_exact\":\"" << exact_string(s.odd_sum) << "\""
               << ",\"s_k_exact\":\"" << exact_string(s.s_k) << "\""
               << ",\"extra_interval_exact\":\"" << exact_string(s.extra_interval) << "\"";
        }
        os << "}\n";
    } else {
        os << s.k << ',' << decimal17(s.even_sum.as_double()) << ','
           << decimal17(s.odd_sum.as_double()) << ',' << decimal17(s.s_k.as_double()) << ','
           << decimal17(s.extra_interval.as_double()) << ',' << s.pair_count << ','
           << exact_string(s.even_sum) << ',' << exact_string(s.odd_sum) << ','
           << exact_string(s.s_k) << ',' << exact_string(s.extra_interval) << '\n';
    }
}

inline void write_levels(std::ostream& os, std::span<const LevelStatistics> stats,
                         OutputFormat format) {
    if (format == OutputFormat::csv) os << kLevelCsvHeader << '\n';
    for (const auto& s : stats) write_level_row(os, s, format);
}

// --- thermodynamic scan --------------------------------------------------

inline constexpr const char* kThermoCsvHeader =
    "k,beta,z_farey,z_knauf,sigma,f_estimate,z_farey_exact,z_knauf_exact,sigma_exact";

inline void write_thermo_row(std::ostream& os, const ThermoPoint& p, OutputFormat format) {
    if (format == OutputFormat::jsonl) {
        os << "{\"k\":" << p.k << ",\"beta\":" << decimal17(p.beta)
           << ",\"z_farey\":" << decimal17(p.z_farey.as_double())
           << ",\"z_knauf\":" << decimal17(p.z_knauf.as_double())
           << ",\"sigma\":" << decimal17(p.sigma.as_double())
           << ",\"f_estimate\":" << detail::json_number(p.f_estimate);
        if (p.z_farey.is_exact()) {
            os << ",\"z_farey_exact\":\"" << exact_string(p.z_farey) << "\""
               << ",\"z_knauf_exact\":\"" << exact_string(p.z_knauf) << "\""
               << ",\"sigma_exact\":\"" << exact_string(p.sigma) << "\"";
        }
        os << "}\n";
    } else {
        os << p.k << ',' << decimal17(p.beta) << ',' << decimal17(p.z_farey.as_double()) << ','
           << decimal17(p.z_knauf.as_double()) << ',' << decimal17(p.sigma.as_double()) << ','
           << detail::csv_number(p.f_estimate) << ',' << exact_string(p.z_farey) << ','
           << exact_string(p.z_knauf) << ',' << exact_string(p.sigma) << '\n';
    }
}

inline void write_thermo(std::ostream& os, std::span<const ThermoPoint> points,
                         OutputFormat format) {
    if (format == OutputFormat::csv) os << kThermoCsvHeader << '\n';
    for (const auto& p : points) write_thermo_row(os, p, format);
}

}  // namespace farey
