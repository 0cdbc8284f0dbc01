#include "ringtherm/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ringtherm/error.hpp"

namespace ringtherm {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return buf;
}

double round_to_output(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

void write_sweep_csv(std::ostream& os, const SweepResult& sweep, const LinearFit& fit,
                     bool frequency) {
    os << (frequency ? "temp_C,f_osc_hz,fit_hz,residual_hz\n" : "temp_C,t_osc_s,fit_s,residual_s\n");
    for (std::size_t i = 0; i < sweep.samples.size(); ++i) {
        const auto& s = sweep.samples[i];
        os << format_number(s.temp_c) << ',' << format_number(s.value) << ','
           << format_number(fit.intercept + fit.slope * s.temp_c) << ','
           << format_number(fit.residuals[i]) << '\n';
    }
}

nlohmann::json fit_summary(const SweepResult& sweep, const LinearFit& fit, bool frequency) {
    return {
        {"ring", sweep.ring},
        {"fitted", frequency ? "f_osc_hz" : "t_osc_s"},
        {"samples", sweep.samples.size()},
        {"t_min_C", round_to_output(sweep.samples.front().temp_c)},
        {"t_max_C", round_to_output(sweep.samples.back().temp_c)},
        {"slope", round_to_output(fit.slope)},
        {"intercept", round_to_output(fit.intercept)},
        {"nl_percent", round_to_output(fit.nl_percent)},
        {"sensitivity", round_to_output(fit.slope)},
        {"max_abs_residual", round_to_output(fit.max_abs_residual)},
        {"full_scale_span", round_to_output(fit.full_scale_span)},
        {"range_exceeded", sweep.range_exceeded},
    };
}

void write_report_csv(std::ostream& os, const ExplorationReport& report) {
    os << "design_id,nl_percent,sensitivity_s_per_C,t_osc_27C_s\n";
    for (const auto& r : report.rows)
        os << r.design_id << ',' << format_number(r.nl_percent) << ','
           << format_number(r.sensitivity) << ',' << format_number(r.t_osc_27c) << '\n';
}

void write_report_table(std::ostream& os, const ExplorationReport& report, std::size_t top) {
    std::size_t width = 9;
    for (const auto& r : report.rows) width = std::max(width, r.design_id.size());
    const auto shown = std::min(top, report.rows.size());
    char line[256];
    std::snprintf(line, sizeof line, "%4s  %-*s  %14s  %18s  %18s\n", "rank",
                  static_cast<int>(width), "design_id", "nl_percent", "sensitivity_s/C",
                  "t_osc_27C_s");
    os << line;
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& r = report.rows[i];
        std::snprintf(line, sizeof line, "%4zu  %-*s  %14.8f  %18.11e  %18.11e\n", i + 1,
                      static_cast<int>(width), r.design_id.c_str(), r.nl_percent,
                      r.sensitivity, r.t_osc_27c);
        os << line;
    }
    if (shown < report.rows.size())
        os << "(" << report.rows.size() - shown << " more rows in CSV)\n";
}

namespace {

std::string trim(std::string s) {
    const auto ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

double parse_field_number(const std::string& text, std::size_t line) {
    const auto t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw Error(ErrorKind::Schema,
                    "field CSV line " + std::to_string(line) + ": bad number '" + t + "'");
    return v;
}

}  // namespace

std::vector<FieldPoint> read_field_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<FieldPoint> points;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string col; std::getline(ss, col, ',');) cols.push_back(trim(col));
        if (!header) {
            if (cols != std::vector<std::string>{"x", "y", "temp_C"})
                throw Error(ErrorKind::Schema, "field CSV header must be 'x,y,temp_C'");
            header = true;
            continue;
        }
        if (cols.size() != 3)
            throw Error(ErrorKind::Schema,
                        "field CSV line " + std::to_string(lineno) + ": expected 3 columns");
        points.push_back({{parse_field_number(cols[0], lineno), parse_field_number(cols[1], lineno)},
                          parse_field_number(cols[2], lineno)});
    }
    if (!header) throw Error(ErrorKind::Schema, "field CSV is empty");
    return points;
}

void write_scan_csv(std::ostream& os, const ThermalMap& map) {
    os << "x,y,measured_C,true_C,raw\n";
    for (const auto& r : map.readings)
        os << format_number(r.pos.x) << ',' << format_number(r.pos.y) << ','
           << format_number(r.measured_c) << ',' << format_number(r.true_c) << ',' << r.raw
           << '\n';
}

}  // namespace ringtherm
