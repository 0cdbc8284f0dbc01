#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ringtherm/explorer.hpp"
#include "ringtherm/sensor_unit.hpp"

namespace ringtherm {

// Scientific notation, 12 significant digits.
std::string format_number(double value);

// Value as it would round-trip through format_number.
double round_to_output(double value);

// temp_C,t_osc_s,fit_s,residual_s (or f_osc_hz,fit_hz,residual_hz).
void write_sweep_csv(std::ostream& os, const SweepResult& sweep, const LinearFit& fit,
                     bool frequency);

nlohmann::json fit_summary(const SweepResult& sweep, const LinearFit& fit, bool frequency);

// design_id,nl_percent,sensitivity_s_per_C,t_osc_27C_s
void write_report_csv(std::ostream& os, const ExplorationReport& report);
void write_report_table(std::ostream& os, const ExplorationReport& report, std::size_t top);

// x,y,temp_C with header. Throws Error{Schema}.
std::vector<FieldPoint> read_field_csv(std::istream& is);

// x,y,measured_C,true_C,raw
void write_scan_csv(std::ostream& os, const ThermalMap& map);

}  // namespace ringtherm
