#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ringtherm/sensor_unit.hpp"

namespace ringtherm {

inline constexpr int kSchemaVersion = 1;

// Sections: "process", "library", "rings", "counter", "selfheat", plus the
// required "schema_version". Unknown keys are rejected with Error{Schema}.
// Widths in um, capacitance densities in F/um, everything else SI.
struct Config {
    Library library;
    std::vector<RingConfig> rings = default_rings();
    CounterSpec counter;
    SelfHeatSpec selfheat;

    // Throws Error{Lookup}.
    const RingConfig& ring(std::string_view name) const;
};

Config parse_config(const nlohmann::json& doc);
Config load_config(const std::filesystem::path& path);

nlohmann::json to_json(const Calibration& cal);
// Throws Error{Schema} for missing/unknown fields or c0/c1 that disagree
// with the stored points.
Calibration calibration_from_json(const nlohmann::json& doc);

}  // namespace ringtherm
