#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringtherm/ring_oscillator.hpp"

namespace ringtherm {

// Reference-clock edges are counted while m_periods oscillator periods elapse.
struct CounterSpec {
    double f_ref = 100e6;              // Hz
    std::uint64_t m_periods = 1 << 20;  // oscillator periods per measurement
};

void validate(const CounterSpec& spec);

// floor(m * T * f_ref). Throws Error{Resolution} when the count is zero.
std::uint64_t count_measurement(double true_period, const CounterSpec& spec);

// raw / (m * f_ref)
double estimated_period(std::uint64_t raw, const CounterSpec& spec);

struct SelfHeatSpec {
    bool enabled = false;
    double r_th = 100.0;       // K/W
    double c_switch = 50e-15;  // F
};

void validate(const SelfHeatSpec& heat);

// Fixed point of T = ambient + r_th * c_switch * vdd^2 * f_osc(T) by damped
// iteration (0.5). Throws Error{Divergence} after 100 iterations.
TemperatureC effective_temperature(TemperatureC ambient, const RingConfig& ring,
                                   const Library& lib, const SelfHeatSpec& heat);

struct CalibrationPoint {
    double temp_c = 0.0;
    std::uint64_t raw = 0;
};

// temp = c0 + c1 * raw
struct Calibration {
    std::string ring;
    CounterSpec spec;
    CalibrationPoint p1;
    CalibrationPoint p2;
    double c0 = 0.0;  // C
    double c1 = 0.0;  // C/count
};

Calibration calibrate(const RingConfig& ring, const Library& lib, const CounterSpec& spec,
                      TemperatureC t1, TemperatureC t2, const SelfHeatSpec& heat);

struct MeasurementResult {
    std::uint64_t raw = 0;
    double t_hat = 0.0;          // C
    double busy_duration = 0.0;  // s
    double true_temp = 0.0;      // C, effective junction temperature
};

// Throws Error{Precondition} if cal was made for another ring or counter.
MeasurementResult measure(const RingConfig& ring, const Library& lib, const CounterSpec& spec,
                          const Calibration& cal, TemperatureC ambient,
                          const SelfHeatSpec& heat);

enum class ControllerPhase { Idle, Counting, Ready };
enum class ControllerInput { Start, Tick, Reset };

struct ControllerState {
    ControllerPhase phase = ControllerPhase::Idle;
    bool oscillator_enabled = false;
    bool busy = false;
    bool data_valid = false;
    std::uint64_t elapsed_periods = 0;

    friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

// IDLE -start-> COUNTING -tick x m-> READY -reset-> IDLE; everything else
// leaves the state unchanged.
ControllerState step_controller(const ControllerState& state, ControllerInput input,
                                std::uint64_t m_periods);

bool consistent(const ControllerState& state);

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend auto operator<=>(const Position&, const Position&) = default;
};

struct SensorSite {
    Position pos;
    std::string ring;
};

struct FieldPoint {
    Position pos;
    double temp_c = 0.0;
};

struct Reading {
    Position pos;
    double measured_c = 0.0;
    double true_c = 0.0;
    std::uint64_t raw = 0;
    bool ok = false;
    std::string error;
};

struct ThermalMap {
    std::vector<SensorSite> sensors;
    std::vector<FieldPoint> field;
    std::vector<Reading> readings;
};

struct ScanEvent {
    std::size_t sensor = 0;
    bool enable = false;
};

struct ScanOutcome {
    ThermalMap map;
    std::vector<ScanEvent> log;
};

// One oscillator at a time, in sensor order. cal_per_sensor aligns with
// map.sensors; a missing or mismatched calibration flags that row and the
// scan continues.
ScanOutcome map_scan(const ThermalMap& map, const std::vector<RingConfig>& rings,
                     const Library& lib, const CounterSpec& spec,
                     const std::vector<std::optional<Calibration>>& cal_per_sensor,
                     const SelfHeatSpec& heat);

// Largest number of simultaneously enabled oscillators in a scan log.
std::size_t max_concurrent_enabled(const std::vector<ScanEvent>& log);

}  // namespace ringtherm
