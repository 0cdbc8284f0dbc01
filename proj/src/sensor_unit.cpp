#include "ringtherm/sensor_unit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "ringtherm/error.hpp"

namespace ringtherm {

void validate(const CounterSpec& spec) {
    if (!(spec.f_ref > 0.0) || !std::isfinite(spec.f_ref))
        throw Error(ErrorKind::Domain, "reference clock frequency must be positive");
    if (spec.m_periods < 1) throw Error(ErrorKind::Domain, "m_periods must be at least 1");
}

std::uint64_t count_measurement(double true_period, const CounterSpec& spec) {
    validate(spec);
    if (!(true_period > 0.0) || !std::isfinite(true_period))
        throw Error(ErrorKind::Domain, "oscillator period must be positive");
    const long double x = static_cast<long double>(spec.m_periods) *
                          static_cast<long double>(true_period) *
                          static_cast<long double>(spec.f_ref);
    if (x >= 0x1p63L) throw Error(ErrorKind::Resolution, "counter overflow");
    // Inputs carry double rounding; a product within a few ulps of an integer
    // is that integer (2 ns at 100 MHz over 1000 periods is 200, not 199).
    const long double nearest = std::nearbyint(x);
    const long double tol = nearest * 8.0L * std::numeric_limits<double>::epsilon();
    const long double raw = std::fabs(x - nearest) <= tol ? nearest : std::floor(x);
    if (raw < 1.0L)
        throw Error(ErrorKind::Resolution,
                    "zero reference edges in the measurement window; raise f_ref or m_periods");
    return static_cast<std::uint64_t>(raw);
}

double estimated_period(std::uint64_t raw, const CounterSpec& spec) {
    return static_cast<double>(raw) /
           (static_cast<double>(spec.m_periods) * spec.f_ref);
}

void validate(const SelfHeatSpec& heat) {
    if (!(heat.r_th >= 0.0)) throw Error(ErrorKind::Domain, "r_th must be non-negative");
    if (!(heat.c_switch >= 0.0)) throw Error(ErrorKind::Domain, "c_switch must be non-negative");
}

TemperatureC effective_temperature(TemperatureC ambient, const RingConfig& ring,
                                   const Library& lib, const SelfHeatSpec& heat) {
    validate(heat);
    validate(ring, lib);
    if (!heat.enabled || heat.r_th == 0.0) return ambient;

    constexpr int kMaxIterations = 100;
    constexpr double kTolerance = 1e-9;  // K
    constexpr double kDamping = 0.5;
    const double vdd = lib.process().vdd;
    const double coupling = heat.r_th * heat.c_switch * vdd * vdd;

    double t = ambient.value;
    for (int it = 0; it < kMaxIterations; ++it) {
        const double residual = ambient.value + coupling * frequency(ring, {t}, lib) - t;
        if (!std::isfinite(residual)) break;
        if (std::abs(residual) < kTolerance) return {t};
        t += kDamping * residual;
    }
    throw Error(ErrorKind::Divergence,
                "self-heating fixed point for ring '" + ring.name + "' did not converge in " +
                    std::to_string(kMaxIterations) + " iterations (r_th too large?)");
}

namespace {

std::uint64_t raw_at(const RingConfig& ring, const Library& lib, const CounterSpec& spec,
                     TemperatureC ambient, const SelfHeatSpec& heat) {
    const auto t_eff = effective_temperature(ambient, ring, lib, heat);
    return count_measurement(period(ring, t_eff, lib).t_osc, spec);
}

}  // namespace

Calibration calibrate(const RingConfig& ring, const Library& lib, const CounterSpec& spec,
                      TemperatureC t1, TemperatureC t2, const SelfHeatSpec& heat) {
    if (t1 == t2) throw Error(ErrorKind::Precondition, "calibration points must differ");
    Calibration cal;
    cal.ring = ring.name;
    cal.spec = spec;
    cal.p1 = {t1.value, raw_at(ring, lib, spec, t1, heat)};
    cal.p2 = {t2.value, raw_at(ring, lib, spec, t2, heat)};
    if (cal.p1.raw == cal.p2.raw)
        throw Error(ErrorKind::Calibration,
                    "ring '" + ring.name + "' gives the same count (" +
                        std::to_string(cal.p1.raw) + ") at both calibration points");
    cal.c1 = (t2.value - t1.value) /
             (static_cast<double>(cal.p2.raw) - static_cast<double>(cal.p1.raw));
    cal.c0 = t1.value - cal.c1 * static_cast<double>(cal.p1.raw);
    return cal;
}

MeasurementResult measure(const RingConfig& ring, const Library& lib, const CounterSpec& spec,
                          const Calibration& cal, TemperatureC ambient,
                          const SelfHeatSpec& heat) {
    if (cal.ring != ring.name)
        throw Error(ErrorKind::Precondition,
                    "calibration is for ring '" + cal.ring + "', not '" + ring.name + "'");
    if (cal.spec.f_ref != spec.f_ref || cal.spec.m_periods != spec.m_periods)
        throw Error(ErrorKind::Precondition,
                    "calibration counter settings differ from the measurement counter");
    const auto t_eff = effective_temperature(ambient, ring, lib, heat);
    const double t_osc = period(ring, t_eff, lib).t_osc;
    MeasurementResult result;
    result.raw = count_measurement(t_osc, spec);
    result.t_hat = cal.c0 + cal.c1 * static_cast<double>(result.raw);
    result.busy_duration = static_cast<double>(spec.m_periods) * t_osc;
    result.true_temp = t_eff.value;
    return result;
}

ControllerState step_controller(const ControllerState& state, ControllerInput input,
                                std::uint64_t m_periods) {
    ControllerState next = state;
    switch (state.phase) {
        case ControllerPhase::Idle:
            if (input == ControllerInput::Start)
                next = {ControllerPhase::Counting, true, true, false, 0};
            break;
        case ControllerPhase::Counting:
            if (input == ControllerInput::Tick) {
                next.elapsed_periods = state.elapsed_periods + 1;
                if (next.elapsed_periods >= m_periods)
                    next = {ControllerPhase::Ready, false, false, true, next.elapsed_periods};
            }
            break;
        case ControllerPhase::Ready:
            if (input == ControllerInput::Reset) next = ControllerState{};
            break;
    }
    return next;
}

bool consistent(const ControllerState& s) {
    const bool counting = s.phase == ControllerPhase::Counting;
    const bool ready = s.phase == ControllerPhase::Ready;
    return s.oscillator_enabled == counting && s.busy == counting && s.data_valid == ready &&
           !(s.data_valid && s.busy);
}

ScanOutcome map_scan(const ThermalMap& map, const std::vector<RingConfig>& rings,
                     const Library& lib, const CounterSpec& spec,
                     const std::vector<std::optional<Calibration>>& cal_per_sensor,
                     const SelfHeatSpec& heat) {
    std::set<Position> positions;
    for (const auto& s : map.sensors)
        if (!positions.insert(s.pos).second)
            throw Error(ErrorKind::Precondition, "duplicate sensor position (" +
                                                     std::to_string(s.pos.x) + ", " +
                                                     std::to_string(s.pos.y) + ")");

    ScanOutcome out;
    out.map = map;
    out.map.readings.clear();
    out.map.readings.reserve(map.sensors.size());

    for (std::size_t i = 0; i < map.sensors.size(); ++i) {
        const auto& site = map.sensors[i];
        Reading reading;
        reading.pos = site.pos;
        reading.measured_c = std::numeric_limits<double>::quiet_NaN();
        reading.true_c = std::numeric_limits<double>::quiet_NaN();

        auto field = std::find_if(map.field.begin(), map.field.end(),
                                  [&](const FieldPoint& f) { return f.pos == site.pos; });
        auto ring = std::find_if(rings.begin(), rings.end(),
                                 [&](const RingConfig& r) { return r.name == site.ring; });
        const Calibration* cal =
            i < cal_per_sensor.size() && cal_per_sensor[i] ? &*cal_per_sensor[i] : nullptr;

        if (field != map.field.end()) reading.true_c = field->temp_c;
        if (field == map.field.end())
            reading.error = "no field temperature at sensor position";
        else if (ring == rings.end())
            reading.error = "unknown ring '" + site.ring + "'";
        else if (cal == nullptr)
            reading.error = "missing calibration";
        else if (cal->ring != site.ring)
            reading.error = "calibration is for ring '" + cal->ring + "'";

        if (reading.error.empty()) {
            // Mux selects this sensor; its controller runs one full measurement.
            out.log.push_back({i, true});
            ControllerState ctl = step_controller({}, ControllerInput::Start, spec.m_periods);
            while (ctl.phase == ControllerPhase::Counting)
                ctl = step_controller(ctl, ControllerInput::Tick, spec.m_periods);
            try {
                const auto m = measure(*ring, lib, spec, *cal, {field->temp_c}, heat);
                reading.raw = m.raw;
                reading.measured_c = m.t_hat;
                reading.ok = true;
            } catch (const Error& e) {
                reading.error = e.what();
            }
            out.log.push_back({i, false});
            step_controller(ctl, ControllerInput::Reset, spec.m_periods);
        }
        out.map.readings.push_back(std::move(reading));
    }
    return out;
}

std::size_t max_concurrent_enabled(const std::vector<ScanEvent>& log) {
    std::set<std::size_t> enabled;
    std::size_t peak = 0;
    for (const auto& e : log) {
        if (e.enable)
            enabled.insert(e.sensor);
        else
            enabled.erase(e.sensor);
        peak = std::max(peak, enabled.size());
    }
    return peak;
}

}  // namespace ringtherm
