#include "ringtherm/ring_oscillator.hpp"

#include <string>

#include "ringtherm/error.hpp"

namespace ringtherm {

RingConfig ring_from_recipe(std::string name, const StageRecipe& recipe, double c_wire) {
    RingConfig ring{std::move(name), {}, c_wire};
    for (const auto& [cell, count] : recipe) {
        if (count < 1)
            throw Error(ErrorKind::Size, "ring '" + ring.name + "': count for " + cell +
                                             " must be at least 1");
        ring.stages.insert(ring.stages.end(), static_cast<std::size_t>(count), cell);
    }
    return ring;
}

const RingConfig& validate(const RingConfig& ring, const Library& lib) {
    const auto n = ring.stages.size();
    if (n < 3)
        throw Error(ErrorKind::Size, "ring '" + ring.name + "' has " + std::to_string(n) +
                                         " stages; at least 3 required");
    if (n % 2 == 0)
        throw Error(ErrorKind::Parity, "ring '" + ring.name + "' has an even stage count (" +
                                           std::to_string(n) + ") and cannot oscillate");
    for (const auto& stage : ring.stages)
        if (!lib.contains(stage))
            throw Error(ErrorKind::Lookup,
                        "ring '" + ring.name + "': unknown cell '" + stage + "'");
    if (!(ring.c_wire >= 0.0))
        throw Error(ErrorKind::Domain, "ring '" + ring.name + "': c_wire must be non-negative");
    return ring;
}

std::vector<double> stage_loads(const RingConfig& ring, const Library& lib) {
    const auto& proc = lib.process();
    const auto n = ring.stages.size();
    std::vector<double> loads(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cell = lib.at(ring.stages[i]);
        const auto& next = lib.at(ring.stages[(i + 1) % n]);
        loads[i] = output_node_cap(cell, proc) + input_pin_cap(next, proc) + ring.c_wire;
    }
    return loads;
}

RingTiming period(const RingConfig& ring, TemperatureC t, const Library& lib) {
    validate(ring, lib);
    const auto loads = stage_loads(ring, lib);
    RingTiming timing;
    timing.stages.reserve(loads.size());
    timing.range_exceeded = !t.in_supported_range();
    for (std::size_t i = 0; i < loads.size(); ++i) {
        const auto d = cell_edge_delays(lib.at(ring.stages[i]), loads[i], t, lib);
        timing.stages.push_back({i, loads[i], d.t_phl, d.t_plh});
        timing.t_osc += d.t_phl + d.t_plh;
    }
    timing.f_osc = 1.0 / timing.t_osc;
    return timing;
}

double frequency(const RingConfig& ring, TemperatureC t, const Library& lib) {
    return period(ring, t, lib).f_osc;
}

std::vector<RingConfig> default_rings() {
    return {
        ring_from_recipe("inv5", {{"INV", 5}}),
        ring_from_recipe("inv9", {{"INV", 9}}),
        ring_from_recipe("inv21", {{"INV", 21}}),
    };
}

}  // namespace ringtherm
