#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ringtherm/cell_library.hpp"

namespace ringtherm {

// Stage i drives stage (i + 1) mod N.
struct RingConfig {
    std::string name;
    std::vector<std::string> stages;
    double c_wire = 0.0;  // F, added to every node
};

struct StageTiming {
    std::size_t index = 0;
    double c_load = 0.0;
    double t_phl = 0.0;
    double t_plh = 0.0;
};

struct RingTiming {
    std::vector<StageTiming> stages;
    double t_osc = 0.0;  // s, sum of t_pHL + t_pLH over all stages
    double f_osc = 0.0;  // Hz
    bool range_exceeded = false;
};

// (cell name, count) pairs in the order written, e.g. {{"INV", 3}, {"NOR2", 2}}.
using StageRecipe = std::vector<std::pair<std::string, int>>;

// Grouped canonical order: "3 INV + 2 NOR2" -> [INV, INV, INV, NOR2, NOR2].
RingConfig ring_from_recipe(std::string name, const StageRecipe& recipe, double c_wire = 0.0);

// Throws Error{Size} for N < 3, Error{Parity} for even N, Error{Lookup}
// for unknown cells, Error{Domain} for negative c_wire.
const RingConfig& validate(const RingConfig& ring, const Library& lib);

// load_i = output_node_cap(cell_i) + input_pin_cap(cell_{i+1 mod N}) + c_wire
std::vector<double> stage_loads(const RingConfig& ring, const Library& lib);

RingTiming period(const RingConfig& ring, TemperatureC t, const Library& lib);

double frequency(const RingConfig& ring, TemperatureC t, const Library& lib);

// Default rings shipped with the tool: inv5, inv9, inv21.
std::vector<RingConfig> default_rings();

}  // namespace ringtherm
