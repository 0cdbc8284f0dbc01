#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringtherm/device_model.hpp"

namespace ringtherm {

enum class GateFamily { Inv, Nand, Nor };

// An inverting gate kind. INV has one input; NANDk/NORk have k.
struct CellKind {
    GateFamily family = GateFamily::Inv;
    int inputs = 1;

    static constexpr int kMaxInputs = 8;

    static CellKind inv() { return {GateFamily::Inv, 1}; }
    static CellKind nand(int k) { return {GateFamily::Nand, k}; }
    static CellKind nor(int k) { return {GateFamily::Nor, k}; }

    int fan_in() const { return inputs; }

    // "INV", "NAND3", "NOR2"; throws Error{Lookup} on anything else.
    static CellKind parse(std::string_view text);
    std::string name() const;

    friend bool operator==(CellKind, CellKind) = default;
};

struct CellDef {
    std::string name;
    CellKind kind;
    double wn = 0.0;  // um, per transistor
    double wp = 0.0;  // um, per transistor
    int series_n = 1;
    int series_p = 1;
};

// Builds a cell with stack depths derived from the kind
// (NANDk: k series NMOS; NORk: k series PMOS).
CellDef make_cell(std::string name, CellKind kind, double wn, double wp);

// Throws Error{Domain} for non-positive widths or stacks that disagree with the kind.
void validate(const CellDef& cell);

enum class Edge { HL, LH };

using CellMap = std::map<std::string, CellDef, std::less<>>;

class Library {
public:
    // Default process with INV (0.5/1.0), NAND2..4 (1.0/1.0), NOR2 (0.5/2.0).
    Library();
    Library(ProcessParams process, std::vector<CellDef> cells);

    const ProcessParams& process() const { return process_; }
    const CellMap& cells() const { return cells_; }

    bool contains(std::string_view name) const;
    // Throws Error{Lookup}.
    const CellDef& at(std::string_view name) const;

    // Inserts or replaces; validates the cell.
    void upsert(CellDef cell);

private:
    ProcessParams process_;
    CellMap cells_;
};

std::vector<CellDef> default_cells();

// c_gate * (wn + wp): one NMOS and one PMOS gate per input pin.
double input_pin_cap(const CellDef& cell, const ProcessParams& proc);

// c_drain * (dn * wn + dp * wp), drains on the output node:
// INV (1,1), NANDk (1,k), NORk (k,1).
double output_node_cap(const CellDef& cell, const ProcessParams& proc);

// Spare NAND inputs tied high and spare NOR inputs tied low, so one edge
// sees the full series stack and the other a single device.
double effective_drive(const CellDef& cell, Edge edge, TemperatureC t, const Library& lib);

struct EdgeDelays {
    double t_phl = 0.0;
    double t_plh = 0.0;
};

EdgeDelays cell_edge_delays(const CellDef& cell, double c_load, TemperatureC t,
                            const Library& lib);

}  // namespace ringtherm
