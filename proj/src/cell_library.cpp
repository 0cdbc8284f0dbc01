#include "ringtherm/cell_library.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "ringtherm/error.hpp"

namespace ringtherm {

CellKind CellKind::parse(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::Lookup, "unknown cell kind '" + std::string(text) + "'"); };
    if (text == "INV") return inv();
    GateFamily family;
    std::string_view digits;
    if (text.starts_with("NAND")) {
        family = GateFamily::Nand;
        digits = text.substr(4);
    } else if (text.starts_with("NOR")) {
        family = GateFamily::Nor;
        digits = text.substr(3);
    } else {
        throw bad();
    }
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || k < 2 ||
        k > kMaxInputs)
        throw bad();
    return {family, k};
}

std::string CellKind::name() const {
    switch (family) {
        case GateFamily::Inv: return "INV";
        case GateFamily::Nand: return "NAND" + std::to_string(inputs);
        case GateFamily::Nor: return "NOR" + std::to_string(inputs);
    }
    return "?";
}

namespace {

struct StackDepth {
    int n;
    int p;
};

StackDepth stack_for(CellKind kind) {
    switch (kind.family) {
        case GateFamily::Inv: return {1, 1};
        case GateFamily::Nand: return {kind.inputs, 1};
        case GateFamily::Nor: return {1, kind.inputs};
    }
    return {1, 1};
}

// Drains hanging on the output node: parallel devices each contribute one.
StackDepth output_drains(CellKind kind) {
    switch (kind.family) {
        case GateFamily::Inv: return {1, 1};
        case GateFamily::Nand: return {1, kind.inputs};
        case GateFamily::Nor: return {kind.inputs, 1};
    }
    return {1, 1};
}

}  // namespace

CellDef make_cell(std::string name, CellKind kind, double wn, double wp) {
    const auto depth = stack_for(kind);
    CellDef cell{std::move(name), kind, wn, wp, depth.n, depth.p};
    validate(cell);
    return cell;
}

void validate(const CellDef& cell) {
    if (cell.name.empty()) throw Error(ErrorKind::Domain, "cell name must not be empty");
    if (!(cell.wn > 0.0) || !(cell.wp > 0.0))
        throw Error(ErrorKind::Domain, "cell '" + cell.name + "': widths must be positive");
    const bool inv_ok = cell.kind.family != GateFamily::Inv || cell.kind.inputs == 1;
    if (!inv_ok || cell.kind.inputs < 1 || cell.kind.inputs > CellKind::kMaxInputs)
        throw Error(ErrorKind::Domain, "cell '" + cell.name + "': bad fan-in");
    const auto depth = stack_for(cell.kind);
    if (cell.series_n != depth.n || cell.series_p != depth.p)
        throw Error(ErrorKind::Domain,
                    "cell '" + cell.name + "': stack depths disagree with " + cell.kind.name());
}

std::vector<CellDef> default_cells() {
    return {
        make_cell("INV", CellKind::inv(), 0.5, 1.0),
        make_cell("NAND2", CellKind::nand(2), 1.0, 1.0),
        make_cell("NAND3", CellKind::nand(3), 1.0, 1.0),
        make_cell("NAND4", CellKind::nand(4), 1.0, 1.0),
        make_cell("NOR2", CellKind::nor(2), 0.5, 2.0),
    };
}

Library::Library() : Library(default_process(), default_cells()) {}

Library::Library(ProcessParams process, std::vector<CellDef> cells)
    : process_(process) {
    validate(process_);
    for (auto& cell : cells) {
        if (cells_.contains(cell.name))
            throw Error(ErrorKind::Schema, "duplicate cell name '" + cell.name + "'");
        validate(cell);
        cells_.emplace(cell.name, std::move(cell));
    }
}

bool Library::contains(std::string_view name) const { return cells_.find(name) != cells_.end(); }

const CellDef& Library::at(std::string_view name) const {
    auto it = cells_.find(name);
    if (it == cells_.end())
        throw Error(ErrorKind::Lookup, "unknown cell '" + std::string(name) + "'");
    return it->second;
}

void Library::upsert(CellDef cell) {
    validate(cell);
    auto it = cells_.find(cell.name);
    if (it != cells_.end())
        it->second = std::move(cell);
    else
        cells_.emplace(cell.name, std::move(cell));
}

double input_pin_cap(const CellDef& cell, const ProcessParams& proc) {
    return proc.c_gate * (cell.wn + cell.wp);
}

double output_node_cap(const CellDef& cell, const ProcessParams& proc) {
    const auto d = output_drains(cell.kind);
    return proc.c_drain * (d.n * cell.wn + d.p * cell.wp);
}

double effective_drive(const CellDef& cell, Edge edge, TemperatureC t, const Library& lib) {
    const auto& proc = lib.process();
    if (edge == Edge::HL)
        return sat_current(proc.nmos, cell.wn / proc.l_min, t, proc) / cell.series_n;
    return sat_current(proc.pmos, cell.wp / proc.l_min, t, proc) / cell.series_p;
}

EdgeDelays cell_edge_delays(const CellDef& cell, double c_load, TemperatureC t,
                            const Library& lib) {
    const auto& proc = lib.process();
    return {switching_delay(effective_drive(cell, Edge::HL, t, lib), c_load, proc),
            switching_delay(effective_drive(cell, Edge::LH, t, lib), c_load, proc)};
}

}  // namespace ringtherm
