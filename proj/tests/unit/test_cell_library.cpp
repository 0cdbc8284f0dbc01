#include "doctest.h"
#include "oracle_values.hpp"
#include "test_util.hpp"

#include "ringtherm/cell_library.hpp"
#include "ringtherm/error.hpp"

using namespace ringtherm;
using testutil::rel_close;

namespace {
const Library lib;
const TemperatureC t300 = TemperatureC::from_kelvin(300.0);
}  // namespace

TEST_CASE("cell kinds") {
    CHECK(CellKind::parse("INV") == CellKind::inv());
    CHECK(CellKind::parse("NAND3") == CellKind::nand(3));
    CHECK(CellKind::parse("NOR2").fan_in() == 2);
    CHECK(CellKind::parse("NOR4") == CellKind::nor(4));
    CHECK(CellKind::nand(4).name() == "NAND4");
    for (auto bad : {"", "XOR2", "NAND", "NAND1", "NAND9", "NOR2x", "inv"})
        CHECK_THROWS_AS(CellKind::parse(bad), Error);
}

TEST_CASE("stack depths follow the kind") {
    auto inv = make_cell("i", CellKind::inv(), 1, 1);
    CHECK(inv.series_n == 1);
    CHECK(inv.series_p == 1);
    auto nand3 = make_cell("n", CellKind::nand(3), 1, 1);
    CHECK(nand3.series_n == 3);
    CHECK(nand3.series_p == 1);
    auto nor2 = make_cell("o", CellKind::nor(2), 1, 1);
    CHECK(nor2.series_n == 1);
    CHECK(nor2.series_p == 2);

    CHECK_THROWS_AS(make_cell("z", CellKind::inv(), 0.0, 1.0), Error);
    nand3.series_n = 2;
    CHECK_THROWS_AS(validate(nand3), Error);
}

TEST_CASE("library") {
    CHECK(lib.cells().size() == 5);
    CHECK(lib.at("INV").wn == 0.5);
    CHECK(lib.at("NOR2").wp == 2.0);
    try {
        lib.at("GHOST");
        FAIL("expected lookup error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Lookup);
    }
    auto cells = default_cells();
    cells.push_back(cells.front());
    CHECK_THROWS_AS(Library(default_process(), cells), Error);

    Library copy = lib;
    copy.upsert(make_cell("INV", CellKind::inv(), 0.7, 1.4));
    CHECK(copy.at("INV").wn == 0.7);
    CHECK(lib.at("INV").wn == 0.5);
}

TEST_CASE("pin and node capacitances") {
    const auto& proc = lib.process();
    CHECK(rel_close(input_pin_cap(lib.at("INV"), proc), 3.0e-15, 1e-12));
    CHECK(rel_close(input_pin_cap(lib.at("NAND2"), proc), 4.0e-15, 1e-12));
    CHECK(rel_close(output_node_cap(lib.at("INV"), proc), 1.5e-15, 1e-12));
    CHECK(rel_close(output_node_cap(lib.at("NAND2"), proc), 3.0e-15, 1e-12));
    // NOR2 (0.5/2.0): two NMOS drains and one PMOS drain on the output.
    CHECK(rel_close(output_node_cap(lib.at("NOR2"), proc), 3.0e-15, 1e-12));

    ProcessParams zero = proc;
    zero.c_gate = 0.0;
    zero.c_drain = 0.0;
    CHECK(input_pin_cap(lib.at("INV"), zero) == 0.0);
    CHECK(output_node_cap(lib.at("INV"), zero) == 0.0);
}

TEST_CASE("effective drive") {
    const auto inv = make_cell("i", CellKind::inv(), 1.0, 1.0);
    const auto nand2 = make_cell("n", CellKind::nand(2), 1.0, 1.0);
    const auto nand1 = make_cell("n1", CellKind::nand(1), 1.0, 1.0);
    for (double c : {-50.0, 27.0, 150.0}) {
        CHECK(effective_drive(nand2, Edge::HL, {c}, lib) == effective_drive(inv, Edge::HL, {c}, lib) / 2);
        CHECK(effective_drive(nand2, Edge::LH, {c}, lib) == effective_drive(inv, Edge::LH, {c}, lib));
        CHECK(effective_drive(nand1, Edge::HL, {c}, lib) == effective_drive(inv, Edge::HL, {c}, lib));
        CHECK(effective_drive(nand1, Edge::LH, {c}, lib) == effective_drive(inv, Edge::LH, {c}, lib));
    }
    CHECK(rel_close(effective_drive(lib.at("NAND3"), Edge::HL, t300, lib), oracle::nand3_ihl_300K, 1e-12));
}

TEST_CASE("edge delays") {
    const auto d = cell_edge_delays(lib.at("INV"), 4.5e-15, t300, lib);
    CHECK(rel_close(d.t_phl, oracle::inv_tphl_4p5fF_300K, 1e-12));
    CHECK(rel_close(d.t_plh, oracle::inv_tplh_4p5fF_300K, 1e-12));

    const auto d2 = cell_edge_delays(lib.at("INV"), 9.0e-15, t300, lib);
    CHECK(d2.t_phl == 2 * d.t_phl);
    CHECK(d2.t_plh == 2 * d.t_plh);

    const auto inv = make_cell("i", CellKind::inv(), 0.5, 2.0);
    const auto nor2 = make_cell("o", CellKind::nor(2), 0.5, 2.0);
    for (double c = -50.0; c <= 150.0; c += 10.0) {
        const auto di = cell_edge_delays(inv, 5e-15, {c}, lib);
        const auto dn = cell_edge_delays(nor2, 5e-15, {c}, lib);
        CHECK(dn.t_plh == 2 * di.t_plh);
        CHECK(dn.t_phl == di.t_phl);
    }
    CHECK_THROWS_AS(cell_edge_delays(lib.at("INV"), 0.0, t300, lib), Error);
}

TEST_CASE("stack consistency and asymmetry") {
    for (int k = 2; k <= 4; ++k) {
        const auto inv = make_cell("i", CellKind::inv(), 1.0, 1.0);
        auto nand = make_cell("n", CellKind::nand(k), 1.0, 1.0);
        const auto di = cell_edge_delays(inv, 4e-15, {60.0}, lib);
        const auto dn = cell_edge_delays(nand, 4e-15, {60.0}, lib);
        CHECK(rel_close(dn.t_phl / dn.t_plh, k * (di.t_phl / di.t_plh), 1e-14));

        nand.series_n = 1;
        const auto flat = cell_edge_delays(nand, 4e-15, {60.0}, lib);
        CHECK(flat.t_phl == di.t_phl);
        CHECK(flat.t_plh == di.t_plh);
    }
}

TEST_CASE("delays rise with temperature for every default cell") {
    for (const auto& [name, cell] : lib.cells()) {
        auto prev = cell_edge_delays(cell, 5e-15, {-50.0}, lib);
        for (double c = -49.75; c <= 150.0; c += 0.25) {
            const auto cur = cell_edge_delays(cell, 5e-15, {c}, lib);
            CHECK(cur.t_phl > prev.t_phl);
            CHECK(cur.t_plh > prev.t_plh);
            prev = cur;
        }
    }
}
