#include "ringtherm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include "ringtherm/error.hpp"

namespace ringtherm {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorKind::Schema, msg); }

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) schema_error(where + ": expected an object");
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
    require_object(obj, where);
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) schema_error(where + ": unknown key '" + key + "'");
    }
}

void read_number(const json& obj, const char* key, double& out, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) schema_error(where + "." + key + ": expected a number");
    out = it->get<double>();
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) schema_error(where + ": missing '" + key + "'");
    double v = 0.0;
    read_number(obj, key, v, where);
    return v;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where + ": missing '" + key + "'");
    if (!it->is_string()) schema_error(where + "." + key + ": expected a string");
    return it->get<std::string>();
}

std::uint64_t read_count(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) schema_error(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

void parse_device(const json& j, DeviceParams& dev, const std::string& where) {
    check_keys(j, {"k_prime", "vth0", "kappa_vt", "alpha", "k_mu"}, where);
    read_number(j, "k_prime", dev.k_prime, where);
    read_number(j, "vth0", dev.vth0, where);
    read_number(j, "kappa_vt", dev.kappa_vt, where);
    read_number(j, "alpha", dev.alpha, where);
    read_number(j, "k_mu", dev.k_mu, where);
}

ProcessParams parse_process(const json& j) {
    ProcessParams p = default_process();
    check_keys(j, {"nmos", "pmos", "vdd", "t0", "c_gate", "c_drain", "l_min"}, "process");
    if (j.contains("nmos")) parse_device(j["nmos"], p.nmos, "process.nmos");
    if (j.contains("pmos")) parse_device(j["pmos"], p.pmos, "process.pmos");
    read_number(j, "vdd", p.vdd, "process");
    read_number(j, "t0", p.t0, "process");
    read_number(j, "c_gate", p.c_gate, "process");
    read_number(j, "c_drain", p.c_drain, "process");
    read_number(j, "l_min", p.l_min, "process");
    return p;
}

CellDef parse_cell(const json& j, std::size_t index) {
    const auto where = "library[" + std::to_string(index) + "]";
    check_keys(j, {"name", "kind", "wn", "wp"}, where);
    auto name = require_string(j, "name", where);
    CellKind kind;
    try {
        kind = CellKind::parse(require_string(j, "kind", where));
    } catch (const Error& e) {
        schema_error(where + ": " + e.what());
    }
    return make_cell(std::move(name), kind, require_number(j, "wn", where),
                     require_number(j, "wp", where));
}

RingConfig parse_ring(const json& j, std::size_t index) {
    const auto where = "rings[" + std::to_string(index) + "]";
    check_keys(j, {"name", "stages", "c_wire"}, where);
    RingConfig ring;
    ring.name = require_string(j, "name", where);
    auto it = j.find("stages");
    if (it == j.end() || !it->is_array()) schema_error(where + ": 'stages' must be an array");
    for (const auto& s : *it) {
        if (!s.is_string()) schema_error(where + ".stages: expected cell names");
        ring.stages.push_back(s.get<std::string>());
    }
    read_number(j, "c_wire", ring.c_wire, where);
    return ring;
}

}  // namespace

const RingConfig& Config::ring(std::string_view name) const {
    for (const auto& r : rings)
        if (r.name == name) return r;
    throw Error(ErrorKind::Lookup, "unknown ring '" + std::string(name) + "'");
}

Config parse_config(const json& doc) {
    check_keys(doc, {"schema_version", "process", "library", "rings", "counter", "selfheat"},
               "config");
    auto version = doc.find("schema_version");
    if (version == doc.end()) schema_error("config: missing 'schema_version'");
    if (!version->is_number_integer() || version->get<int>() != kSchemaVersion)
        schema_error("config: unsupported schema_version (expected " +
                     std::to_string(kSchemaVersion) + ")");

    Config cfg;
    const ProcessParams process =
        doc.contains("process") ? parse_process(doc["process"]) : default_process();

    auto cells = default_cells();
    if (doc.contains("library")) {
        const auto& lib = doc["library"];
        if (!lib.is_array()) schema_error("library: expected an array of cells");
        for (std::size_t i = 0; i < lib.size(); ++i) {
            auto cell = parse_cell(lib[i], i);
            auto same = std::find_if(cells.begin(), cells.end(),
                                     [&](const CellDef& c) { return c.name == cell.name; });
            if (same != cells.end())
                *same = std::move(cell);
            else
                cells.push_back(std::move(cell));
        }
    }
    cfg.library = Library(process, std::move(cells));

    if (doc.contains("rings")) {
        const auto& rings = doc["rings"];
        if (!rings.is_array()) schema_error("rings: expected an array");
        for (std::size_t i = 0; i < rings.size(); ++i) {
            auto ring = parse_ring(rings[i], i);
            auto same = std::find_if(cfg.rings.begin(), cfg.rings.end(),
                                     [&](const RingConfig& r) { return r.name == ring.name; });
            if (same != cfg.rings.end())
                *same = std::move(ring);
            else
                cfg.rings.push_back(std::move(ring));
        }
    }
    for (const auto& r : cfg.rings) validate(r, cfg.library);

    if (doc.contains("counter")) {
        const auto& c = doc["counter"];
        check_keys(c, {"f_ref", "m_periods"}, "counter");
        read_number(c, "f_ref", cfg.counter.f_ref, "counter");
        if (c.contains("m_periods")) cfg.counter.m_periods = read_count(c["m_periods"], "counter.m_periods");
    }
    validate(cfg.counter);

    if (doc.contains("selfheat")) {
        const auto& h = doc["selfheat"];
        check_keys(h, {"enabled", "r_th", "c_switch"}, "selfheat");
        if (h.contains("enabled")) {
            if (!h["enabled"].is_boolean()) schema_error("selfheat.enabled: expected a boolean");
            cfg.selfheat.enabled = h["enabled"].get<bool>();
        }
        read_number(h, "r_th", cfg.selfheat.r_th, "selfheat");
        read_number(h, "c_switch", cfg.selfheat.c_switch, "selfheat");
    }
    validate(cfg.selfheat);
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Lookup, "cannot open config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        schema_error("config '" + path.string() + "': " + e.what());
    }
    return parse_config(doc);
}

json to_json(const Calibration& cal) {
    return json{
        {"ring", cal.ring},
        {"f_ref", cal.spec.f_ref},
        {"m_periods", cal.spec.m_periods},
        {"points", json::array({json::array({cal.p1.temp_c, cal.p1.raw}),
                                json::array({cal.p2.temp_c, cal.p2.raw})})},
        {"c0", cal.c0},
        {"c1", cal.c1},
    };
}

Calibration calibration_from_json(const json& doc) {
    check_keys(doc, {"ring", "f_ref", "m_periods", "points", "c0", "c1"}, "calibration");
    Calibration cal;
    cal.ring = require_string(doc, "ring", "calibration");
    cal.spec.f_ref = require_number(doc, "f_ref", "calibration");
    if (!doc.contains("m_periods")) schema_error("calibration: missing 'm_periods'");
    cal.spec.m_periods = read_count(doc["m_periods"], "calibration.m_periods");
    const auto& pts = doc.contains("points") ? doc["points"] : json();
    if (!pts.is_array() || pts.size() != 2)
        schema_error("calibration.points: expected two [temp_C, raw] pairs");
    CalibrationPoint* dst[2] = {&cal.p1, &cal.p2};
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& p = pts[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number())
            schema_error("calibration.points: expected [temp_C, raw]");
        dst[i]->temp_c = p[0].get<double>();
        dst[i]->raw = read_count(p[1], "calibration.points raw");
    }
    cal.c0 = require_number(doc, "c0", "calibration");
    cal.c1 = require_number(doc, "c1", "calibration");
    validate(cal.spec);

    if (cal.p1.raw == cal.p2.raw || cal.p1.temp_c == cal.p2.temp_c)
        schema_error("calibration: points must differ");
    const double c1 = (cal.p2.temp_c - cal.p1.temp_c) /
                      (static_cast<double>(cal.p2.raw) - static_cast<double>(cal.p1.raw));
    const double c0 = cal.p1.temp_c - c1 * static_cast<double>(cal.p1.raw);
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    if (!close(c0, cal.c0) || !close(c1, cal.c1))
        schema_error("calibration: c0/c1 do not match the stored points");
    return cal;
}

}  // namespace ringtherm
