#include "ringtherm/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ringtherm/config.hpp"
#include "ringtherm/error.hpp"
#include "ringtherm/explorer.hpp"
#include "ringtherm/io.hpp"

namespace ringtherm {

namespace {

using nlohmann::json;

Config resolve_config(const std::string& flag) {
    if (!flag.empty()) return load_config(flag);
    if (const char* env = std::getenv("RINGTHERM_CONFIG"); env && *env) return load_config(env);
    return Config{};
}

// "-" writes to `out`; anything else is a file path.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Lookup, "cannot open output file '" + path + "'");
    fn(file);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Lookup, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Schema, "'" + path + "': " + e.what());
    }
}

struct GridFlags {
    double tmin = -50.0;
    double tmax = 150.0;
    double step = 5.0;

    void add(CLI::App* cmd) {
        cmd->add_option("--tmin", tmin, "Sweep start (C)")->capture_default_str();
        cmd->add_option("--tmax", tmax, "Sweep end (C)")->capture_default_str();
        cmd->add_option("--step", step, "Sweep step (C)")->capture_default_str();
    }
    SweepGrid grid() const { return {tmin, tmax, step}; }
};

struct SweepCmd {
    std::string config;
    std::string ring = "inv5";
    GridFlags grid;
    std::string format = "csv";
    std::string output = "-";
    std::string summary;
    bool fit_frequency = false;

    int run(std::ostream& out, std::ostream& err) const {
        const auto cfg = resolve_config(config);
        const auto& r = cfg.ring(ring);
        auto result = sweep(r, grid.grid(), cfg.library);
        if (fit_frequency) result = to_frequency(std::move(result));
        const auto fit = least_squares_fit(result.samples);
        if (!(fit.full_scale_span > 0.0))
            throw Error(ErrorKind::UndefinedMetric, "ring '" + ring + "' has zero output span");
        const auto doc = fit_summary(result, fit, fit_frequency);
        emit(output, out, [&](std::ostream& os) {
            if (format == "json")
                os << doc.dump(2) << '\n';
            else
                write_sweep_csv(os, result, fit, fit_frequency);
        });
        if (!summary.empty()) emit(summary, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
        if (result.range_exceeded)
            err << "warning: sweep leaves the supported -50..150 C range\n";
        err << r.name << ": " << result.samples.size() << " samples, nl_percent "
            << format_number(fit.nl_percent) << ", sensitivity " << format_number(fit.slope)
            << (fit_frequency ? " Hz/C" : " s/C") << '\n';
        return 0;
    }
};

struct ExploreCmd {
    std::string config;
    std::string mode = "catalog";
    int stages = 5;
    std::vector<std::string> cells{"INV", "NAND2", "NAND3", "NAND4", "NOR2"};
    std::vector<double> ratios{1.0, 1.75, 2.25, 3.0, 4.0};
    double wn = 0.5;
    std::size_t top = 0;
    std::size_t cap = kDefaultExplosionCap;
    bool combined = false;
    std::string csv;
    GridFlags grid;

    int run(std::ostream& out, std::ostream& err) const {
        const auto cfg = resolve_config(config);
        const SizingSweepSpec spec{ratios, wn, stages};
        std::vector<Candidate> candidates;
        if (mode == "sizing") {
            if (combined)
                throw Error(ErrorKind::Precondition, "--combined applies to catalog/enumerate modes");
            candidates = sizing_candidates(spec, cfg.library);
        } else {
            const auto catalog =
                mode == "catalog" ? default_catalog() : enumerate_configs(stages, cells, cap);
            if (combined) {
                const auto total = catalog.entries.size() * ratios.size();
                if (total > cap)
                    throw Error(ErrorKind::Explosion,
                                "combined sweep would evaluate " + std::to_string(total) +
                                    " designs (cap " + std::to_string(cap) + ")");
                candidates = combined_candidates(spec, catalog, cfg.library);
            } else {
                candidates = catalog_candidates(catalog, cfg.library);
            }
        }
        const auto report = rank(evaluate(candidates, grid.grid()));
        write_report_table(out, report, top == 0 ? report.rows.size() : top);
        if (!csv.empty()) emit(csv, out, [&](std::ostream& os) { write_report_csv(os, report); });
        const auto& b = best(report);
        err << mode << ": " << report.rows.size() << " designs, best " << b.design_id
            << " nl_percent " << format_number(b.nl_percent) << '\n';
        return 0;
    }
};

struct CounterFlags {
    std::optional<double> f_ref;
    std::optional<std::uint64_t> m_periods;

    void add(CLI::App* cmd) {
        cmd->add_option("--f-ref", f_ref, "Reference clock (Hz)");
        cmd->add_option("--m-periods", m_periods, "Oscillator periods per measurement");
    }
    CounterSpec apply(CounterSpec spec) const {
        if (f_ref) spec.f_ref = *f_ref;
        if (m_periods) spec.m_periods = *m_periods;
        validate(spec);
        return spec;
    }
};

struct CalibrateCmd {
    std::string config;
    std::string ring = "inv5";
    double t1 = -40.0;
    double t2 = 125.0;
    CounterFlags counter;
    std::string output = "-";

    int run(std::ostream& out, std::ostream& err) const {
        const auto cfg = resolve_config(config);
        const auto cal = calibrate(cfg.ring(ring), cfg.library, counter.apply(cfg.counter), {t1},
                                   {t2}, cfg.selfheat);
        emit(output, out, [&](std::ostream& os) { os << to_json(cal).dump(2) << '\n'; });
        err << ring << ": c0 " << format_number(cal.c0) << " C, c1 " << format_number(cal.c1)
            << " C/count\n";
        return 0;
    }
};

struct MeasureCmd {
    std::string config;
    std::string cal_path;
    double temp = 27.0;
    std::string output = "-";

    int run(std::ostream& out, std::ostream&) const {
        const auto cfg = resolve_config(config);
        const auto cal = calibration_from_json(read_json_file(cal_path));
        const auto& ring = cfg.ring(cal.ring);
        const auto m = measure(ring, cfg.library, cal.spec, cal, {temp}, cfg.selfheat);
        const json doc{
            {"ring", ring.name},
            {"ambient_C", round_to_output(temp)},
            {"true_C", round_to_output(m.true_temp)},
            {"raw", m.raw},
            {"t_hat_C", round_to_output(m.t_hat)},
            {"busy_duration_s", round_to_output(m.busy_duration)},
        };
        emit(output, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
        return 0;
    }
};

struct MapCmd {
    std::string config;
    std::string field_path;
    std::string cal_path;
    std::string ring;
    double t1 = -40.0;
    double t2 = 125.0;
    std::string output = "-";

    int run(std::ostream& out, std::ostream& err) const {
        const auto cfg = resolve_config(config);
        std::ifstream in(field_path);
        if (!in) throw Error(ErrorKind::Lookup, "cannot open field CSV '" + field_path + "'");
        ThermalMap map;
        map.field = read_field_csv(in);

        std::optional<Calibration> cal;
        if (!cal_path.empty()) cal = calibration_from_json(read_json_file(cal_path));
        const std::string ring_name = !ring.empty() ? ring : cal ? cal->ring : "inv5";
        const auto& r = cfg.ring(ring_name);
        const CounterSpec spec = cal ? cal->spec : cfg.counter;
        if (!cal) cal = calibrate(r, cfg.library, spec, {t1}, {t2}, cfg.selfheat);

        for (const auto& f : map.field) map.sensors.push_back({f.pos, ring_name});
        const std::vector<std::optional<Calibration>> cals(map.sensors.size(), cal);
        const auto scan = map_scan(map, cfg.rings, cfg.library, spec, cals, cfg.selfheat);
        for (const auto& rd : scan.map.readings)
            if (!rd.ok)
                err << "warning: sensor at (" << format_number(rd.pos.x) << ", "
                    << format_number(rd.pos.y) << "): " << rd.error << '\n';
        emit(output, out, [&](std::ostream& os) { write_scan_csv(os, scan.map); });
        return 0;
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ring-oscillator temperature sensor simulator and design explorer", "ringtherm"};
    app.require_subcommand(1);

    SweepCmd sweep_cmd;
    auto* sw = app.add_subcommand("sweep", "Sweep a ring over temperature and fit a line");
    sw->add_option("--config", sweep_cmd.config, "Config file (or RINGTHERM_CONFIG)");
    sw->add_option("--ring", sweep_cmd.ring, "Ring name")->capture_default_str();
    sweep_cmd.grid.add(sw);
    sw->add_option("--out", sweep_cmd.format, "Artifact format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sw->add_option("--output", sweep_cmd.output, "Artifact path, '-' for stdout")->capture_default_str();
    sw->add_option("--summary", sweep_cmd.summary, "Also write the JSON fit summary here");
    sw->add_flag("--fit-frequency", sweep_cmd.fit_frequency, "Fit f_osc instead of t_osc");

    ExploreCmd explore_cmd;
    auto* ex = app.add_subcommand("explore", "Rank sensor designs by non-linearity");
    ex->add_option("--config", explore_cmd.config, "Config file (or RINGTHERM_CONFIG)");
    ex->add_option("--mode", explore_cmd.mode, "Search space")
        ->check(CLI::IsMember({"sizing", "catalog", "enumerate"}))
        ->capture_default_str();
    ex->add_option("--stages", explore_cmd.stages, "Stage count")->capture_default_str();
    ex->add_option("--cells", explore_cmd.cells, "Cells for enumerate mode")->delimiter(',');
    ex->add_option("--ratios", explore_cmd.ratios, "Wp/Wn ratios for sizing")->delimiter(',');
    ex->add_option("--wn", explore_cmd.wn, "Fixed NMOS width for sizing (um)")->capture_default_str();
    ex->add_option("--top", explore_cmd.top, "Rows to display (0 = all)")->capture_default_str();
    ex->add_option("--cap", explore_cmd.cap, "Maximum designs to evaluate")->capture_default_str();
    ex->add_flag("--combined", explore_cmd.combined, "Cross every design with every Wp/Wn ratio");
    ex->add_option("--csv", explore_cmd.csv, "Write the full report CSV here");
    explore_cmd.grid.add(ex);

    CalibrateCmd cal_cmd;
    auto* ca = app.add_subcommand("calibrate", "Two-point calibration of a ring sensor");
    ca->add_option("--config", cal_cmd.config, "Config file (or RINGTHERM_CONFIG)");
    ca->add_option("--ring", cal_cmd.ring, "Ring name")->capture_default_str();
    ca->add_option("--t1", cal_cmd.t1, "First calibration temperature (C)")->capture_default_str();
    ca->add_option("--t2", cal_cmd.t2, "Second calibration temperature (C)")->capture_default_str();
    cal_cmd.counter.add(ca);
    ca->add_option("--output", cal_cmd.output, "Calibration JSON path, '-' for stdout")
        ->capture_default_str();

    MeasureCmd measure_cmd;
    auto* me = app.add_subcommand("measure", "Digitize one temperature with a calibrated ring");
    me->add_option("--config", measure_cmd.config, "Config file (or RINGTHERM_CONFIG)");
    me->add_option("--cal", measure_cmd.cal_path, "Calibration JSON")->required();
    me->add_option("--temp", measure_cmd.temp, "Ambient temperature (C)")->capture_default_str();
    me->add_option("--output", measure_cmd.output, "Result JSON path, '-' for stdout")
        ->capture_default_str();

    MapCmd map_cmd;
    auto* mp = app.add_subcommand("map", "Scan a multiplexed sensor grid over a thermal field");
    mp->add_option("--config", map_cmd.config, "Config file (or RINGTHERM_CONFIG)");
    mp->add_option("--field", map_cmd.field_path, "Field CSV (x,y,temp_C)")->required();
    mp->add_option("--cal", map_cmd.cal_path, "Calibration JSON shared by all sensors");
    mp->add_option("--ring", map_cmd.ring, "Ring at every sensor site");
    mp->add_option("--t1", map_cmd.t1, "Calibration point 1 when --cal is absent (C)")
        ->capture_default_str();
    mp->add_option("--t2", map_cmd.t2, "Calibration point 2 when --cal is absent (C)")
        ->capture_default_str();
    mp->add_option("--output", map_cmd.output, "Scan CSV path, '-' for stdout")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (sw->parsed()) return sweep_cmd.run(out, err);
        if (ex->parsed()) return explore_cmd.run(out, err);
        if (ca->parsed()) return cal_cmd.run(out, err);
        if (me->parsed()) return measure_cmd.run(out, err);
        if (mp->parsed()) return map_cmd.run(out, err);
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_status(e.kind());
    } catch (const nlohmann::json::exception& e) {
        err << "error: schema error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace ringtherm
