// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_values.hpp"
#include "ringtherm/cli.hpp"
#include "ringtherm/error.hpp"
#include "ringtherm/explorer.hpp"
#include "ringtherm/sensor_unit.hpp"

using namespace ringtherm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

const Library& lib() {
    static const Library l;
    return l;
}

bool rel_close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

Outcome period_sum_exactness() {
    Outcome o;
    double worst = 0.0;
    for (int n : {5, 9, 21}) {
        const auto ring = ring_from_recipe("inv", {{"INV", n}});
        for (double c = -50.0; c <= 150.0; c += 5.0) {
            const auto t = period(ring, {c}, lib());
            const auto& s = t.stages.front();
            worst = std::max(worst, std::abs(t.t_osc - n * (s.t_phl + s.t_plh)) / t.t_osc);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst relative error %.2e", worst);
    o.require(worst < 1e-12, buf);
    if (o.pass) o.detail = buf;
    return o;
}

Outcome stage_count_insensitivity() {
    Outcome o;
    std::vector<double> nl;
    for (int n : {5, 9, 21})
        nl.push_back(nonlinearity_error(sweep(ring_from_recipe("inv", {{"INV", n}}), {}, lib())));
    const double spread = *std::max_element(nl.begin(), nl.end()) - *std::min_element(nl.begin(), nl.end());
    o.require(spread <= 1e-9, "nl spread " + std::to_string(spread));
    o.require(rel_close(nl[0], oracle::inv_ring_nl, 1e-9), "nl differs from the oracle");
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "nl_percent %.12f, spread %.2e", nl[0], spread);
        o.detail = buf;
    }
    return o;
}

Outcome knob_effectiveness() {
    Outcome o;
    const auto check = [&](const ExplorationReport& report,
                           const std::map<std::string, oracle::DesignValues>& pinned,
                           std::size_t expect_rows, const char* label) {
        o.require(report.rows.size() == expect_rows, std::string(label) + ": wrong row count");
        double lo = 1e300, hi = -1e300;
        for (const auto& r : report.rows) {
            lo = std::min(lo, r.nl_percent);
            hi = std::max(hi, r.nl_percent);
            auto it = pinned.find(r.design_id);
            o.require(it != pinned.end(), std::string(label) + ": unexpected id " + r.design_id);
            if (it != pinned.end())
                o.require(rel_close(r.nl_percent, it->second.nl, 1e-9),
                          std::string(label) + ": " + r.design_id + " drifted from pinned value");
        }
        o.require(hi - lo > 1e-6, std::string(label) + ": nl values do not spread");
        return hi - lo;
    };
    const double s1 = check(sweep_sizing({}, lib()), oracle::sizing, 5, "sizing");
    const double s2 = check(sweep_catalog(default_catalog(), lib()), oracle::catalog, 7, "catalog");
    if (o.pass) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "12 pinned values match; spread sizing %.4f, catalog %.4f", s1, s2);
        o.detail = buf;
    }
    return o;
}

double ssr(const std::vector<Sample>& s, double slope, double intercept) {
    double acc = 0.0;
    for (const auto& p : s) {
        const double r = p.value - (intercept + slope * p.temp_c);
        acc += r * r;
    }
    return acc;
}

Outcome least_squares() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::uniform_int_distribution<int> count(3, 10);
    for (int trial = 0; trial < 100 && o.pass; ++trial) {
        std::vector<Sample> s(static_cast<std::size_t>(count(rng)));
        for (auto& p : s) p = {u(rng), u(rng)};
        const auto fit = least_squares_fit(s);
        const double best = ssr(s, fit.slope, fit.intercept);
        // Brute-force grid over slope/intercept neighborhoods at several scales.
        for (double scale : {1.0, 1e-1, 1e-2, 1e-3})
            for (int i = -10; i <= 10; ++i)
                for (int j = -10; j <= 10; ++j)
                    o.require(best <= ssr(s, fit.slope + i * scale * 0.1, fit.intercept + j * scale) *
                                          (1.0 + 1e-12),
                              "grid candidate beats the fit");
        double sr = 0, srt = 0, sy = 0, syt = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            sr += fit.residuals[k];
            srt += fit.residuals[k] * s[k].temp_c;
            sy += std::abs(s[k].value);
            syt += std::abs(s[k].value * s[k].temp_c);
        }
        o.require(std::abs(sr) <= 1e-9 * sy, "sum of residuals not zero");
        o.require(std::abs(srt) <= 1e-9 * syt, "sum of residual*T not zero");
    }
    const auto triple = least_squares_fit(std::vector<Sample>{{0, 0}, {1, 1}, {2, 4}});
    o.require(std::abs(triple.nl_percent - 16.6666666666667) <= 1e-6, "triple nl_percent");
    if (o.pass) o.detail = "100 instances; triple nl_percent " + std::to_string(triple.nl_percent);
    return o;
}

Outcome counter_quantization() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> log_t(-12, -5), log_f(4, 10);
    std::uniform_int_distribution<std::uint64_t> m(1, 1u << 24);
    int checked = 0;
    while (checked < 1000) {
        const double t = std::pow(10.0, log_t(rng));
        const CounterSpec spec{std::pow(10.0, log_f(rng)), m(rng)};
        std::uint64_t raw = 0;
        try {
            raw = count_measurement(t, spec);
        } catch (const Error&) {
            continue;  // raw = 0
        }
        const double err = t - estimated_period(raw, spec);
        o.require(err >= 0.0, "estimate exceeds the true period");
        o.require(err < 1.0 / (static_cast<double>(spec.m_periods) * spec.f_ref), "error beyond one count");
        ++checked;
    }
    if (o.pass) o.detail = "1000 samples with raw >= 1";
    return o;
}

Outcome calibration_round_trip() {
    Outcome o;
    const auto ring = ring_from_recipe("inv5", {{"INV", 5}});
    const CounterSpec spec;
    const SelfHeatSpec heat;
    const auto cal = calibrate(ring, lib(), spec, {-40.0}, {125.0}, heat);
    double worst = 0.0;
    for (double t : {-40.0, 125.0}) {
        const auto m = measure(ring, lib(), spec, cal, {t}, heat);
        worst = std::max(worst, std::abs(m.t_hat - t));
    }
    o.require(worst <= std::abs(cal.c1), "anchor error exceeds one count");
    if (o.pass) o.detail = "anchor error " + std::to_string(worst) + " C, one count " + std::to_string(cal.c1) + " C";
    return o;
}

Outcome smart_unit() {
    Outcome o;
    for (std::uint64_t m : {1, 2, 3, 8}) {
        std::deque<ControllerState> todo{ControllerState{}};
        std::vector<ControllerState> seen{ControllerState{}};
        while (!todo.empty()) {
            const auto s = todo.front();
            todo.pop_front();
            const bool counting = s.phase == ControllerPhase::Counting;
            o.require(s.busy == counting && s.oscillator_enabled == counting, "busy/enable mismatch");
            o.require(s.data_valid == (s.phase == ControllerPhase::Ready), "data_valid mismatch");
            o.require(!(s.data_valid && s.busy), "data_valid while busy");
            for (auto in : {ControllerInput::Start, ControllerInput::Tick, ControllerInput::Reset}) {
                const auto n = step_controller(s, in, m);
                if (std::find(seen.begin(), seen.end(), n) == seen.end()) {
                    seen.push_back(n);
                    todo.push_back(n);
                }
            }
        }
        o.require(seen.size() == m + 2, "unexpected reachable state count");
    }

    const auto ring = ring_from_recipe("inv5", {{"INV", 5}});
    const CounterSpec spec;
    const auto cal = calibrate(ring, lib(), spec, {-40.0}, {125.0}, {});
    ThermalMap map;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            map.sensors.push_back({{double(x), double(y)}, "inv5"});
            map.field.push_back({{double(x), double(y)}, 20.0 + 5.0 * x + y});
        }
    std::vector<std::optional<Calibration>> cals(map.sensors.size(), cal);
    cals[4].reset();
    const auto scan = map_scan(map, {ring}, lib(), spec, cals, {});
    o.require(max_concurrent_enabled(scan.log) == 1, "two oscillators enabled at once");
    o.require(scan.map.readings.size() == 9 && !scan.map.readings[4].ok, "scan rows");

    const SelfHeatSpec off{true, 0.0, 50e-15};
    o.require(effective_temperature({27.0}, ring, lib(), off) == TemperatureC{27.0}, "r_th = 0 not identity");
    const SelfHeatSpec on{true, 100.0, 50e-15};
    const auto t = effective_temperature({27.0}, ring, lib(), on);
    const double vdd = lib().process().vdd;
    const double residual = std::abs(t.value - 27.0 - on.r_th * on.c_switch * vdd * vdd * frequency(ring, t, lib()));
    o.require(residual < 1e-9, "self-heating residual " + std::to_string(residual));
    o.require(std::abs(t.value - oracle::selfheat_27C) < 2e-9, "self-heating fixed point drifted");
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "fixed point %.9f C, residual %.1e K", t.value, residual);
        o.detail = buf;
    }
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism_and_goldens() {
    Outcome o;
    const std::filesystem::path golden(RINGTHERM_GOLDEN_DIR);
    const auto tmp = std::filesystem::temp_directory_path() / "ringtherm_acceptance";
    std::filesystem::create_directories(tmp);
    struct Case {
        std::vector<std::string> args;
        std::string file;  // empty: compare stdout
        std::string golden;
    };
    const std::vector<Case> cases{
        {{"sweep"}, "", "sweep_inv5.csv"},
        {{"sweep", "--out", "json"}, "", "sweep_inv5.json"},
        {{"explore", "--mode", "catalog"}, "", "explore_catalog.txt"},
        {{"explore", "--mode", "catalog", "--csv", (tmp / "c.csv").string()}, "c.csv", "explore_catalog.csv"},
        {{"explore", "--mode", "sizing", "--csv", (tmp / "s.csv").string()}, "s.csv", "explore_sizing.csv"},
    };
    for (const auto& c : cases) {
        std::string outputs[2];
        for (auto& out : outputs) {
            std::ostringstream so, se;
            o.require(run_cli(c.args, so, se) == 0, c.golden + ": non-zero exit");
            out = c.file.empty() ? so.str() : slurp(tmp / c.file);
        }
        o.require(outputs[0] == outputs[1], c.golden + ": runs differ");
        o.require(outputs[0] == slurp(golden / c.golden), c.golden + ": differs from golden");
    }
    std::filesystem::remove_all(tmp);
    if (o.pass) o.detail = std::to_string(cases.size()) + " artifacts byte-identical to goldens";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria{
        {"1 period equals stage delay sum (N = 5, 9, 21)", 1.0, period_sum_exactness},
        {"2 stage-count insensitivity", 1.0, stage_count_insensitivity},
        {"3 knob effectiveness + pinned nl values", 5.0, knob_effectiveness},
        {"4 least-squares correctness", 2.0, least_squares},
        {"5 counter quantization", 1.0, counter_quantization},
        {"6 calibration round-trip", 1.0, calibration_round_trip},
        {"7 smart-unit behavior", 1.0, smart_unit},
        {"8 determinism and goldens", 10.0, determinism_and_goldens},
    };
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (secs >= c.limit_s) o = {false, "runtime " + std::to_string(secs) + " s over limit"};
        std::printf("[%s] %-46s %7.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    const double total = std::chrono::duration<double>(clock::now() - start).count();
    const bool total_ok = total < 10.0;
    std::printf("[%s] %-46s %7.3f s\n", total_ok ? "PASS" : "FAIL", "suite runtime < 10 s", total);
    failures += total_ok ? 0 : 1;
    return failures == 0 ? 0 : 1;
}
