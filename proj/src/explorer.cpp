#include "ringtherm/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "parallel.hpp"
#include "ringtherm/error.hpp"

namespace ringtherm {

namespace {

constexpr double kReportTempC = 27.0;

std::vector<CatalogEntry> entries_from(std::initializer_list<StageRecipe> recipes) {
    std::vector<CatalogEntry> out;
    for (const auto& r : recipes) out.push_back({recipe_id(r), r});
    return out;
}

ReportRow evaluate_one(const Candidate& c, const SweepGrid& grid,
                       SweepResult (*sweeper)(const RingConfig&, const SweepGrid&,
                                              const Library&)) {
    try {
        const auto result = sweeper(c.ring, grid, c.lib);
        const auto fit = least_squares_fit(result.samples);
        if (!(fit.full_scale_span > 0.0))
            throw Error(ErrorKind::UndefinedMetric, "zero output span");
        return {c.id, fit.nl_percent, fit.slope, period(c.ring, {kReportTempC}, c.lib).t_osc};
    } catch (const Error& e) {
        throw Error(e.kind(), "design '" + c.id + "': " + e.what());
    }
}

void check_recipe(const CatalogEntry& entry) {
    long total = 0;
    for (const auto& [cell, count] : entry.recipe) {
        if (count < 1)
            throw Error(ErrorKind::Size,
                        "catalog entry '" + entry.id + "': count for " + cell + " must be >= 1");
        total += count;
    }
    if (total < 3)
        throw Error(ErrorKind::Size, "catalog entry '" + entry.id + "' has fewer than 3 stages");
    if (total % 2 == 0)
        throw Error(ErrorKind::Parity, "catalog entry '" + entry.id +
                                           "' has an even stage count (" +
                                           std::to_string(total) + ")");
}

void check_ratio(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorKind::Precondition, "Wp/Wn ratio must be positive");
}

void check_spec(const SizingSweepSpec& spec) {
    if (spec.ratios.empty()) throw Error(ErrorKind::Empty, "sizing sweep has no ratios");
    std::set<double> seen;
    for (double r : spec.ratios) {
        check_ratio(r);
        if (!seen.insert(r).second)
            throw Error(ErrorKind::Precondition, "duplicate Wp/Wn ratio " + sizing_id(r));
    }
    if (!(spec.wn_fixed > 0.0)) throw Error(ErrorKind::Precondition, "wn_fixed must be positive");
    if (spec.stages < 3) throw Error(ErrorKind::Size, "sizing sweep needs at least 3 stages");
    if (spec.stages % 2 == 0)
        throw Error(ErrorKind::Parity, "sizing sweep stage count must be odd");
}

}  // namespace

ConfigCatalog default_catalog() {
    return {entries_from({
        {{"NOR2", 5}},
        {{"INV", 3}, {"NOR2", 2}},
        {{"NAND3", 3}, {"NOR2", 2}},
        {{"INV", 5}},
        {{"INV", 2}, {"NAND2", 3}},
        {{"NAND2", 5}},
        {{"INV", 2}, {"NAND4", 3}},
    })};
}

std::string recipe_id(const StageRecipe& recipe) {
    std::string id;
    for (const auto& [cell, count] : recipe) {
        if (!id.empty()) id += '+';
        id += std::to_string(count) + cell;
    }
    return id;
}

std::string sizing_id(double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "wpwn_%.2f", ratio);
    return buf;
}

std::vector<ReportRow> evaluate(std::span<const Candidate> candidates, const SweepGrid& grid) {
    std::vector<ReportRow> rows(candidates.size());
    detail::parallel_for(candidates.size(), [&](std::size_t i) {
        rows[i] = evaluate_one(candidates[i], grid, &sweep_serial);
    });
    return rows;
}

std::vector<ReportRow> evaluate_serial(std::span<const Candidate> candidates,
                                       const SweepGrid& grid) {
    std::vector<ReportRow> rows;
    rows.reserve(candidates.size());
    for (const auto& c : candidates) rows.push_back(evaluate_one(c, grid, &sweep_serial));
    return rows;
}

namespace {

// nl_percent as printed; values equal in exact arithmetic must tie.
double ranking_key(double nl) {
    if (nl == 0.0 || !std::isfinite(nl)) return nl;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", nl);
    return std::strtod(buf, nullptr);
}

}  // namespace

ExplorationReport rank(std::vector<ReportRow> rows) {
    std::vector<std::pair<double, std::size_t>> keys;
    keys.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) keys.emplace_back(ranking_key(rows[i].nl_percent), i);
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return rows[a.second].design_id < rows[b.second].design_id;
    });
    ExplorationReport report;
    report.rows.reserve(rows.size());
    for (const auto& [key, i] : keys) report.rows.push_back(std::move(rows[i]));
    return report;
}

std::vector<Candidate> sizing_candidates(const SizingSweepSpec& spec, const Library& lib) {
    check_spec(spec);
    std::vector<Candidate> out;
    for (double r : spec.ratios) {
        const auto id = sizing_id(r);
        Library variant = lib;
        const auto cell = "INV@" + id;
        variant.upsert(make_cell(cell, CellKind::inv(), spec.wn_fixed, r * spec.wn_fixed));
        out.push_back({id, ring_from_recipe(id, {{cell, spec.stages}}), std::move(variant)});
    }
    return out;
}

std::vector<Candidate> catalog_candidates(const ConfigCatalog& catalog, const Library& lib) {
    std::vector<Candidate> out;
    for (const auto& entry : catalog.entries) {
        check_recipe(entry);
        auto ring = ring_from_recipe(entry.id, entry.recipe);
        try {
            validate(ring, lib);
        } catch (const Error& e) {
            throw Error(e.kind(), "catalog entry '" + entry.id + "': " + e.what());
        }
        out.push_back({entry.id, std::move(ring), lib});
    }
    return out;
}

std::vector<Candidate> combined_candidates(const SizingSweepSpec& spec,
                                           const ConfigCatalog& catalog, const Library& lib) {
    check_spec(spec);
    std::vector<Candidate> out;
    for (double r : spec.ratios) {
        Library variant = lib;
        for (const auto& [name, cell] : lib.cells()) {
            auto resized = cell;
            resized.wp = r * cell.wn;
            variant.upsert(std::move(resized));
        }
        for (auto& c : catalog_candidates(catalog, variant)) {
            c.id += "@" + sizing_id(r);
            c.ring.name = c.id;
            out.push_back(std::move(c));
        }
    }
    return out;
}

ExplorationReport sweep_sizing(const SizingSweepSpec& spec, const Library& lib,
                               const SweepGrid& grid) {
    const auto candidates = sizing_candidates(spec, lib);
    return rank(evaluate(candidates, grid));
}

ExplorationReport sweep_catalog(const ConfigCatalog& catalog, const Library& lib,
                                const SweepGrid& grid) {
    const auto candidates = catalog_candidates(catalog, lib);
    return rank(evaluate(candidates, grid));
}

ExplorationReport sweep_combined(const SizingSweepSpec& spec, const ConfigCatalog& catalog,
                                 const Library& lib, const SweepGrid& grid) {
    const auto candidates = combined_candidates(spec, catalog, lib);
    return rank(evaluate(candidates, grid));
}

std::size_t multiset_count(std::size_t kinds, std::size_t stages) {
    if (kinds == 0) return stages == 0 ? 1 : 0;
    // C(kinds + stages - 1, stages), built incrementally; each partial
    // product is itself a binomial coefficient so the division is exact.
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t result = 1;
    for (std::size_t i = 1; i <= stages; ++i) {
        const std::size_t num = kinds - 1 + i;
        const auto g = std::gcd(result, i);
        const std::size_t a = result / g;
        const std::size_t b = num / (i / g);
        if (a > kMax / b) return kMax;
        result = a * b;
    }
    return result;
}

ConfigCatalog enumerate_configs(int stages, std::span<const std::string> cells, std::size_t cap) {
    if (stages < 3) throw Error(ErrorKind::Size, "enumeration needs at least 3 stages");
    if (stages % 2 == 0) throw Error(ErrorKind::Parity, "enumeration stage count must be odd");
    if (cells.empty()) throw Error(ErrorKind::Empty, "enumeration needs at least one cell kind");
    std::set<std::string_view> unique(cells.begin(), cells.end());
    if (unique.size() != cells.size())
        throw Error(ErrorKind::Precondition, "enumeration cell list has duplicates");

    const auto projected = multiset_count(cells.size(), static_cast<std::size_t>(stages));
    if (projected > cap)
        throw Error(ErrorKind::Explosion,
                    "enumeration would produce " + std::to_string(projected) +
                        " designs (cap " + std::to_string(cap) + "); narrow the cell list");

    ConfigCatalog catalog;
    catalog.entries.reserve(projected);
    // Non-decreasing index sequence, advanced like an odometer.
    std::vector<std::size_t> idx(static_cast<std::size_t>(stages), 0);
    const auto k = cells.size();
    while (true) {
        StageRecipe recipe;
        for (std::size_t v : idx) {
            if (!recipe.empty() && recipe.back().first == cells[v])
                ++recipe.back().second;
            else
                recipe.emplace_back(cells[v], 1);
        }
        catalog.entries.push_back({recipe_id(recipe), std::move(recipe)});

        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] == k - 1) --pos;
        if (pos == 0) break;
        const auto next = idx[pos - 1] + 1;
        std::fill(idx.begin() + static_cast<std::ptrdiff_t>(pos - 1), idx.end(), next);
    }
    return catalog;
}

const ReportRow& best(const ExplorationReport& report) {
    if (report.rows.empty()) throw Error(ErrorKind::Empty, "exploration report is empty");
    return report.rows.front();
}

}  // namespace ringtherm
