#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ringtherm/linearity.hpp"

namespace ringtherm {

struct SizingSweepSpec {
    std::vector<double> ratios{1.0, 1.75, 2.25, 3.0, 4.0};  // Wp/Wn
    double wn_fixed = 0.5;                                  // um
    int stages = 5;
};

struct CatalogEntry {
    std::string id;
    StageRecipe recipe;
};

struct ConfigCatalog {
    std::vector<CatalogEntry> entries;
};

// The seven cell mixes: 5 NOR2, 3 INV + 2 NOR2, 3 NAND3 + 2 NOR2, 5 INV,
// 2 INV + 3 NAND2, 5 NAND2, 2 INV + 3 NAND4.
ConfigCatalog default_catalog();

// "3INV+2NOR2"
std::string recipe_id(const StageRecipe& recipe);
// "wpwn_2.25"
std::string sizing_id(double ratio);

struct ReportRow {
    std::string design_id;
    double nl_percent = 0.0;
    double sensitivity = 0.0;  // s/C
    double t_osc_27c = 0.0;    // s
};

// Rows sorted by nl_percent (rounded to 12 significant digits) ascending,
// ties by design_id.
struct ExplorationReport {
    std::vector<ReportRow> rows;
};

// One design to evaluate: a ring over its own library.
struct Candidate {
    std::string id;
    RingConfig ring;
    Library lib;
};

// OpenMP over candidates; rows come back in candidate order. Errors are
// rethrown for the lowest failing index with the design id prefixed.
std::vector<ReportRow> evaluate(std::span<const Candidate> candidates, const SweepGrid& grid);
std::vector<ReportRow> evaluate_serial(std::span<const Candidate> candidates,
                                       const SweepGrid& grid);

ExplorationReport rank(std::vector<ReportRow> rows);

std::vector<Candidate> sizing_candidates(const SizingSweepSpec& spec, const Library& lib);
std::vector<Candidate> catalog_candidates(const ConfigCatalog& catalog, const Library& lib);
// Every catalog entry under every ratio, with each cell resized to wp = r * wn.
std::vector<Candidate> combined_candidates(const SizingSweepSpec& spec,
                                           const ConfigCatalog& catalog, const Library& lib);

ExplorationReport sweep_sizing(const SizingSweepSpec& spec, const Library& lib,
                               const SweepGrid& grid = {});
ExplorationReport sweep_catalog(const ConfigCatalog& catalog, const Library& lib,
                                const SweepGrid& grid = {});
ExplorationReport sweep_combined(const SizingSweepSpec& spec, const ConfigCatalog& catalog,
                                 const Library& lib, const SweepGrid& grid = {});

inline constexpr std::size_t kDefaultExplosionCap = 10'000;

// C(n + k - 1, k), saturating at SIZE_MAX.
std::size_t multiset_count(std::size_t kinds, std::size_t stages);

// All multisets of `stages` cells over `cells`, in lexicographic order of
// their non-decreasing index sequences. Throws Error{Explosion} when the
// count exceeds `cap`.
ConfigCatalog enumerate_configs(int stages, std::span<const std::string> cells,
                                std::size_t cap = kDefaultExplosionCap);

// First row; throws Error{Empty}.
const ReportRow& best(const ExplorationReport& report);

}  // namespace ringtherm
