#pragma once

#include "packbound/adaptive_oracle.hpp"
#include "packbound/scenario.hpp"

#include <string>
#include <utility>
#include <vector>

namespace packbound {

/// Bin categories after the T-squares. Names follow (F-count, T-count) classes.
struct SPCensus {
    long x90 = 0, x50 = 0;
    long x81 = 0, x41 = 0;
    long x72 = 0, x42 = 0, x32 = 0;
    long x63 = 0, x43 = 0, x23 = 0;
    long x54 = 0, x44 = 0, x14 = 0;
    long x03 = 0, x04 = 0;
    long y4 = 0, y3 = 0, s3 = 0, l3 = 0;
    ExactNumber gamma1;
    ExactNumber gamma2;

    /// Values in program variable order (y4, y3, s3, l3, x90, ...).
    std::vector<std::pair<std::string, long>> entries() const;
};

struct SPFPhase {
    PhaseRecord record;
    long y4 = 0;
    Separator separator;
    ExactNumber gamma1;
};

struct SPTPhase {
    PhaseRecord record;
    long s3 = 0;
    long l3 = 0;
    long y3 = 0;  // bins opened by T-squares
    Separator separator;
    ExactNumber gamma2;
    SPCensus census;
    Packing packing{VariantRules::squares()};
    std::vector<CrossCheck> annotation_checks;  // small/large pattern per category
};

struct SPRun {
    std::string algorithm;
    long m = 0;
    SPFPhase f_phase;
    SPTPhase t_phase;
    std::vector<ScenarioResult> scenarios;
    std::vector<CrossCheck> checks;

    bool passed() const;
    Rational max_ratio() const;
};

void validate_sp_m(long m);

SPFPhase run_f_phase(const std::string& algorithm, long m);
SPTPhase run_t_phase_sp(const SPFPhase& f_phase, const std::string& algorithm, long m);

/// Throws VariantError::CensusGap for a bin outside the categories.
SPCensus classify_sp(const Packing& packing);

std::vector<Item> sp_scenario_items(int scenario, long m, long y4, long s3, long l3, const ExactNumber& gamma1,
                                    const ExactNumber& gamma2, std::size_t first_id);
std::string sp_scenario_name(int scenario);

// Layouts inside one unit bin.

/// Big square at the origin, up to five small F-squares in the L-shaped strip:
/// two along each arm and one in the far corner.
std::vector<PlacedItem> l_strip_layout(const Item& big, const std::vector<Item>& strip);
/// Up to nine squares of side below 1/3 on the 1/3 grid.
std::vector<PlacedItem> grid_layout(const std::vector<Item>& squares);
/// Big square at the origin, three T-squares in the other corners and two
/// F-squares between adjacent T-squares.
std::vector<PlacedItem> corner_layout(const Item& big, const std::vector<Item>& t3, const std::vector<Item>& f2);
/// Up to four T-squares as a 2x2 block in a corner, up to five F-squares around it.
std::vector<PlacedItem> block_layout(const std::vector<Item>& t4, const std::vector<Item>& f5);

/// Constructive packing for scenario 1..3. `t_items` is empty for scenario 1.
Packing sp_opt_packing(int scenario, long m, const std::vector<Item>& f_items, const std::vector<Item>& t_items,
                       const std::vector<Item>& continuation);

/// The upper bounds the constructions must respect.
Rational sp_lemma_bound(int scenario, long m, long y4, long s3, long l3);

SPRun run_full_sp(const std::string& algorithm, long m);

}  // namespace packbound
