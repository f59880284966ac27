#pragma once

#include "packbound/adaptive_oracle.hpp"
#include "packbound/scenario.hpp"

#include <string>
#include <utility>
#include <vector>

namespace packbound {

/// Bin categories after the T-items, as (S-count, T-count) classes.
struct KOCensus {
    long x60 = 0, x30 = 0, x20 = 0, x10 = 0;
    long x41 = 0, x11 = 0, x12 = 0, x22 = 0;
    long x01 = 0, x02 = 0;
    long y7 = 0, y3 = 0;
    ExactNumber gamma1;
    ExactNumber gamma2;

    /// Category counts in program variable order (y7, y3, x60, ...).
    std::vector<std::pair<std::string, long>> entries() const;
};

struct KOSPhase {
    PhaseRecord record;
    long y7 = 0;
    Separator separator;
    ExactNumber gamma1;
};

struct KOTPhase {
    PhaseRecord record;
    long y3 = 0;
    Separator separator;
    ExactNumber gamma2;
    KOCensus census;
    Packing packing{VariantRules{}};  // algorithm packing after the T-items
};

struct KOOptions {
    bool oracle_check = false;   // confirm OPT = M with the exact solver
    std::size_t node_budget = 0; // 0: default_node_budget()
};

struct KORun {
    std::string algorithm;
    long m = 0;
    KOSPhase s_phase;
    KOTPhase t_phase;
    std::vector<ScenarioResult> scenarios;
    std::vector<CrossCheck> checks;  // census identities, replay determinism, program rows

    bool passed() const;
    Rational max_ratio() const;
};

VariantRules ko_rules(long m);
void validate_ko_m(long m);

KOSPhase run_s_phase(const std::string& algorithm, long m);
KOTPhase run_t_phase(const KOSPhase& s_phase, const std::string& algorithm, long m);

/// Throws VariantError::CensusGap for a bin outside the categories.
KOCensus classify_ko(const Packing& packing);

/// Continuation items for scenario 1..5, ids starting at first_id.
std::vector<Item> ko_scenario_items(int scenario, long m, long y7, long y3, const ExactNumber& gamma1,
                                    const ExactNumber& gamma2, std::size_t first_id);

/// Offline packing of cost M. `t_items` is empty for scenarios 1 and 2.
Packing ko_opt_packing(int scenario, long m, const std::vector<Item>& s_items, const std::vector<Item>& t_items,
                       const std::vector<Item>& continuation);

std::string ko_scenario_name(int scenario);

KORun run_full_ko(const std::string& algorithm, long m, const KOOptions& options = {});

}  // namespace packbound
