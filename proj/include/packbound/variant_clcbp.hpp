#pragma once

#include "packbound/adaptive_oracle.hpp"
#include "packbound/scenario.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace packbound {

struct CLCBPConfig {
    int t = 2;
    long m = 6;
    unsigned k_e = 20;
    unsigned k_t = 10;
};

/// Throws VariantError::InvalidConfig unless t is 2 or 3 and M is a positive multiple of 6.
void validate_clcbp_config(const CLCBPConfig& config);

struct ColorRecord {
    bool used_by_e = false;
    bool reusable_for_t = false;  // E-color outside every t-full bin
    int t_count = 0;
    int matched = 0;              // small T-items of this color, each matched by a 2/3-item
};

struct CLCBPCensus {
    std::vector<long> x;  // x[j] = bins with j E-items, j = 0..t (x[0] unused)
    long x_total = 0;
    long z1 = 0;          // bins with at least one T-item
    long z2 = 0;          // bins with exactly two T-items
    ExactNumber eps1;
    ExactNumber eps2;
    std::map<ColorId, ColorRecord> colors;

    long xj(int j) const { return j < static_cast<int>(x.size()) ? x[static_cast<std::size_t>(j)] : 0; }
};

struct CLCBPEPhase {
    PhaseRecord record;
    std::vector<long> x;
    long x_total = 0;
    Separator separator;
    ExactNumber eps1;
};

/// How the t=3 T-phase ended.
enum class TStop { FixedCount, SecondCondition, FirstThenThird, CapacityReached };

std::string tstop_name(TStop stop);

/// Stopping rule of the T-phase, fed (Z1, Z2) after every T-item.
class TPhaseStop {
public:
    TPhaseStop(int t, long m, long x1, long x2, long x3);

    /// True once no further T-item is presented: the rule has fired and the count is even.
    bool after_item(long z1, long z2);
    bool decided() const { return decided_; }
    long count() const { return count_; }
    TStop reason() const { return reason_; }

private:
    int t_;
    long m_;
    long x3_;
    long target_;  // t = 2 only
    long count_ = 0;
    bool third_mode_ = false;
    bool decided_ = false;
    TStop reason_ = TStop::FixedCount;
};

struct CLCBPTPhase {
    bool skipped = false;  // X_t <= M/(2t)
    PhaseRecord record;
    long z1 = 0;
    long z2 = 0;
    long one_t_bins = 0;   // Z1 - Z2
    TStop stop = TStop::FixedCount;
    Separator separator;
    ExactNumber eps2;
    std::vector<ColorId> reusable;  // reusable E-colors in increasing id
    Packing packing{VariantRules::class_constrained(2)};
};

struct CLCBPOptions {
    bool oracle_check = false;
    std::size_t node_budget = 0;
};

/// Lemma-style bound from the E-phase census alone.
struct ClosedFormBound {
    Rational linear;                // (t-1)x + 1
    std::optional<Rational> small;  // 2 - 1/(2t) when x_t <= 1/(2t)

    Rational best() const;
};

ClosedFormBound closed_form_bound(const CLCBPCensus& census, int t, long m);

struct CLCBPRun {
    std::string algorithm;
    CLCBPConfig config;
    CLCBPEPhase e_phase;
    CLCBPTPhase t_phase;
    CLCBPCensus census;
    ClosedFormBound bound;
    std::vector<ScenarioResult> scenarios;
    std::vector<CrossCheck> checks;

    bool passed() const;
    Rational max_ratio() const;
};

CLCBPEPhase run_e_phase(const std::string& algorithm, const CLCBPConfig& config);
CLCBPTPhase run_t_phase_clcbp(const CLCBPEPhase& e_phase, const std::string& algorithm, const CLCBPConfig& config);

/// Census from the E-phase and, unless skipped, the T-phase.
CLCBPCensus clcbp_census(const CLCBPEPhase& e_phase, const CLCBPTPhase& t_phase, const CLCBPConfig& config);

/// floor((M-X)/t) items of size 1 - eps1 carrying the colors of the first small E-items.
std::vector<Item> huge_items(const CLCBPEPhase& e_phase, const CLCBPConfig& config, std::size_t first_id);

enum class FinalKind { Halves, TwoThirds };

std::string final_name(FinalKind which);

/// Matching items: one of size 3/5 per T-item, or one of size 2/3 - eps2/5 per small T-item.
std::vector<Item> final_items(const CLCBPTPhase& t_phase, FinalKind which, std::size_t first_id);

/// Offline packing after the huge items: each huge item with t small E-items, one of its color.
Packing huge_opt_packing(const CLCBPEPhase& e_phase, const std::vector<Item>& huge, const CLCBPConfig& config);

/// Offline packing after the matching items, following the pairing of the lower-bound argument.
Packing final_opt_packing(const CLCBPEPhase& e_phase, const CLCBPTPhase& t_phase, const std::vector<Item>& finals,
                          FinalKind which, const CLCBPConfig& config);

/// Upper bound the final construction must respect.
Rational final_lemma_bound(FinalKind which, const CLCBPCensus& census, int t);

ScenarioResult huge_scenario(const CLCBPEPhase& e_phase, const std::string& algorithm, const CLCBPConfig& config,
                             const CLCBPOptions& options = {});
ScenarioResult final_scenario(const CLCBPEPhase& e_phase, const CLCBPTPhase& t_phase, const std::string& algorithm,
                              FinalKind which, const CLCBPConfig& config, const CLCBPOptions& options = {});

/// (3Z1+4Z2 <= 2M) or (Z1+Z2+6X3 <= 2M and 2Z1+3Z2 <= 6X3).
bool post_phase_disjunction(const CLCBPCensus& census, long m);
/// (3Z1+4Z2 <= 2M) or (2Z1+3Z2 <= 6X3 <= 2M).
bool post_phase_final_form(const CLCBPCensus& census, long m);

CLCBPRun run_full_clcbp(const std::string& algorithm, const CLCBPConfig& config, const CLCBPOptions& options = {});

}  // namespace packbound
