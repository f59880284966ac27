#pragma once

#include "packbound/contenders.hpp"
#include "packbound/mathprog.hpp"
#include "packbound/model.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace packbound {

class VariantError : public std::runtime_error {
public:
    enum class Kind { InvalidConfig, BadScenario, CensusGap, ConstructionFailed };
    VariantError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::string variant_error_name(VariantError::Kind kind);

struct CrossCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

void record(std::vector<CrossCheck>& checks, std::string name, bool passed, std::string detail = "");
bool all_passed(const std::vector<CrossCheck>& checks);

/// Outcome of one continuation of an adversarial input.
struct ScenarioResult {
    std::string name;
    std::size_t items_presented = 0;  // continuation items only
    std::size_t alg_cost = 0;
    std::size_t opt_cost = 0;
    bool opt_is_upper_bound = false;  // constructive packing, optimum not proven
    Rational ratio;                   // alg_cost / opt_cost
    std::vector<CrossCheck> checks;
    Packing alg_packing{VariantRules{}};
    Packing opt_packing{VariantRules{}};

    bool passed() const { return all_passed(checks); }
};

/// Statistics of one adaptive phase as seen by the algorithm.
struct PhaseRecord {
    std::vector<Item> items;
    std::vector<std::size_t> bins;  // bin chosen for each item
    std::vector<std::string> trace;
};

/// Places every item and returns the chosen bins.
std::vector<std::size_t> present_all(AlgorithmSession& session, const std::vector<Item>& items);

/// True iff the session's transcript starts with exactly these placements.
bool replays_identically(const AlgorithmSession& session, const std::vector<std::size_t>& bins);

/// Checks every row of `program` at a normalised census point. `r_for_row[i]`
/// fixes R for row i (rows without R may leave it empty) and `slack[i]` is the
/// additive allowance toward satisfaction.
void check_program_point(std::vector<CrossCheck>& checks, const Program& program,
                         const std::map<std::string, Rational>& point,
                         const std::vector<std::optional<Rational>>& r_for_row, const std::vector<Rational>& slack);

/// Appends "validates" and "cost" checks for a constructed packing.
void check_constructed(std::vector<CrossCheck>& checks, const std::string& what, const Packing& packing,
                       std::size_t expected_items);

Rational ratio_of(std::size_t alg, std::size_t opt);

}  // namespace packbound
