#pragma once

#include "packbound/model.hpp"

#include <cstddef>
#include <vector>

namespace packbound {

/// 1-D instance for the exact solver. Square variants are rejected.
struct OracleInstance {
    VariantRules rules;
    std::vector<Item> items;
    std::size_t node_budget = 0;  // 0 means default_node_budget()
};

struct OracleResult {
    std::size_t count = 0;        // best cost found
    std::size_t lower_bound = 0;  // best proven lower bound
    bool exact = false;           // count == optimum
    bool budget_exceeded = false;
    std::size_t nodes = 0;
    Packing witness{VariantRules{}};
};

/// PACKBOUND_NODE_BUDGET if set, else 2,000,000.
std::size_t default_node_budget();

/// Martello-Toth L2 together with ceil(total size), the number of items above
/// 1/2 and ceil(#colors / t).
std::size_t combined_lower_bound(const VariantRules& rules, const std::vector<Item>& items);
std::size_t martello_toth_l2(const std::vector<Item>& items);

/// First Fit Decreasing, honouring the color limit.
Packing first_fit_decreasing(const VariantRules& rules, const std::vector<Item>& items);

/// Branch and bound over items in decreasing size. Each item goes into every
/// distinguishable open bin that can take it, then into a fresh bin.
OracleResult min_bins(const OracleInstance& instance);

}  // namespace packbound
