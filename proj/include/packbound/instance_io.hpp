#pragma once

#include "packbound/model.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace packbound {

using Json = nlohmann::ordered_json;

/// A list of items under a variant, as stored in instance files.
struct Instance {
    VariantRules rules;
    std::vector<Item> items;
    /// Optional bin assignment and coordinates, present when the file stores a packing.
    std::vector<std::optional<Placement>> placements;
};

VariantRules rules_from_json(const Json& j);
Json rules_to_json(const VariantRules& rules);

Json item_to_json(const Item& item, const std::optional<Placement>& placement = std::nullopt);
Json packing_to_json(const Packing& packing);

/// Throws std::invalid_argument on malformed input.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& instance);

Instance read_instance_file(const std::string& path);

/// Rebuilds the packing described by an instance whose items all carry placements.
Packing instance_packing(const Instance& instance);

}  // namespace packbound
