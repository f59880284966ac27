#include "packbound/model.hpp"

#include <algorithm>

namespace packbound {

std::string VariantRules::name() const {
    switch (kind) {
        case VariantKind::OneD: return "oned";
        case VariantKind::KnownOpt: return "known-opt(" + std::to_string(advice) + ")";
        case VariantKind::Squares: return "squares";
        case VariantKind::ClassConstrained: return "class-constrained(t=" + std::to_string(colors_per_bin) + ")";
    }
    return "unknown";
}

bool Bin::has_color(ColorId c) const { return std::binary_search(colors.begin(), colors.end(), c); }

std::size_t Bin::count_label(const std::string& label) const {
    return static_cast<std::size_t>(
        std::count_if(items.begin(), items.end(), [&](const PlacedItem& p) { return p.item.label == label; }));
}

std::string rule_name(Rule rule) {
    switch (rule) {
        case Rule::CapacityExceeded: return "CapacityExceeded";
        case Rule::ColorLimitExceeded: return "ColorLimitExceeded";
        case Rule::GeometricOverlap: return "GeometricOverlap";
        case Rule::OutOfBinBounds: return "OutOfBinBounds";
        case Rule::DuplicateItem: return "DuplicateItem";
        case Rule::BadBinIndex: return "BadBinIndex";
        case Rule::PositionMismatch: return "PositionMismatch";
        case Rule::ColorMismatch: return "ColorMismatch";
        case Rule::InvalidSize: return "InvalidSize";
    }
    return "Unknown";
}

PackingError::PackingError(Rule rule, std::size_t bin, std::vector<std::size_t> items, const std::string& what)
    : std::runtime_error(rule_name(rule) + " in bin " + std::to_string(bin) + ": " + what),
      rule_(rule),
      bin_(bin),
      items_(std::move(items)) {}

namespace {

const ExactNumber kOne(1);

std::optional<Violation> item_shape_violation(const VariantRules& rules, const Item& item, const Placement& placement) {
    if (item.size.sign() <= 0 || item.size > kOne) {
        return Violation{placement.bin, Rule::InvalidSize, {item.id}, "size " + item.size.to_string() + " outside (0,1]"};
    }
    if (item.color.has_value() != rules.colored()) {
        return Violation{placement.bin, Rule::ColorMismatch, {item.id},
                         rules.colored() ? "item has no color" : "color on an uncolored variant"};
    }
    const bool wants_position = !rules.one_dimensional();
    if (placement.position.has_value() != wants_position) {
        return Violation{placement.bin, Rule::PositionMismatch, {item.id},
                         wants_position ? "square placed without coordinates" : "coordinates on a 1-D variant"};
    }
    if (wants_position) {
        const Point& p = *placement.position;
        if (p.x.sign() < 0 || p.y.sign() < 0 || p.x + item.size > kOne || p.y + item.size > kOne) {
            return Violation{placement.bin, Rule::OutOfBinBounds, {item.id},
                             "square of side " + item.size.to_string() + " at (" + p.x.to_string() + ", " +
                                 p.y.to_string() + ") leaves the unit bin"};
        }
    }
    return std::nullopt;
}

std::optional<Violation> bin_rule_violation(const VariantRules& rules, const Bin& bin, std::size_t index,
                                            const Item& item, const Placement& placement) {
    if (rules.one_dimensional()) {
        if (bin.load + item.size > kOne) {
            std::vector<std::size_t> ids;
            for (const auto& p : bin.items) ids.push_back(p.item.id);
            ids.push_back(item.id);
            return Violation{index, Rule::CapacityExceeded, ids, "load would be " + (bin.load + item.size).to_string()};
        }
        if (rules.colored() && !bin.has_color(*item.color) &&
            bin.colors.size() + 1 > static_cast<std::size_t>(rules.colors_per_bin)) {
            std::vector<std::size_t> ids;
            for (const auto& p : bin.items) ids.push_back(p.item.id);
            ids.push_back(item.id);
            return Violation{index, Rule::ColorLimitExceeded, ids,
                             "color " + std::to_string(*item.color) + " would be color number " +
                                 std::to_string(bin.colors.size() + 1)};
        }
        return std::nullopt;
    }
    for (const auto& other : bin.items) {
        if (!squares_disjoint(other.item.size, *other.placement.position, item.size, *placement.position)) {
            return Violation{index, Rule::GeometricOverlap, {other.item.id, item.id},
                             "squares " + std::to_string(other.item.id) + " and " + std::to_string(item.id) +
                                 " overlap"};
        }
    }
    return std::nullopt;
}

void append(Bin& bin, const Item& item, const Placement& placement) {
    bin.items.push_back(PlacedItem{item, placement});
    if (item.color) {
        auto it = std::lower_bound(bin.colors.begin(), bin.colors.end(), *item.color);
        if (it == bin.colors.end() || *it != *item.color) bin.colors.insert(it, *item.color);
    }
    bin.load += item.size;
}

}  // namespace

Packing Packing::unchecked(VariantRules rules, const std::vector<std::vector<PlacedItem>>& bins) {
    Packing out(rules);
    for (std::size_t b = 0; b < bins.size(); ++b) {
        out.bins_.emplace_back();
        for (const auto& placed : bins[b]) {
            Placement pl = placed.placement;
            pl.bin = b;
            append(out.bins_.back(), placed.item, pl);
            out.ids_.insert(std::lower_bound(out.ids_.begin(), out.ids_.end(), placed.item.id), placed.item.id);
        }
    }
    return out;
}

std::size_t Packing::item_count() const { return ids_.size(); }

bool Packing::contains_item(std::size_t id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

std::optional<Violation> Packing::check(const Item& item, const Placement& placement) const {
    if (placement.bin > bins_.size()) {
        return Violation{placement.bin, Rule::BadBinIndex, {item.id},
                         "bin " + std::to_string(placement.bin) + " with only " + std::to_string(bins_.size()) +
                             " bins open"};
    }
    if (contains_item(item.id)) {
        return Violation{placement.bin, Rule::DuplicateItem, {item.id}, "item already packed"};
    }
    if (auto v = item_shape_violation(rules_, item, placement)) return v;
    if (placement.bin == bins_.size()) return std::nullopt;
    return bin_rule_violation(rules_, bins_[placement.bin], placement.bin, item, placement);
}

void Packing::add_item(const Item& item, const Placement& placement) {
    if (auto v = check(item, placement)) throw PackingError(v->rule, v->bin, v->items, v->detail);
    if (placement.bin == bins_.size()) bins_.emplace_back();
    append(bins_[placement.bin], item, placement);
    ids_.insert(std::lower_bound(ids_.begin(), ids_.end(), item.id), item.id);
}

bool Packing::fits(std::size_t bin, const Item& item) const {
    if (!rules_.one_dimensional()) throw std::logic_error("fits() is defined for 1-D variants only");
    if (bin == bins_.size()) return true;
    const Placement pl{bin, std::nullopt};
    return !bin_rule_violation(rules_, bins_.at(bin), bin, item, pl).has_value();
}

ExactNumber Packing::free_space(std::size_t bin) const { return kOne - bins_.at(bin).load; }

bool squares_disjoint(const ExactNumber& side_a, const Point& a, const ExactNumber& side_b, const Point& b) {
    const bool apart_x = a.x + side_a <= b.x || b.x + side_b <= a.x;
    const bool apart_y = a.y + side_a <= b.y || b.y + side_b <= a.y;
    return apart_x || apart_y;
}

std::vector<Violation> validate_packing(const Packing& packing) {
    std::vector<Violation> out;
    const auto& rules = packing.rules();
    std::vector<std::size_t> seen;
    for (std::size_t b = 0; b < packing.bins().size(); ++b) {
        const Bin& bin = packing.bins()[b];
        Bin partial;
        for (const auto& placed : bin.items) {
            Placement pl = placed.placement;
            pl.bin = b;
            if (std::find(seen.begin(), seen.end(), placed.item.id) != seen.end()) {
                out.push_back(Violation{b, Rule::DuplicateItem, {placed.item.id}, "item appears twice"});
            }
            seen.push_back(placed.item.id);
            if (auto v = item_shape_violation(rules, placed.item, pl)) {
                out.push_back(*v);
                continue;
            }
            if (auto w = bin_rule_violation(rules, partial, b, placed.item, pl)) out.push_back(*w);
            append(partial, placed.item, pl);
        }
    }
    return out;
}

}  // namespace packbound
