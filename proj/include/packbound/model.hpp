#pragma once

#include "packbound/exact_number.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace packbound {

enum class VariantKind { OneD, KnownOpt, Squares, ClassConstrained };

/// Which packing rules a bin must satisfy.
struct VariantRules {
    VariantKind kind = VariantKind::OneD;
    long advice = 0;          // known optimal cost, KnownOpt only
    int colors_per_bin = 0;   // t, ClassConstrained only

    static VariantRules one_d() { return {}; }
    static VariantRules known_opt(long advice) { return {VariantKind::KnownOpt, advice, 0}; }
    static VariantRules squares() { return {VariantKind::Squares, 0, 0}; }
    static VariantRules class_constrained(int t) { return {VariantKind::ClassConstrained, 0, t}; }

    bool one_dimensional() const { return kind != VariantKind::Squares; }
    bool colored() const { return kind == VariantKind::ClassConstrained; }
    std::string name() const;

    friend bool operator==(const VariantRules&, const VariantRules&) = default;
};

using ColorId = long;

struct Item {
    std::size_t id = 0;
    ExactNumber size;  // side length for squares
    std::optional<ColorId> color;
    std::string label;
};

struct Point {
    ExactNumber x;
    ExactNumber y;
};

struct Placement {
    std::size_t bin = 0;
    std::optional<Point> position;
};

struct PlacedItem {
    Item item;
    Placement placement;
};

struct Bin {
    std::vector<PlacedItem> items;
    ExactNumber load;
    std::vector<ColorId> colors;  // distinct, sorted

    bool has_color(ColorId c) const;
    std::size_t count_label(const std::string& label) const;
};

enum class Rule {
    CapacityExceeded,
    ColorLimitExceeded,
    GeometricOverlap,
    OutOfBinBounds,
    DuplicateItem,
    BadBinIndex,
    PositionMismatch,
    ColorMismatch,
    InvalidSize,
};

std::string rule_name(Rule rule);

class PackingError : public std::runtime_error {
public:
    PackingError(Rule rule, std::size_t bin, std::vector<std::size_t> items, const std::string& what);
    Rule rule() const { return rule_; }
    std::size_t bin() const { return bin_; }
    const std::vector<std::size_t>& items() const { return items_; }

private:
    Rule rule_;
    std::size_t bin_;
    std::vector<std::size_t> items_;
};

struct Violation {
    std::size_t bin = 0;
    Rule rule = Rule::CapacityExceeded;
    std::vector<std::size_t> items;
    std::string detail;
};

/// Bins in creation order; a fresh bin is always index bins().size().
class Packing {
public:
    explicit Packing(VariantRules rules) : rules_(rules) {}

    /// Builds a packing without checking any rule (for imported or hand-made layouts).
    static Packing unchecked(VariantRules rules, const std::vector<std::vector<PlacedItem>>& bins);

    const VariantRules& rules() const { return rules_; }
    const std::vector<Bin>& bins() const { return bins_; }
    const Bin& bin(std::size_t index) const { return bins_.at(index); }
    std::size_t cost() const { return bins_.size(); }
    std::size_t item_count() const;
    bool contains_item(std::size_t id) const;

    /// Checks every rule for the target bin; leaves the packing untouched on failure.
    void add_item(const Item& item, const Placement& placement);
    std::optional<Violation> check(const Item& item, const Placement& placement) const;

    /// 1-D only: capacity and color limit permit the item in this bin.
    bool fits(std::size_t bin, const Item& item) const;
    ExactNumber free_space(std::size_t bin) const;

private:
    VariantRules rules_;
    std::vector<Bin> bins_;
    std::vector<std::size_t> ids_;  // sorted
};

/// Open interiors are disjoint; touching boundaries are allowed.
bool squares_disjoint(const ExactNumber& side_a, const Point& a, const ExactNumber& side_b, const Point& b);

std::vector<Violation> validate_packing(const Packing& packing);

}  // namespace packbound
