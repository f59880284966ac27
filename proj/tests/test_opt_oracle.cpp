#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/opt_oracle.hpp"

#include <functional>
#include <random>
#include <set>

using namespace packbound;

namespace {

std::vector<Item> sized(const std::vector<Rational>& sizes) {
    std::vector<Item> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) out.push_back(Item{i, ExactNumber(sizes[i]), std::nullopt, ""});
    return out;
}

// Exhaustive minimum over all set partitions (restricted growth strings).
std::size_t brute_force(const VariantRules& rules, const std::vector<Item>& items) {
    const std::size_t n = items.size();
    std::vector<std::size_t> label(n, 0);
    std::size_t best = n;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (used >= best) return;
        if (i == n) {
            std::vector<Rational> load(used);
            std::vector<std::set<ColorId>> colors(used);
            for (std::size_t j = 0; j < n; ++j) {
                load[label[j]] += items[j].size.as_rational();
                if (items[j].color) colors[label[j]].insert(*items[j].color);
            }
            for (std::size_t b = 0; b < used; ++b) {
                if (load[b] > Rational(1)) return;
                if (rules.colored() && colors[b].size() > static_cast<std::size_t>(rules.colors_per_bin)) return;
            }
            best = used;
            return;
        }
        for (std::size_t b = 0; b <= used; ++b) {
            label[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace

TEST_CASE("small fixed instances") {
    const VariantRules oned = VariantRules::one_d();
    auto r = min_bins({oned, sized({Rational(3, 5), Rational(3, 5), Rational(2, 5), Rational(2, 5)}), 0});
    CHECK(r.count == 2);
    CHECK(r.exact);
    CHECK(validate_packing(r.witness).empty());
    CHECK(r.witness.cost() == 2);
    CHECK(r.witness.item_count() == 4);

    auto empty = min_bins({oned, {}, 0});
    CHECK(empty.count == 0);
    CHECK(empty.exact);

    // four S-items and four items of 4/5
    std::vector<Rational> sizes;
    for (int i = 0; i < 4; ++i) sizes.push_back(Rational(1, 7) + Rational(1, 100000 * (i + 2)));
    for (int i = 0; i < 4; ++i) sizes.push_back(Rational(4, 5));
    CHECK(min_bins({VariantRules::known_opt(4), sized(sizes), 0}).count == 4);
}

TEST_CASE("class constraints") {
    const VariantRules t2 = VariantRules::class_constrained(2);
    std::vector<Item> items;
    for (long c = 0; c < 4; ++c) items.push_back(Item{static_cast<std::size_t>(c), ExactNumber(Rational(1, 1000)), c, ""});
    items.push_back(Item{4, ExactNumber(Rational(999, 1000) - Rational(1, 1000)), 0L, "huge"});
    const auto r = min_bins({t2, items, 0});
    CHECK(r.count == 2);
    CHECK(brute_force(t2, items) == 2);
    CHECK(validate_packing(r.witness).empty());
    CHECK(combined_lower_bound(VariantRules::class_constrained(1), items) == 4);
}

TEST_CASE("lower bounds") {
    // three items of 0.4 and three of 0.35: total 2.25, L2 = 3
    CHECK(martello_toth_l2(sized({Rational(2, 5), Rational(2, 5), Rational(2, 5), Rational(7, 20), Rational(7, 20),
                                  Rational(7, 20)})) >= 3);
    CHECK(martello_toth_l2(sized({Rational(3, 5), Rational(3, 5), Rational(3, 5), Rational(1, 2), Rational(1, 2)})) == 4);
    CHECK(combined_lower_bound(VariantRules::one_d(), sized({Rational(1, 10)})) == 1);
}

TEST_CASE("symbolic sizes") {
    const ExactNumber tiny = ExactNumber::inverse_power(10, BigInt(1000));
    std::vector<Item> items;
    for (std::size_t i = 0; i < 3; ++i) items.push_back(Item{i, ExactNumber(Rational(1, 3)) + tiny, std::nullopt, ""});
    items.push_back(Item{3, ExactNumber(Rational(2, 3)) - tiny * Rational(2), std::nullopt, ""});
    const auto r = min_bins({VariantRules::one_d(), items, 0});
    CHECK(r.count == 2);
    CHECK(validate_packing(r.witness).empty());
}

TEST_CASE("branch and bound agrees with exhaustive partitions") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(1, 60);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_int_distribution<long> color(0, 3);
    for (int trial = 0; trial < 300; ++trial) {
        const bool colored = trial % 3 == 0;
        const VariantRules rules = colored ? VariantRules::class_constrained(1 + trial % 2) : VariantRules::one_d();
        std::vector<Item> items;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            std::optional<ColorId> c;
            if (colored) c = color(rng);
            items.push_back(Item{static_cast<std::size_t>(i), ExactNumber(Rational(num(rng), 60)), c, ""});
        }
        const auto r = min_bins({rules, items, 0});
        REQUIRE(r.exact);
        CHECK(r.count == brute_force(rules, items));
        CHECK(r.witness.cost() == r.count);
        CHECK(r.witness.item_count() == items.size());
        CHECK(validate_packing(r.witness).empty());
        CHECK(r.lower_bound <= r.count);
        CHECK(first_fit_decreasing(rules, items).cost() >= r.count);
    }
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    std::vector<Rational> sizes;
    // 2x0.26 .. patterns that FFD solves badly and L2 does not close
    for (int i = 0; i < 6; ++i) sizes.push_back(Rational(26, 100));
    for (int i = 0; i < 6; ++i) sizes.push_back(Rational(25, 100));
    for (int i = 0; i < 6; ++i) sizes.push_back(Rational(49, 100));
    const auto items = sized(sizes);
    const auto full = min_bins({VariantRules::one_d(), items, 0});
    CHECK(full.exact);
    const auto capped = min_bins({VariantRules::one_d(), items, 1});
    if (capped.count > capped.lower_bound) {
        CHECK(capped.budget_exceeded);
        CHECK_FALSE(capped.exact);
    }
    CHECK(capped.count >= full.count);
    CHECK(validate_packing(capped.witness).empty());
}

TEST_CASE("square variants are rejected") {
    CHECK_THROWS_AS(min_bins({VariantRules::squares(), sized({Rational(1, 2)}), 0}), std::invalid_argument);
}
