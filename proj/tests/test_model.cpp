#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/instance_io.hpp"
#include "packbound/model.hpp"

#include <random>

using namespace packbound;

namespace {

ExactNumber q(long n, long d) { return ExactNumber(Rational(n, d)); }

Item item(std::size_t id, ExactNumber size, std::optional<ColorId> color = std::nullopt) {
    return Item{id, std::move(size), color, ""};
}

Rule rule_of(Packing& p, const Item& it, const Placement& pl) {
    try {
        p.add_item(it, pl);
    } catch (const PackingError& e) {
        return e.rule();
    }
    FAIL("placement was accepted");
    return Rule::InvalidSize;
}

Placement at(std::size_t bin, ExactNumber x, ExactNumber y) { return Placement{bin, Point{std::move(x), std::move(y)}}; }

}  // namespace

TEST_CASE("a unit item fills an empty bin") {
    Packing p(VariantRules::one_d());
    p.add_item(item(0, ExactNumber(1)), Placement{0, {}});
    CHECK(p.cost() == 1);
    CHECK(p.bin(0).load == ExactNumber(1));
    CHECK(validate_packing(p).empty());
}

TEST_CASE("capacity is decided exactly against tiny perturbations") {
    const auto gamma = ExactNumber::inverse_power(10, BigInt(32));
    const auto a = ExactNumber::inverse_power(10, BigInt(20));
    Packing p(VariantRules::one_d());
    p.add_item(item(0, q(6, 7) - gamma), Placement{0, {}});
    CHECK_FALSE(p.fits(0, item(1, q(1, 7) + a)));
    CHECK(rule_of(p, item(1, q(1, 7) + a), Placement{0, {}}) == Rule::CapacityExceeded);
    CHECK(p.item_count() == 1);
    CHECK(p.fits(0, item(1, q(1, 7) + gamma)));
    CHECK(p.free_space(0) == q(1, 7) + gamma);
}

TEST_CASE("class constraint limits colors per bin") {
    Packing p(VariantRules::class_constrained(2));
    p.add_item(item(0, q(1, 10), 1), Placement{0, {}});
    p.add_item(item(1, q(1, 10), 2), Placement{0, {}});
    p.add_item(item(2, q(1, 10), 2), Placement{0, {}});
    CHECK(p.bin(0).colors == std::vector<ColorId>{1, 2});
    CHECK_FALSE(p.fits(0, item(3, q(1, 10), 3)));
    CHECK(rule_of(p, item(3, q(1, 10), 3), Placement{0, {}}) == Rule::ColorLimitExceeded);
    CHECK(rule_of(p, item(3, q(1, 10)), Placement{0, {}}) == Rule::ColorMismatch);
    Packing plain(VariantRules::one_d());
    CHECK(rule_of(plain, item(0, q(1, 10), 4), Placement{0, {}}) == Rule::ColorMismatch);
}

TEST_CASE("structural errors") {
    Packing p(VariantRules::one_d());
    CHECK(rule_of(p, item(0, q(1, 2)), Placement{1, {}}) == Rule::BadBinIndex);
    CHECK(rule_of(p, item(0, ExactNumber(0)), Placement{0, {}}) == Rule::InvalidSize);
    CHECK(rule_of(p, item(0, q(3, 2)), Placement{0, {}}) == Rule::InvalidSize);
    CHECK(rule_of(p, item(0, q(1, 2)), at(0, ExactNumber(0), ExactNumber(0))) == Rule::PositionMismatch);
    p.add_item(item(0, q(1, 4)), Placement{0, {}});
    CHECK(rule_of(p, item(0, q(1, 4)), Placement{0, {}}) == Rule::DuplicateItem);
    CHECK(p.cost() == 1);

    Packing sq(VariantRules::squares());
    CHECK(rule_of(sq, item(0, q(1, 2)), Placement{0, {}}) == Rule::PositionMismatch);
    CHECK(rule_of(sq, item(0, q(1, 2)), at(0, q(3, 4), ExactNumber(0))) == Rule::OutOfBinBounds);
    CHECK(rule_of(sq, item(0, q(1, 2)), at(0, q(-1, 4), ExactNumber(0))) == Rule::OutOfBinBounds);
}

TEST_CASE("square disjointness allows shared edges only") {
    CHECK(squares_disjoint(q(1, 2), {ExactNumber(0), ExactNumber(0)}, q(1, 2), {q(1, 2), ExactNumber(0)}));
    CHECK_FALSE(squares_disjoint(q(1, 2), {ExactNumber(0), ExactNumber(0)}, q(1, 2), {q(1, 4), q(1, 4)}));
    CHECK(squares_disjoint(q(1, 2), {ExactNumber(0), ExactNumber(0)}, q(1, 2), {q(1, 2), q(1, 2)}));

    const auto gamma = ExactNumber::inverse_power(10, BigInt(40));
    const auto big = q(3, 4) - gamma;
    const auto small_side = q(1, 4) + gamma / Rational(2);
    const Point beside{big + gamma / Rational(4), ExactNumber(0)};
    CHECK(squares_disjoint(big, {ExactNumber(0), ExactNumber(0)}, small_side, beside));
    CHECK(beside.x + small_side <= ExactNumber(1));
    const Point overlap{big - gamma / Rational(4), ExactNumber(0)};
    CHECK_FALSE(squares_disjoint(big, {ExactNumber(0), ExactNumber(0)}, small_side, overlap));

    Packing sq(VariantRules::squares());
    sq.add_item(item(0, big), at(0, ExactNumber(0), ExactNumber(0)));
    sq.add_item(item(1, small_side), at(0, beside.x, beside.y));
    CHECK(rule_of(sq, item(2, small_side), at(0, overlap.x, q(1, 2))) == Rule::GeometricOverlap);
    CHECK(validate_packing(sq).empty());
}

TEST_CASE("validation reports every violation of an unchecked packing") {
    const auto third = q(1, 3) + ExactNumber::inverse_power(10, BigInt(30));
    std::vector<PlacedItem> bin;
    for (std::size_t i = 0; i < 3; ++i) bin.push_back({item(i, third), Placement{0, {}}});
    const Packing p = Packing::unchecked(VariantRules::one_d(), {bin});
    const auto v = validate_packing(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == Rule::CapacityExceeded);
    CHECK(v[0].bin == 0);

    CHECK(validate_packing(Packing(VariantRules::squares())).empty());
    CHECK(validate_packing(Packing(VariantRules::class_constrained(3))).empty());

    std::vector<PlacedItem> squares{{item(0, q(1, 2)), at(0, ExactNumber(0), ExactNumber(0))},
                                    {item(1, q(1, 2)), at(0, q(1, 4), q(1, 4))}};
    const auto bad = validate_packing(Packing::unchecked(VariantRules::squares(), {squares}));
    REQUIRE_FALSE(bad.empty());
    CHECK(bad[0].rule == Rule::GeometricOverlap);

    std::vector<PlacedItem> colored{{item(0, q(1, 9), 1), Placement{0, {}}},
                                    {item(1, q(1, 9), 2), Placement{0, {}}},
                                    {item(2, q(1, 9), 3), Placement{0, {}}}};
    const auto over = validate_packing(Packing::unchecked(VariantRules::class_constrained(2), {colored}));
    REQUIRE(over.size() == 1);
    CHECK(over[0].rule == Rule::ColorLimitExceeded);
}

TEST_CASE("property: accepted additions keep the packing valid and leave other bins unchanged") {
    std::mt19937 rng(7);
    for (int variant = 0; variant < 3; ++variant) {
        const VariantRules rules = variant == 0   ? VariantRules::one_d()
                                   : variant == 1 ? VariantRules::class_constrained(2)
                                                  : VariantRules::squares();
        Packing p(rules);
        for (std::size_t id = 0; id < 300; ++id) {
            const long num = std::uniform_int_distribution<long>(1, 60)(rng);
            Item it = item(id, q(num, 100));
            if (rules.colored()) it.color = std::uniform_int_distribution<ColorId>(0, 4)(rng);
            const std::size_t target = std::uniform_int_distribution<std::size_t>(0, p.cost())(rng);
            Placement pl{target, {}};
            if (!rules.one_dimensional()) {
                pl.position = Point{q(std::uniform_int_distribution<long>(0, 60)(rng), 100),
                                    q(std::uniform_int_distribution<long>(0, 60)(rng), 100)};
            }
            const auto before = p.bins();
            const auto verdict = p.check(it, pl);
            bool accepted = true;
            try {
                p.add_item(it, pl);
            } catch (const PackingError& e) {
                accepted = false;
                REQUIRE(verdict);
                CHECK(e.rule() == verdict->rule);
            }
            CHECK(accepted == !verdict.has_value());
            const std::size_t common = std::min(before.size(), p.bins().size());
            for (std::size_t b = 0; b < common; ++b) {
                if (accepted && b == target) continue;
                CHECK(p.bin(b).items.size() == before[b].items.size());
            }
        }
        CHECK(validate_packing(p).empty());
    }
}

TEST_CASE("property: square disjointness is symmetric") {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto r = [&] { return q(std::uniform_int_distribution<long>(0, 16)(rng), 16); };
        const auto sa = r() + q(1, 16), sb = r() + q(1, 16);
        const Point a{r(), r()}, b{r(), r()};
        CHECK(squares_disjoint(sa, a, sb, b) == squares_disjoint(sb, b, sa, a));
    }
}

TEST_CASE("instance files round-trip with exact sizes") {
    const auto tiny = q(1, 3) + ExactNumber::inverse_power(10, BigInt(25));
    Instance in;
    in.rules = VariantRules::class_constrained(3);
    in.items = {Item{0, tiny, 4, "T-small"}, Item{1, q(2, 5), 5, ""}};
    in.placements = {Placement{0, {}}, Placement{0, {}}};
    const Json j = instance_to_json(in);
    CHECK(j.at("variant") == "clcbp");
    CHECK(j.at("t") == 3);
    CHECK(j.at("items")[1].at("size") == "2/5");
    const Instance back = instance_from_json(Json::parse(j.dump()));
    CHECK(back.rules == in.rules);
    REQUIRE(back.items.size() == 2);
    CHECK(back.items[0].size == tiny);
    CHECK(back.items[0].label == "T-small");
    CHECK(back.items[1].color == 5);
    const Packing p = instance_packing(back);
    CHECK(p.cost() == 1);
    CHECK(validate_packing(p).empty());
    CHECK(packing_to_json(p).dump() == packing_to_json(instance_packing(in)).dump());
}

TEST_CASE("malformed instances are rejected") {
    CHECK_THROWS_AS(instance_from_json(Json::array()), std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"variant":"ko","items":[]})")), std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"variant":"hex","items":[]})")), std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"items":[{"size":0.5}]})")), std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"items":[{}]})")), std::invalid_argument);
    CHECK_THROWS_AS(instance_packing(instance_from_json(Json::parse(R"({"items":[{"size":"1/2"}]})"))),
                    std::invalid_argument);
    CHECK_THROWS_AS(read_instance_file("/nonexistent/instance.json"), std::invalid_argument);
}

TEST_CASE("rule names") {
    CHECK(rule_name(Rule::CapacityExceeded) == "CapacityExceeded");
    CHECK(rule_name(Rule::ColorLimitExceeded) == "ColorLimitExceeded");
    CHECK(VariantRules::known_opt(8).advice == 8);
}
