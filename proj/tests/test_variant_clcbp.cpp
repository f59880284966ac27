#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/variant_clcbp.hpp"

#include <set>

using namespace packbound;

namespace {

CLCBPConfig cfg(int t, long m) {
    CLCBPConfig c;
    c.t = t;
    c.m = m;
    return c;
}

void require_clean(const CLCBPRun& run) {
    for (const auto& c : run.checks) {
        INFO(c.name << " " << c.detail);
        CHECK(c.passed);
    }
    for (const auto& s : run.scenarios) {
        for (const auto& c : s.checks) {
            INFO(s.name << ": " << c.name << " " << c.detail);
            CHECK(c.passed);
        }
    }
}

const ScenarioResult& scenario(const CLCBPRun& run, const std::string& name) {
    for (const auto& s : run.scenarios) {
        if (s.name == name) return s;
    }
    FAIL("no scenario " << name);
    return run.scenarios.front();
}

CLCBPCensus census_with(long m, std::vector<long> x) {
    CLCBPCensus c;
    c.x = std::move(x);
    for (long v : c.x) c.x_total += v;
    (void)m;
    return c;
}

}  // namespace

TEST_CASE("configuration") {
    CHECK_THROWS_AS(validate_clcbp_config(cfg(4, 6)), VariantError);
    CHECK_THROWS_AS(validate_clcbp_config(cfg(2, 8)), VariantError);
    CHECK_THROWS_AS(validate_clcbp_config(cfg(3, 0)), VariantError);
    CHECK_NOTHROW(validate_clcbp_config(cfg(3, 12)));
    CHECK_THROWS_AS(run_e_phase("shelf-first-fit", cfg(2, 6)), ContenderError);
}

TEST_CASE("E-phase") {
    SUBCASE("color-aware First Fit pairs the tiny items") {
        const CLCBPEPhase e = run_e_phase("ccff", cfg(2, 12));
        CHECK(e.x[2] == 6);
        CHECK(e.x[1] == 0);
        CHECK(e.x_total == 6);
    }
    SUBCASE("one bin per item") {
        const CLCBPEPhase e = run_e_phase("fresh-bin", cfg(3, 12));
        CHECK(e.x[1] == 12);
        CHECK(e.x_total == 12);
    }
    SUBCASE("distinct colors, small iff not first in its bin") {
        const CLCBPEPhase e = run_e_phase("alternate-fit", cfg(3, 18));
        std::set<ColorId> colors;
        std::set<std::size_t> opened;
        for (std::size_t i = 0; i < e.record.items.size(); ++i) {
            colors.insert(*e.record.items[i].color);
            const bool first = opened.insert(e.record.bins[i]).second;
            CHECK(e.record.items[i].label == (first ? "E-large" : "E-small"));
        }
        CHECK(colors.size() == 18);
        long items = 0;
        for (int j = 1; j <= 3; ++j) items += j * e.x[static_cast<std::size_t>(j)];
        CHECK(items == 18);
    }
}

TEST_CASE("huge items") {
    SUBCASE("t=2, M=6, X=3") {
        const CLCBPEPhase e = run_e_phase("ccff", cfg(2, 6));
        REQUIRE(e.x_total == 3);
        const ScenarioResult r = huge_scenario(e, "ccff", cfg(2, 6));
        CHECK(r.items_presented == 1);
        CHECK(r.alg_cost == 4);
        CHECK(r.opt_cost == 3);
        CHECK_FALSE(r.opt_is_upper_bound);
        CHECK(r.passed());
    }
    SUBCASE("t=3 with X = M presents nothing") {
        const CLCBPEPhase e = run_e_phase("fresh-bin", cfg(3, 6));
        CHECK(huge_items(e, cfg(3, 6), 6).empty());
        const ScenarioResult r = huge_scenario(e, "fresh-bin", cfg(3, 6));
        CHECK(r.alg_cost == 6);
        CHECK(r.opt_cost == 2);
    }
    SUBCASE("colors are distinct small E-colors") {
        const CLCBPEPhase e = run_e_phase("alternate-fit", cfg(2, 24));
        const auto huge = huge_items(e, cfg(2, 24), 24);
        CHECK(static_cast<long>(huge.size()) == (24 - e.x_total) / 2);
        std::set<ColorId> seen;
        for (const auto& h : huge) {
            CHECK(seen.insert(*h.color).second);
            CHECK(e.record.items[static_cast<std::size_t>(*h.color)].label == "E-small");
            CHECK(h.size + Rational(2) * e.eps1 > ExactNumber(1));
        }
    }
}

TEST_CASE("T-phase stopping rule") {
    SUBCASE("t=2 presents max(2X1, 2X2) items") {
        TPhaseStop rule(2, 12, 2, 5, 0);
        for (int i = 1; i < 10; ++i) CHECK_FALSE(rule.after_item(i, 0));
        CHECK(rule.after_item(10, 0));
    }
    SUBCASE("t=3, every T-item in a fresh bin") {
        // 3Z1 >= 2M-7 first holds at Z1 = ceil((2M-7)/3) = 38 for M = 60
        TPhaseStop rule(3, 60, 0, 0, 6);
        long z1 = 0;
        bool stop = false;
        while (!stop) stop = rule.after_item(++z1, 0);
        CHECK(z1 == 38);
        CHECK(rule.reason() == TStop::SecondCondition);
    }
    SUBCASE("t=3, first condition then the third, padded to even") {
        TPhaseStop rule(3, 6, 0, 0, 2);
        CHECK_FALSE(rule.after_item(1, 0));
        CHECK_FALSE(rule.after_item(1, 1));
        CHECK_FALSE(rule.after_item(2, 1));
        CHECK(rule.decided());
        CHECK(rule.after_item(2, 2));
        CHECK(rule.reason() == TStop::FirstThenThird);
    }
}

TEST_CASE("T-phase") {
    SUBCASE("t=2 with X1 = 0 presents exactly M items") {
        const CLCBPEPhase e = run_e_phase("ccff", cfg(2, 12));
        const CLCBPTPhase t = run_t_phase_clcbp(e, "ccff", cfg(2, 12));
        CHECK(t.record.items.size() == 12);
        CHECK(t.reusable.empty());
    }
    SUBCASE("skipped when X_t <= M/(2t)") {
        const CLCBPEPhase e = run_e_phase("fresh-bin", cfg(2, 12));
        CHECK(run_t_phase_clcbp(e, "fresh-bin", cfg(2, 12)).skipped);
    }
    SUBCASE("colors: reusable first, two per color, then fresh") {
        const CLCBPConfig c = cfg(2, 24);
        const CLCBPEPhase e = run_e_phase("alternate-fit", c);
        const CLCBPTPhase t = run_t_phase_clcbp(e, "alternate-fit", c);
        REQUIRE_FALSE(t.skipped);
        CHECK(static_cast<long>(t.reusable.size()) == e.x[1]);
        std::map<ColorId, int> per_color;
        for (std::size_t i = 0; i < t.record.items.size(); ++i) {
            const ColorId col = *t.record.items[i].color;
            ++per_color[col];
            const std::size_t pair = i / 2;
            if (pair < t.reusable.size()) {
                CHECK(col == t.reusable[pair]);
            } else {
                CHECK(col == 24 + static_cast<long>(pair - t.reusable.size()));
            }
        }
        for (const auto& [col, n] : per_color) CHECK(n == 2);
        CHECK(t.z1 + t.z2 == static_cast<long>(t.record.items.size()));
    }
    SUBCASE("small T below 1/3 + eps2/10, large above 1/3 + eps2") {
        const CLCBPConfig c = cfg(3, 24);
        const CLCBPEPhase e = run_e_phase("alternate-fit", c);
        const CLCBPTPhase t = run_t_phase_clcbp(e, "alternate-fit", c);
        REQUIRE_FALSE(t.skipped);
        const ExactNumber third(Rational(1, 3));
        for (const auto& it : t.record.items) {
            if (it.label == "T-small") {
                CHECK(it.size < third + t.eps2 / Rational(10));
            } else {
                CHECK(it.size > third + t.eps2);
            }
        }
    }
}

TEST_CASE("post-phase conditions") {
    const CLCBPConfig c = cfg(3, 24);
    const CLCBPRun full = run_full_clcbp("ccff", c);
    REQUIRE(full.t_phase.stop == TStop::FirstThenThird);
    CHECK(post_phase_final_form(full.census, c.m));
    // The items presented after the first condition push Z1+Z2+6X3 past 2M.
    CHECK(full.census.z1 + full.census.z2 + 6 * full.census.xj(3) > 2 * c.m);
    CHECK_FALSE(post_phase_disjunction(full.census, c.m));

    const CLCBPRun alt = run_full_clcbp("alternate-fit", c);
    REQUIRE(alt.t_phase.stop == TStop::SecondCondition);
    CHECK(post_phase_disjunction(alt.census, c.m));
    CHECK(post_phase_final_form(alt.census, c.m));
}

TEST_CASE("closed-form bound") {
    const ClosedFormBound all_single = closed_form_bound(census_with(6, {0, 6, 0}), 2, 6);
    CHECK(all_single.linear == Rational(2));
    REQUIRE(all_single.small.has_value());
    CHECK(*all_single.small == Rational(7, 4));
    CHECK(all_single.best() == Rational(2));

    const ClosedFormBound sixth = closed_form_bound(census_with(6, {0, 3, 0, 1}), 3, 6);
    REQUIRE(sixth.small.has_value());
    CHECK(*sixth.small == Rational(11, 6));

    const ClosedFormBound full = closed_form_bound(census_with(6, {0, 0, 0, 2}), 3, 6);
    CHECK_FALSE(full.small.has_value());
    CHECK(full.linear == Rational(5, 3));
}

TEST_CASE("final items") {
    const CLCBPConfig c = cfg(2, 24);
    const CLCBPEPhase e = run_e_phase("alternate-fit", c);
    const CLCBPTPhase t = run_t_phase_clcbp(e, "alternate-fit", c);
    const auto halves = final_items(t, FinalKind::Halves, 100);
    const auto two = final_items(t, FinalKind::TwoThirds, 100);
    CHECK(static_cast<long>(halves.size()) == t.z1 + t.z2);
    CHECK(static_cast<long>(two.size()) == t.z2);
    const ExactNumber big = ExactNumber(Rational(2, 3)) - t.eps2 / Rational(5);
    for (const auto& it : two) {
        CHECK(it.size == big);
        // every bin with a T-item has a large one
        CHECK(it.size + ExactNumber(Rational(1, 3)) + t.eps2 > ExactNumber(1));
    }
    CLCBPTPhase none;
    none.skipped = true;
    CHECK_THROWS_AS(final_items(none, FinalKind::Halves, 0), VariantError);
}

TEST_CASE("golden run: t=3, M=6, color-aware First Fit") {
    CLCBPOptions o;
    o.oracle_check = true;
    const CLCBPRun run = run_full_clcbp("ccff", cfg(3, 6), o);
    require_clean(run);
    CHECK(run.census.xj(3) == 2);
    CHECK(run.census.x_total == 2);
    CHECK(run.census.z1 == 2);
    CHECK(run.census.z2 == 2);
    CHECK(run.t_phase.stop == TStop::FirstThenThird);
    CHECK(run.t_phase.record.items.size() == 4);
    REQUIRE(run.scenarios.size() == 3);
    const auto& huge = scenario(run, "huge");
    CHECK(huge.items_presented == 1);
    CHECK(huge.alg_cost == 3);
    CHECK(huge.opt_cost == 2);
    const auto& halves = scenario(run, "halves");
    CHECK(halves.items_presented == 4);
    CHECK(halves.alg_cost == 8);
    CHECK(halves.opt_cost == 4);
    CHECK_FALSE(halves.opt_is_upper_bound);
    const auto& two = scenario(run, "two-thirds");
    CHECK(two.items_presented == 2);
    CHECK(two.alg_cost == 6);
    CHECK(two.opt_cost == 4);
    CHECK_FALSE(two.opt_is_upper_bound);
    CHECK(run.max_ratio() == Rational(2));
    CHECK(run.bound.linear == Rational(5, 3));
    CHECK_FALSE(run.bound.small.has_value());
}

TEST_CASE("all baselines pass every cross-check") {
    std::vector<std::string> algorithms = baselines_for(VariantKind::ClassConstrained);
    algorithms.push_back("alternate-fit");
    algorithms.push_back("fresh-bin");
    for (int t : {2, 3}) {
        for (const auto& a : algorithms) {
            for (long m : {6L, 12L, 24L}) {
                CAPTURE(t);
                CAPTURE(a);
                CAPTURE(m);
                CLCBPOptions o;
                o.oracle_check = m == 6;
                const CLCBPRun run = run_full_clcbp(a, cfg(t, m), o);
                require_clean(run);
                const auto& huge = scenario(run, "huge");
                CHECK(static_cast<long>(huge.alg_cost) == run.census.x_total + (m - run.census.x_total) / t);
                CHECK(static_cast<long>(huge.opt_cost) == m / t);
                CHECK(run.scenarios.size() == (run.t_phase.skipped ? 1u : 3u));
            }
        }
    }
}

TEST_CASE("constructions follow the pairings") {
    const CLCBPConfig c = cfg(2, 24);
    const CLCBPRun run = run_full_clcbp("alternate-fit", c);
    require_clean(run);
    const auto& two = scenario(run, "two-thirds");
    const Rational bound = final_lemma_bound(FinalKind::TwoThirds, run.census, 2);
    CHECK(Rational(static_cast<long>(two.opt_cost)) <= bound);
    for (const auto& bin : two.opt_packing.bins()) CHECK(bin.colors.size() <= 2);
    const auto& halves = scenario(run, "halves");
    CHECK(static_cast<long>(halves.opt_cost) == run.census.z1 + run.census.z2);
}

TEST_CASE("determinism") {
    const CLCBPRun a = run_full_clcbp("alternate-fit", cfg(3, 18));
    const CLCBPRun b = run_full_clcbp("alternate-fit", cfg(3, 18));
    CHECK(a.e_phase.record.bins == b.e_phase.record.bins);
    CHECK(a.t_phase.record.bins == b.t_phase.record.bins);
    CHECK(a.e_phase.record.trace == b.e_phase.record.trace);
    REQUIRE(a.scenarios.size() == b.scenarios.size());
    for (std::size_t i = 0; i < a.scenarios.size(); ++i) {
        CHECK(a.scenarios[i].alg_cost == b.scenarios[i].alg_cost);
        CHECK(a.scenarios[i].opt_cost == b.scenarios[i].opt_cost);
    }
}
