#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/opt_oracle.hpp"
#include "packbound/variant_ko.hpp"

using namespace packbound;

namespace {

void require_clean(const KORun& run) {
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

}  // namespace

TEST_CASE("configuration is rejected unless M is a positive multiple of four") {
    CHECK_THROWS_AS(run_s_phase("first-fit", 6), VariantError);
    CHECK_THROWS_AS(run_full_ko("first-fit", 0), VariantError);
    CHECK_THROWS_AS(run_full_ko("shelf-first-fit", 4), ContenderError);
    CHECK_THROWS_AS(ko_scenario_items(6, 8, 1, 1, ExactNumber(0), ExactNumber(0), 0), VariantError);
}

TEST_CASE("S-phase sizes and classes") {
    const KOSPhase nf = run_s_phase("next-fit", 4);
    CHECK(nf.y7 == 1);
    const KOSPhase fresh = run_s_phase("fresh-bin", 8);
    CHECK(fresh.y7 == 8);
    for (const auto& it : fresh.record.items) {
        CHECK(it.label == "S-large");
        CHECK(it.size > ExactNumber(Rational(1, 7)) + fresh.gamma1);
        CHECK(it.size < ExactNumber(Rational(143, 1000)));
    }
}

TEST_CASE("First Fit at M=4 matches the hand simulation") {
    // Bin 0: four S-items and a small T. Bin 1: two T (large then small). Bin 2: one large T.
    const KORun run = run_full_ko("first-fit", 4);
    const KOCensus& c = run.t_phase.census;
    CHECK(run.s_phase.y7 == 1);
    CHECK(run.t_phase.y3 == 2);
    CHECK(c.x41 == 1);
    CHECK(c.x02 == 1);
    CHECK(c.x01 == 1);
    CHECK(c.x60 + c.x30 + c.x20 + c.x10 + c.x11 + c.x12 + c.x22 == 0);
    std::vector<std::size_t> costs;
    for (const auto& s : run.scenarios) costs.push_back(s.alg_cost);
    CHECK(costs == std::vector<std::size_t>{5, 4, 5, 6, 6});
    CHECK(run.max_ratio() == Rational(3, 2));
    require_clean(run);
}

TEST_CASE("scenario item counts") {
    const ExactNumber g(Rational(1, 100000));
    CHECK(ko_scenario_items(3, 8, 1, 1, g, g, 0).size() == 4);
    CHECK(ko_scenario_items(2, 8, 8, 1, g, g, 0).size() == 6);
    CHECK(ko_scenario_items(5, 8, 1, 6, g, g, 0).size() == 5);
    CHECK(ko_scenario_items(5, 8, 1, 4, g, g, 0).size() == 6);
    const auto s2 = ko_scenario_items(2, 8, 8, 1, g, g, 16);
    CHECK(s2.front().id == 16);
    CHECK(s2.front().size == ExactNumber(Rational(6, 7)) - g);
}

TEST_CASE("every baseline passes all cross-checks with the exact optimum confirmed") {
    for (long m : {4L, 8L}) {
        for (const auto& alg : baselines_for(VariantKind::KnownOpt)) {
            KOOptions opt;
            opt.oracle_check = true;
            const KORun run = run_full_ko(alg, m, opt);
            INFO(alg << " M=" << m);
            CHECK(run.passed());
            require_clean(run);
            for (const auto& s : run.scenarios) {
                CHECK(s.opt_packing.cost() == static_cast<std::size_t>(m));
                CHECK(min_bins({VariantRules::one_d(), [&] {
                                     std::vector<Item> all;
                                     for (const auto& b : s.opt_packing.bins())
                                         for (const auto& p : b.items) all.push_back(p.item);
                                     return all;
                                 }(), 0})
                          .count == static_cast<std::size_t>(m));
            }
        }
    }
}

TEST_CASE("fresh-bin drives both large cases") {
    const KORun run = run_full_ko("fresh-bin", 8);
    CHECK(run.s_phase.y7 == 8);
    CHECK(run.t_phase.y3 == 8);
    CHECK(run.t_phase.census.x10 == 8);
    CHECK(run.t_phase.census.x01 == 8);
    require_clean(run);
    // Y3 > M/2 uses M - ceil(Y3/2) two-thirds items
    CHECK(run.scenarios[4].items_presented == 4);
}

TEST_CASE("First Fit ratio trend") {
    const Rational r8 = run_full_ko("first-fit", 8).max_ratio();
    const Rational r48 = run_full_ko("first-fit", 48).max_ratio();
    CHECK(r8 == Rational(13, 8));
    CHECK(r48 == Rational(5, 3));
    CHECK(r48 > r8);
    CHECK(r48 > Rational::parse("1.30"));
}

TEST_CASE("regression thresholds per baseline at M=48") {
    CHECK(run_full_ko("next-fit", 48).max_ratio() == Rational(5, 3));
    CHECK(run_full_ko("best-fit", 48).max_ratio() == Rational(5, 3));
    CHECK(run_full_ko("harmonic-5", 48).max_ratio() == Rational(5, 3));
}

TEST_CASE("runs are deterministic") {
    const KORun a = run_full_ko("best-fit", 16);
    const KORun b = run_full_ko("best-fit", 16);
    CHECK(a.s_phase.record.bins == b.s_phase.record.bins);
    CHECK(a.t_phase.record.bins == b.t_phase.record.bins);
    CHECK(a.t_phase.record.trace == b.t_phase.record.trace);
    for (std::size_t i = 0; i < a.scenarios.size(); ++i) CHECK(a.scenarios[i].alg_cost == b.scenarios[i].alg_cost);
}
