#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/harness.hpp"

using namespace packbound;

TEST_CASE("tolerance parsing") {
    CHECK(parse_tolerance("1e-9") == Rational(BigInt(1), BigInt("1000000000")));
    CHECK(parse_tolerance("1/1000") == Rational(1, 1000));
    CHECK(parse_tolerance("0.25") == Rational(1, 4));
    CHECK(parse_tolerance("2.5e-3") == Rational(1, 400));
    CHECK_THROWS_AS(parse_tolerance("0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tolerance("1e-9x"), std::invalid_argument);
}

TEST_CASE("exact values carry a display decimal") {
    const Json j = exact_json(Rational(87, 62));
    CHECK(j.at("exact") == "87/62");
    CHECK(j.at("display") == "1.40322580645");
    CHECK(exact_json(Rational(3)).at("exact") == "3/1");
}

TEST_CASE("program table") {
    const BoundsTable table = compute_bounds(Rational(BigInt(1), BigInt("1000000000")));
    REQUIRE(table.rows.size() == 7);
    CHECK(table.rows[0].program == "ko-case1");
    CHECK(table.rows[0].exact);
    CHECK(table.rows[0].value == Rational(87, 62));
    CHECK(table.rows[1].value == Rational(17, 12));
    REQUIRE(table.certificates.size() == 2);
    CHECK(table.certificates[0].statement == "62R - 10x30 >= 87");
    CHECK(table.certificates[1].statement == "12R - 2x30 >= 17");
    for (const auto& r : table.rows) {
        INFO(r.program);
        CHECK(r.ok);
        CHECK(r.error.empty());
    }
    CHECK(table.ok());
    const std::string text = bounds_text(table);
    CHECK(text.find("ko-case1       | 87/62            | 87/62") != std::string::npos);
    CHECK(text.find("verified") != std::string::npos);
    const Json j = bounds_json(table);
    CHECK(j.at("programs")[2].at("method") == "bisection");
    CHECK(j.at("programs")[2].contains("contains_printed"));
    CHECK_THROWS_AS(printed_bound("nope"), MathProgError);
}

TEST_CASE("known-OPT duel report") {
    DuelRequest r{"ko", "first-fit", 8, 2, true};
    const DuelOutcome out = run_duel(r);
    CHECK(out.passed);
    const Json& j = out.report;
    REQUIRE(j.at("scenarios").size() == 5);
    for (const auto& s : j.at("scenarios")) CHECK(s.at("opt_cost") == 8);
    CHECK(j.at("phases")[0].at("trace").size() == 8);
    CHECK(j.at("census").size() == 12);
    const std::string csv = duel_csv(out);
    CHECK(csv.rfind("variant,algorithm,m,scenario,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    CHECK(run_duel(r).report.dump() == j.dump());
}

TEST_CASE("square packing and class-constrained duel reports") {
    const DuelOutcome sp = run_duel({"sp", "shelf-first-fit", 20});
    CHECK(sp.passed);
    CHECK(sp.report.at("scenarios").size() == 3);

    DuelRequest c{"clcbp", "ccff", 6, 3};
    c.with_program = true;
    const DuelOutcome cl = run_duel(c);
    CHECK(cl.passed);
    const Json& j = cl.report;
    REQUIRE(j.at("scenarios").size() == 3);
    CHECK(j.at("scenarios")[0].at("name") == "huge");
    CHECK(j.at("closed_form_bound").at("linear").at("exact") == "5/3");
    CHECK(j.at("programs").at("programs").size() == 2);
    CHECK(j.at("programs").at("programs")[0].at("program") == "clcbp3-case1");
}

TEST_CASE("duel configuration errors") {
    CHECK_THROWS_AS(run_duel({"hex", "first-fit", 8}), VariantError);
    CHECK_THROWS_AS(run_duel({"ko", "first-fit", 6}), VariantError);
    CHECK_THROWS_AS(run_duel({"sp", "first-fit", 10}), ContenderError);
    CHECK_THROWS_AS(run_duel({"clcbp", "ccff", 6, 4}), VariantError);
}

TEST_CASE("oracle drive") {
    CHECK(oracle_patterns().size() == 7);
    const OracleDrive d = drive_oracle(10, 8, "best-fit");
    CHECK(d.values.size() == 8);
    CHECK(d.trace.size() == 8);
    for (const auto& c : d.checks) {
        INFO(c.name);
        CHECK(c.passed);
    }
    CHECK_THROWS_AS(drive_oracle(10, 8, "shelf-first-fit"), std::invalid_argument);
    const Json j = oracle_trace_json(10, 2, "all-small");
    CHECK(j.at("trace")[0] == "0 10^-32 small");
    CHECK(j.at("passed") == true);
}

TEST_CASE("verify suites") {
    CHECK_THROWS_AS(run_verify({{"nope"}}), std::invalid_argument);
    const VerifySummary s = run_verify({{"oracle", "certificates"}});
    REQUIRE(s.suites.size() == 2);
    CHECK(s.suites[0].name == "oracle");
    CHECK(s.suites[0].cells.size() == 28);
    CHECK(s.suites[1].cells.size() == 2);
    CHECK(s.passed());
    const Json j = verify_json(s);
    CHECK(j.at("passed") == true);
    CHECK(verify_csv(s).rfind("suite,cell,checks,failures\n", 0) == 0);
}
