#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/adaptive_oracle.hpp"
#include "packbound/contenders.hpp"

#include <functional>

using namespace packbound;

namespace {

using Pattern = std::function<bool(std::size_t index, const ExactNumber& value)>;

struct Drive {
    std::vector<ExactNumber> values;
    std::vector<bool> small;
    Separator separator;
};

Drive drive(AdaptiveOracle& oracle, const Pattern& pattern) {
    Drive d;
    while (oracle.can_emit()) {
        const auto v = oracle.next_value();
        const bool s = pattern(d.values.size(), v);
        oracle.observe(s);
        d.values.push_back(v);
        d.small.push_back(s);
    }
    d.separator = oracle.separator();
    return d;
}

// Every small value lies below gamma, every large one above, and the classes are k^2 apart.
void check_separation(const Drive& d, unsigned k) {
    const ExactNumber gamma = d.separator.gamma();
    const ExactNumber cap = ExactNumber::inverse_power(k, BigInt(4));
    CHECK(d.separator.ratio_exponent() >= 2);
    CHECK(d.separator.small_sup() < gamma);
    CHECK(gamma < d.separator.large_inf());
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        CHECK(d.values[i] < cap);
        CHECK(d.values[i] > ExactNumber(0));
        if (d.small[i]) {
            CHECK(d.values[i] < gamma);
            CHECK(d.values[i] <= d.separator.small_sup());
        } else {
            CHECK(d.values[i] > gamma);
            CHECK(d.values[i] >= d.separator.large_inf());
        }
        for (std::size_t j = 0; j < d.values.size(); ++j) {
            if (d.small[i] && !d.small[j]) CHECK(d.values[i] * Rational(static_cast<long>(k) * static_cast<long>(k)) <= d.values[j]);
        }
    }
}

}  // namespace

TEST_CASE("initial window and first value") {
    AdaptiveOracle o({10, 2});
    CHECK(o.window_low() == 16);
    CHECK(o.window_high() == 48);
    CHECK(o.can_emit());
    CHECK(o.next_value() == ExactNumber::inverse_power(10, BigInt(32)));
    CHECK(o.awaiting());
}

TEST_CASE("a satisfied condition moves the window up") {
    AdaptiveOracle o({10, 2});
    o.next_value();
    o.observe(true);
    CHECK(o.window_low() == 16);
    CHECK(o.window_high() == 30);
    CHECK(o.peek_exponent() == 23);
    CHECK(o.next_value() == ExactNumber::inverse_power(10, BigInt(23)));
}

TEST_CASE("an unsatisfied condition moves the window down") {
    AdaptiveOracle o({10, 2});
    o.next_value();
    o.observe(false);
    CHECK(o.window_low() == 34);
    CHECK(o.window_high() == 48);
    CHECK(o.peek_exponent() == 41);
}

TEST_CASE("protocol errors") {
    CHECK_THROWS_AS(AdaptiveOracle({1, 2}), OracleError);
    CHECK_THROWS_AS(AdaptiveOracle({10, 0}), OracleError);
    AdaptiveOracle o({10, 1});
    try {
        o.observe(true);
        FAIL("observe without value");
    } catch (const OracleError& e) {
        CHECK(e.kind() == OracleError::Kind::NothingToObserve);
    }
    o.next_value();
    try {
        o.next_value();
        FAIL("second value before observation");
    } catch (const OracleError& e) {
        CHECK(e.kind() == OracleError::Kind::ObservationPending);
    }
    CHECK_THROWS_AS(o.separator(), OracleError);
    CHECK_THROWS_AS(o.stop_check([] { return false; }), OracleError);
    o.observe(false);
    CHECK_FALSE(o.can_emit());
    try {
        o.next_value();
        FAIL("value beyond N");
    } catch (const OracleError& e) {
        CHECK(e.kind() == OracleError::Kind::SequenceExhausted);
    }
}

TEST_CASE("stop check ends emission for good") {
    AdaptiveOracle o({10, 8});
    int count = 0;
    while (o.can_emit()) {
        o.next_value();
        o.observe(count % 2 == 0);
        ++count;
        if (o.stop_check([&] { return count == 3; })) break;
    }
    CHECK(count == 3);
    CHECK(o.stopped());
    CHECK_FALSE(o.can_emit());
    CHECK(o.stop_check([] { return false; }));
    CHECK_THROWS_AS(o.next_value(), OracleError);
    CHECK(o.trace().size() == 3);
    CHECK(o.trace()[0] == "0 10^-2048 small");
}

TEST_CASE("separator of a mixed run") {
    AdaptiveOracle o({10, 2});
    o.next_value();
    o.observe(true);   // 10^-32
    o.next_value();
    o.observe(false);  // 10^-23
    const Separator s = o.separator();
    CHECK(s.has_small);
    CHECK(s.has_large);
    CHECK(s.small_sup_exponent == 32);
    CHECK(s.large_inf_exponent == 23);
    CHECK(s.gamma_exponent == 27);
    CHECK(s.ratio_exponent() == 9);
}

TEST_CASE("property: separation holds for fixed patterns") {
    const std::vector<std::pair<std::string, Pattern>> patterns{
        {"all-small", [](std::size_t, const ExactNumber&) { return true; }},
        {"all-large", [](std::size_t, const ExactNumber&) { return false; }},
        {"alternating", [](std::size_t i, const ExactNumber&) { return i % 2 == 0; }},
        {"thirds", [](std::size_t i, const ExactNumber&) { return i % 3 == 1; }},
    };
    for (unsigned k : {10u, 20u}) {
        for (long n : {8L, 16L}) {
            for (const auto& [name, pattern] : patterns) {
                INFO("k=" << k << " N=" << n << " " << name);
                AdaptiveOracle o({k, n});
                const Drive d = drive(o, pattern);
                CHECK(d.values.size() == static_cast<std::size_t>(n));
                check_separation(d, k);
            }
        }
    }
}

TEST_CASE("property: separation holds when a baseline steers the classes") {
    for (const auto& id : baselines_for(VariantKind::OneD)) {
        for (unsigned k : {10u, 20u}) {
            for (long n : {8L, 16L}) {
                INFO(id << " k=" << k << " N=" << n);
                AlgorithmSession session = init_session(VariantRules::one_d(), std::nullopt, id);
                AdaptiveOracle o({k, n});
                const Pattern pattern = [&](std::size_t i, const ExactNumber& v) {
                    const Rational base = i % 3 == 2 ? Rational(1, 2) : Rational(1, 4);
                    Item it{i, ExactNumber(base) + v, std::nullopt, ""};
                    const std::size_t bins = session.packing().cost();
                    return session.place(it).bin < bins;
                };
                const Drive d = drive(o, pattern);
                check_separation(d, k);
            }
        }
    }
}
