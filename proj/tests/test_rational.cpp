#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "packbound/exact_number.hpp"

#include <random>

using namespace packbound;

TEST_CASE("rational canonical form") {
    Rational r(BigInt(6), BigInt(-8));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 4);
    CHECK(r.to_string() == "-3/4");
    CHECK(Rational(3).to_string() == "3/1");
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing of decimals and fractions") {
    CHECK(Rational::parse("0.143") == Rational(143, 1000));
    CHECK(Rational::parse("0.33344") == Rational(33344, 100000));
    CHECK(Rational::parse("0.2501") == Rational(2501, 10000));
    CHECK(Rational::parse("0.52") == Rational(13, 25));
    CHECK(Rational::parse("0.6") == Rational(3, 5));
    CHECK(Rational::parse("-2.5") == Rational(-5, 2));
    CHECK(Rational::parse(" 12/-4 ") == Rational(-3));
    CHECK_THROWS(Rational::parse("1/x"));
    CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("rational floor ceil and decimals") {
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(87, 62).to_decimal() == "1.40322580645");
    CHECK(Rational(17, 12).to_decimal() == "1.41666666667");
    CHECK(Rational(1, 8).to_decimal(2) == "0.12");   // half-even: 0.125 -> 0.12
    CHECK(Rational(3, 8).to_decimal(2) == "0.38");   // half-even: 0.375 -> 0.38
    CHECK(Rational(1, 1000000000).to_decimal() == "1e-9");
    CHECK(Rational(0).to_decimal() == "0");
}

TEST_CASE("canonical form property over random arithmetic") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        long b = d(rng);
        long q = d(rng);
        if (b == 0) b = 1;
        if (q == 0) q = 7;
        Rational x(d(rng), b);
        Rational y(d(rng), q);
        for (const Rational& r : {x + y, x - y, x * y}) {
            REQUIRE(r.denominator() > 0);
            BigInt g;
            mpz_gcd(g.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
            REQUIRE(g == 1);
        }
    }
}

namespace {

/// Materialises coeff * base^-e for small e, the independent reference.
Rational expand(const Rational& coeff, unsigned base, long e) { return coeff * rational_pow(Rational(static_cast<long>(base)), -e); }

}  // namespace

TEST_CASE("exact numbers agree with materialised fractions") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> expo(1, 400);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int trial = 0; trial < 300; ++trial) {
        ExactNumber sym = Rational(coef(rng), 7);
        Rational ref = sym.rational_part();
        const int terms = 1 + trial % 4;
        for (int t = 0; t < terms; ++t) {
            const unsigned base = (t % 2 == 0) ? 10u : 20u;
            const long e = expo(rng);
            Rational c(coef(rng), 3);
            sym += c * ExactNumber::inverse_power(base, BigInt(e));
            ref += expand(c, base, e);
        }
        REQUIRE(sym.sign() == ref.sign());
        REQUIRE((sym - ExactNumber(ref)).sign() == 0);
    }
}

TEST_CASE("exact number sign with astronomically small terms") {
    const BigInt huge("1000000000000000000000000");
    const ExactNumber tiny = ExactNumber::inverse_power(10, huge);
    CHECK(tiny.sign() == 1);
    CHECK((-tiny).sign() == -1);
    CHECK(ExactNumber(Rational(1, 7)) + tiny > ExactNumber(Rational(1, 7)));
    CHECK(ExactNumber(Rational(1, 7)) + tiny < ExactNumber(Rational(143, 1000)));
    const ExactNumber a = ExactNumber::inverse_power(10, huge);
    const ExactNumber b = ExactNumber::inverse_power(10, huge + 2);
    CHECK(a > b);
    CHECK((a - a).is_zero());
    CHECK(a - b * Rational(100) == ExactNumber(0));
    // 6/7 - g + 1/7 + a against 1 decides on the exponents of g and a alone.
    const ExactNumber g = ExactNumber::inverse_power(10, huge + 5);
    CHECK(ExactNumber(Rational(6, 7)) - g + ExactNumber(Rational(1, 7)) + a > ExactNumber(1));
    CHECK(ExactNumber(Rational(6, 7)) - a + ExactNumber(Rational(1, 7)) + g < ExactNumber(1));
    // Mixed bases far apart in magnitude.
    const ExactNumber e20 = ExactNumber::inverse_power(20, huge * 4);
    CHECK(a > e20 * Rational(1000000));
}

TEST_CASE("exact number text round trip and floor") {
    const ExactNumber x = ExactNumber::parse("1/7+1*10^-320");
    CHECK(x.to_string() == "1/7+1*10^-320");
    CHECK(ExactNumber::parse(x.to_string()) == x);
    const ExactNumber y = ExactNumber::parse("6/7-1/2*20^-4096");
    CHECK(y.to_string() == "6/7-1/2*20^-4096");
    CHECK(ExactNumber::parse("3/5").to_string() == "3/5");
    CHECK(ExactNumber::parse("0.6") == ExactNumber(Rational(3, 5)));
    CHECK(ExactNumber::parse("1*10^-3") == ExactNumber(Rational(1, 1000)));
    CHECK(x.floor() == 0);
    CHECK(ExactNumber::parse("2-1*10^-500").floor() == 1);
    CHECK(ExactNumber::parse("2-1*10^-500").ceil() == 2);
    CHECK(ExactNumber::parse("2+1*10^-500").floor() == 2);
    CHECK(ExactNumber(Rational(4)).ceil() == 4);
    CHECK(x.to_decimal() == "0.142857142857");
    CHECK_THROWS(ExactNumber::parse("1*10^"));
}

TEST_CASE("unresolvable comparisons are reported, not guessed") {
    const BigInt e("100000000000");
    const ExactNumber a = ExactNumber::inverse_power(10, e);
    const ExactNumber b = ExactNumber::inverse_power(20, BigInt("76862178684"));  // 20^-b within a few bits of 10^-e
    CHECK_THROWS_AS((void)(a - b).sign(), std::domain_error);
}
