#include "packbound/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace packbound {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) throw std::invalid_argument("empty integer in rational: '" + std::string(whole) + "'");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("bad integer in rational: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("bad integer in rational: '" + std::string(whole) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return BigInt(digits, 10);
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto trimmed = text;
    while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) trimmed.remove_suffix(1);
    if (trimmed.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = trimmed.find('/'); slash != std::string_view::npos) {
        return Rational(parse_integer(trimmed.substr(0, slash), text), parse_integer(trimmed.substr(slash + 1), text));
    }
    if (auto dot = trimmed.find('.'); dot != std::string_view::npos) {
        const bool negative = trimmed.front() == '-';
        std::string_view int_part = trimmed.substr(0, dot);
        std::string_view frac_part = trimmed.substr(dot + 1);
        if (int_part == "-" || int_part == "+" || int_part.empty()) int_part = "0";
        BigInt whole = parse_integer(int_part, text);
        if (whole < 0) whole = -whole;
        BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
        if (frac < 0) throw std::invalid_argument("bad decimal: '" + std::string(text) + "'");
        BigInt scale = big_pow(10, frac_part.size());
        Rational r(whole * scale + frac, scale);
        return negative ? -r : r;
    }
    return Rational(parse_integer(trimmed, text));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(q_.get_den(), q_.get_num());
}

BigInt Rational::floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

BigInt Rational::ceil() const {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

std::string Rational::to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

std::string Rational::to_decimal(int digits) const {
    if (digits < 1) digits = 1;
    if (is_zero()) return "0";
    const bool negative = sign() < 0;
    const Rational mag = abs();

    // Find d with 10^d <= mag < 10^(d+1).
    long d = static_cast<long>(mpz_sizeinbase(mag.numerator().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(mag.denominator().get_mpz_t(), 10));
    while (mag < rational_pow(Rational(10), d)) --d;
    while (mag >= rational_pow(Rational(10), d + 1)) ++d;

    // Scale so that the integer part carries exactly `digits` digits, then round half-even.
    Rational scaled = mag * rational_pow(Rational(10), digits - 1 - d);
    BigInt lower = scaled.floor();
    Rational frac = scaled - Rational(lower);
    const Rational half(1, 2);
    if (frac > half || (frac == half && mpz_odd_p(lower.get_mpz_t()))) lower += 1;
    if (lower == big_pow(10, static_cast<unsigned long>(digits))) {
        lower /= 10;
        ++d;
    }

    std::string mant = lower.get_str();
    while (mant.size() < static_cast<std::size_t>(digits)) mant.insert(mant.begin(), '0');
    std::string out;
    if (d >= -6 && d < digits) {
        if (d >= 0) {
            out = mant.substr(0, d + 1);
            std::string rest = mant.substr(d + 1);
            while (!rest.empty() && rest.back() == '0') rest.pop_back();
            if (!rest.empty()) out += "." + rest;
        } else {
            std::string rest = std::string(static_cast<std::size_t>(-d - 1), '0') + mant;
            while (!rest.empty() && rest.back() == '0') rest.pop_back();
            out = "0." + rest;
        }
    } else {
        std::string rest = mant.substr(1);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        out = mant.substr(0, 1) + (rest.empty() ? "" : "." + rest) + "e" + std::to_string(d);
    }
    return negative ? "-" + out : out;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

BigInt big_pow(unsigned long base, unsigned long exponent) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
    return out;
}

Rational rational_pow(const Rational& base, long exponent) {
    if (exponent == 0) return Rational(1);
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), e);
    return exponent > 0 ? Rational(num, den) : Rational(den, num);
}

std::size_t bit_length(const BigInt& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace packbound
