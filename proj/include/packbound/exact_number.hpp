#pragma once

#include "packbound/rational.hpp"

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace packbound {

/// coeff * base^(-exponent)
struct TinyTerm {
    Rational coeff;
    unsigned base = 10;
    BigInt exponent;
};

/// Exact real number of the form  r + sum_i c_i * b_i^(-e_i)  with rational r, c_i
/// and arbitrary-precision integer exponents e_i.
///
/// The adversarial perturbations are powers k^(-e) whose exponents grow like
/// 2^N, far beyond what a materialised fraction can hold. Keeping such powers
/// symbolic preserves exact arithmetic: addition and rational scaling are
/// closed, and the sign of any value is decided exactly (see sign()).
///
/// Terms are kept sorted by (base, exponent). Same-base terms closer than
/// kMergeGap are merged, and terms with |exponent| <= kFoldLimit are folded
/// into the rational part, so small values are plain rationals.
class ExactNumber {
public:
    static constexpr long kFoldLimit = 64;
    static constexpr long kMergeGap = 64;
    /// Largest exponent gap the sign test will expand exactly when two terms are
    /// too close in magnitude to be ordered by size alone.
    static constexpr long kResolveLimit = 1L << 20;

    ExactNumber() = default;
    ExactNumber(const Rational& r) : rational_(r) {}  // NOLINT(google-explicit-constructor)
    ExactNumber(int v) : rational_(v) {}              // NOLINT(google-explicit-constructor)
    ExactNumber(long v) : rational_(v) {}             // NOLINT(google-explicit-constructor)

    /// base^(-exponent)
    static ExactNumber inverse_power(unsigned base, const BigInt& exponent);

    /// Parses the format produced by to_string(): "1/7+1*10^-32", "6/7-1/2*20^-4096", "3/5".
    static ExactNumber parse(std::string_view text);

    const Rational& rational_part() const { return rational_; }
    const std::vector<TinyTerm>& terms() const { return terms_; }
    bool is_rational() const { return terms_.empty(); }
    /// Throws std::domain_error if symbolic terms remain.
    const Rational& as_rational() const;

    /// Exact sign in {-1, 0, 1}.
    int sign() const;
    bool is_zero() const { return sign() == 0; }

    BigInt floor() const;
    BigInt ceil() const;

    std::string to_string() const;
    /// Display only: symbolic terms below the shown precision are dropped.
    std::string to_decimal(int digits = 12) const;

    ExactNumber& operator+=(const ExactNumber& o);
    ExactNumber& operator-=(const ExactNumber& o);
    ExactNumber& operator*=(const Rational& r);
    ExactNumber& operator/=(const Rational& r);

    friend ExactNumber operator+(ExactNumber a, const ExactNumber& b) { return a += b; }
    friend ExactNumber operator-(ExactNumber a, const ExactNumber& b) { return a -= b; }
    friend ExactNumber operator*(ExactNumber a, const Rational& r) { return a *= r; }
    friend ExactNumber operator*(const Rational& r, ExactNumber a) { return a *= r; }
    friend ExactNumber operator/(ExactNumber a, const Rational& r) { return a /= r; }
    ExactNumber operator-() const;

    /// Product of two values; symbolic cross terms must share a base.
    friend ExactNumber multiply(const ExactNumber& a, const ExactNumber& b);

    friend bool operator==(const ExactNumber& a, const ExactNumber& b) { return (a - b).sign() == 0; }
    friend std::strong_ordering operator<=>(const ExactNumber& a, const ExactNumber& b) {
        const int s = (a - b).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    void normalize();

    Rational rational_;
    std::vector<TinyTerm> terms_;
};

std::ostream& operator<<(std::ostream& os, const ExactNumber& x);

ExactNumber min(const ExactNumber& a, const ExactNumber& b);
ExactNumber max(const ExactNumber& a, const ExactNumber& b);

}  // namespace packbound
