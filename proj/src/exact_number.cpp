#include "packbound/exact_number.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

namespace packbound {

namespace {

bool fits_long(const BigInt& v, long limit) { return v <= limit && v >= -limit; }

/// base^(-exponent) for an exponent that fits comfortably in a long.
Rational small_inverse_power(unsigned base, long exponent) { return rational_pow(Rational(static_cast<long>(base)), -exponent); }

/// MPFR value with value semantics.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

struct Piece {
    Rational coeff;
    unsigned base = 1;
    BigInt exponent;
    bool rational = true;
    Real lo;  // lower bound on log2|value|
    Real hi;  // upper bound on log2|value|
};

void bound_magnitude(Piece& p) {
    // log2|coeff| lies strictly inside (nb - db - 1, nb - db + 1).
    const long nb = static_cast<long>(bit_length(p.coeff.numerator()));
    const long db = static_cast<long>(bit_length(p.coeff.denominator()));
    const mpfr_prec_t prec = 64 + (p.rational ? 0 : static_cast<mpfr_prec_t>(bit_length(p.exponent)));
    p.lo = Real(prec);
    p.hi = Real(prec);
    mpfr_set_si(p.lo.get(), nb - db - 1, MPFR_RNDD);
    mpfr_set_si(p.hi.get(), nb - db + 1, MPFR_RNDU);
    if (p.rational) return;
    // log2|base^-e| = -e * log2(base), enclosed with directed rounding.
    Real base_lo(prec);
    Real base_hi(prec);
    mpfr_set_ui(base_lo.get(), p.base, MPFR_RNDD);
    mpfr_set_ui(base_hi.get(), p.base, MPFR_RNDU);
    mpfr_log2(base_lo.get(), base_lo.get(), MPFR_RNDD);
    mpfr_log2(base_hi.get(), base_hi.get(), MPFR_RNDU);
    const BigInt neg = -p.exponent;
    Real x_lo(prec);
    Real x_hi(prec);
    if (sgn(neg) <= 0) {
        mpfr_mul_z(x_lo.get(), base_hi.get(), neg.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(x_hi.get(), base_lo.get(), neg.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(x_lo.get(), base_lo.get(), neg.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(x_hi.get(), base_hi.get(), neg.get_mpz_t(), MPFR_RNDU);
    }
    mpfr_add(p.lo.get(), p.lo.get(), x_lo.get(), MPFR_RNDD);
    mpfr_add(p.hi.get(), p.hi.get(), x_hi.get(), MPFR_RNDU);
}

/// a.lo - slack > b.hi
bool dominates(const Piece& a, const Piece& b, unsigned long slack) {
    Real gap(std::max(mpfr_get_prec(a.lo.get()), mpfr_get_prec(b.hi.get())) + 64);
    mpfr_sub(gap.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub_ui(gap.get(), gap.get(), slack, MPFR_RNDD);
    return mpfr_sgn(gap.get()) > 0;
}

Rational expand(const Piece& p) {
    if (p.rational) return p.coeff;
    if (!fits_long(p.exponent, ExactNumber::kResolveLimit)) {
        throw std::domain_error("exact comparison needs expansion of " + std::to_string(p.base) + "^-" +
                                p.exponent.get_str() + ", beyond the resolve limit");
    }
    return p.coeff * small_inverse_power(p.base, p.exponent.get_si());
}

Piece merge(const Piece& a, const Piece& b) {
    Piece out;
    if (!a.rational && !b.rational && a.base == b.base) {
        const Piece& low = a.exponent <= b.exponent ? a : b;
        const Piece& high = a.exponent <= b.exponent ? b : a;
        BigInt gap = high.exponent - low.exponent;
        if (!fits_long(gap, ExactNumber::kResolveLimit)) {
            throw std::domain_error("exact comparison needs an exponent gap of " + gap.get_str() +
                                    ", beyond the resolve limit");
        }
        out.rational = false;
        out.base = low.base;
        out.exponent = low.exponent;
        out.coeff = low.coeff + high.coeff * small_inverse_power(low.base, gap.get_si());
    } else {
        out.rational = true;
        out.coeff = expand(a) + expand(b);
    }
    bound_magnitude(out);
    return out;
}

std::string coefficient_text(const Rational& c) {
    return c.is_integer() ? c.numerator().get_str() : c.to_string();
}

}  // namespace

ExactNumber ExactNumber::inverse_power(unsigned base, const BigInt& exponent) {
    if (base < 2) throw std::invalid_argument("inverse_power needs base >= 2");
    ExactNumber out;
    out.terms_.push_back(TinyTerm{Rational(1), base, exponent});
    out.normalize();
    return out;
}

const Rational& ExactNumber::as_rational() const {
    if (!terms_.empty()) throw std::domain_error("value " + to_string() + " is not a plain rational");
    return rational_;
}

void ExactNumber::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const TinyTerm& a, const TinyTerm& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.exponent < b.exponent;
    });
    std::vector<TinyTerm> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (t.coeff.is_zero()) continue;
        if (!merged.empty() && merged.back().base == t.base && t.exponent - merged.back().exponent <= kMergeGap) {
            const long gap = BigInt(t.exponent - merged.back().exponent).get_si();
            merged.back().coeff += t.coeff * small_inverse_power(t.base, gap);
            continue;
        }
        merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged) {
        if (t.coeff.is_zero()) continue;
        if (fits_long(t.exponent, kFoldLimit)) {
            rational_ += t.coeff * small_inverse_power(t.base, t.exponent.get_si());
            continue;
        }
        terms_.push_back(std::move(t));
    }
}

int ExactNumber::sign() const {
    if (terms_.empty()) return rational_.sign();

    std::vector<Piece> pieces;
    pieces.reserve(terms_.size() + 1);
    if (!rational_.is_zero()) {
        Piece p;
        p.coeff = rational_;
        bound_magnitude(p);
        pieces.push_back(std::move(p));
    }
    for (const auto& t : terms_) {
        Piece p;
        p.coeff = t.coeff;
        p.base = t.base;
        p.exponent = t.exponent;
        p.rational = false;
        bound_magnitude(p);
        pieces.push_back(std::move(p));
    }

    // The largest piece decides the sign once it provably outweighs all others
    // combined; otherwise it is merged exactly with its nearest rival.
    while (true) {
        std::erase_if(pieces, [](const Piece& p) { return p.coeff.is_zero(); });
        if (pieces.empty()) return 0;
        if (pieces.size() == 1) return pieces.front().coeff.sign();
        std::stable_sort(pieces.begin(), pieces.end(),
                         [](const Piece& a, const Piece& b) { return mpfr_greater_p(a.hi.get(), b.hi.get()) != 0; });
        const auto rest = static_cast<unsigned long>(pieces.size() - 1);
        if (dominates(pieces[0], pieces[1], std::bit_width(rest))) return pieces[0].coeff.sign();
        Piece combined = merge(pieces[0], pieces[1]);
        pieces.erase(pieces.begin(), pieces.begin() + 2);
        pieces.push_back(std::move(combined));
    }
}

BigInt ExactNumber::floor() const {
    BigInt f = rational_.floor();
    for (int guard = 0; guard < 1'000'000; ++guard) {
        if (*this < ExactNumber(Rational(f))) {
            f -= 1;
        } else if (*this >= ExactNumber(Rational(BigInt(f + 1)))) {
            f += 1;
        } else {
            return f;
        }
    }
    throw std::domain_error("floor of " + to_string() + " did not settle");
}

BigInt ExactNumber::ceil() const {
    BigInt f = floor();
    if (*this == ExactNumber(Rational(f))) return f;
    return f + 1;
}

std::string ExactNumber::to_string() const {
    std::string out;
    if (!rational_.is_zero() || terms_.empty()) out = rational_.to_string();
    for (const auto& t : terms_) {
        const bool negative = t.coeff.sign() < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? "-" : "+";
        }
        out += coefficient_text(t.coeff.abs());
        out += "*" + std::to_string(t.base) + "^";
        if (t.exponent > 0) {
            out += "-" + t.exponent.get_str();
        } else {
            out += BigInt(-t.exponent).get_str();
        }
    }
    return out;
}

std::string ExactNumber::to_decimal(int digits) const {
    if (terms_.empty()) return rational_.to_decimal(digits);
    for (const auto& t : terms_) {
        if (t.exponent < 0) return to_string();
    }
    if (!rational_.is_zero()) return rational_.to_decimal(digits);
    const auto& lead = terms_.front();
    return lead.coeff.to_decimal(digits) + "*" + std::to_string(lead.base) + "^-" + lead.exponent.get_str();
}

ExactNumber ExactNumber::parse(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    if (s.empty()) throw std::invalid_argument("empty exact number");

    std::vector<std::string> parts;
    std::size_t begin = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^' && s[i - 1] != '/' && s[i - 1] != '*') {
            parts.push_back(s.substr(begin, i - begin));
            begin = i;
        }
    }
    parts.push_back(s.substr(begin));

    ExactNumber out;
    for (const auto& part : parts) {
        const auto star = part.find('*');
        if (star == std::string::npos) {
            out.rational_ += Rational::parse(part);
            continue;
        }
        const Rational coeff = Rational::parse(part.substr(0, star));
        const std::string power = part.substr(star + 1);
        const auto caret = power.find('^');
        if (caret == std::string::npos) throw std::invalid_argument("bad symbolic term '" + part + "'");
        const long base = std::stol(power.substr(0, caret));
        if (base < 2) throw std::invalid_argument("bad base in '" + part + "'");
        std::string exp_text = power.substr(caret + 1);
        if (exp_text.empty()) throw std::invalid_argument("bad exponent in '" + part + "'");
        BigInt p;
        if (p.set_str(exp_text[0] == '+' ? exp_text.substr(1) : exp_text, 10) != 0) {
            throw std::invalid_argument("bad exponent in '" + part + "'");
        }
        out.terms_.push_back(TinyTerm{coeff, static_cast<unsigned>(base), BigInt(-p)});
    }
    out.normalize();
    return out;
}

ExactNumber& ExactNumber::operator+=(const ExactNumber& o) {
    rational_ += o.rational_;
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

ExactNumber& ExactNumber::operator-=(const ExactNumber& o) { return *this += -o; }

ExactNumber& ExactNumber::operator*=(const Rational& r) {
    rational_ *= r;
    for (auto& t : terms_) t.coeff *= r;
    normalize();
    return *this;
}

ExactNumber& ExactNumber::operator/=(const Rational& r) { return *this *= r.reciprocal(); }

ExactNumber ExactNumber::operator-() const {
    ExactNumber out = *this;
    out.rational_ = -out.rational_;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

ExactNumber multiply(const ExactNumber& a, const ExactNumber& b) {
    ExactNumber out;
    out.rational_ = a.rational_ * b.rational_;
    for (const auto& t : a.terms_) out.terms_.push_back(TinyTerm{t.coeff * b.rational_, t.base, t.exponent});
    for (const auto& t : b.terms_) out.terms_.push_back(TinyTerm{t.coeff * a.rational_, t.base, t.exponent});
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            if (ta.base != tb.base) throw std::domain_error("product of symbolic terms with different bases");
            out.terms_.push_back(TinyTerm{ta.coeff * tb.coeff, ta.base, ta.exponent + tb.exponent});
        }
    }
    out.normalize();
    return out;
}

std::ostream& operator<<(std::ostream& os, const ExactNumber& x) { return os << x.to_string(); }

ExactNumber min(const ExactNumber& a, const ExactNumber& b) { return b < a ? b : a; }
ExactNumber max(const ExactNumber& a, const ExactNumber& b) { return a < b ? b : a; }

}  // namespace packbound
