#include "packbound/adaptive_oracle.hpp"

namespace packbound {

std::string class_name(ItemClass c) { return c == ItemClass::Small ? "small" : "large"; }

namespace {

BigInt midpoint(const BigInt& lo, const BigInt& hi) {
    BigInt sum = lo + hi;
    BigInt out;
    mpz_fdiv_q_2exp(out.get_mpz_t(), sum.get_mpz_t(), 1);
    return out;
}

}  // namespace

AdaptiveOracle::AdaptiveOracle(OracleConfig config) : config_(config) {
    if (config_.k < 2) throw OracleError(OracleError::Kind::InvalidConfig, "oracle base k must be at least 2");
    if (config_.n < 1) throw OracleError(OracleError::Kind::InvalidConfig, "oracle length N must be at least 1");
    BigInt base;
    mpz_ui_pow_ui(base.get_mpz_t(), 2, static_cast<unsigned long>(config_.n + 2));
    e_lo_ = base;
    e_hi_ = base * 3;
}

bool AdaptiveOracle::can_emit() const {
    return !stopped_ && !awaiting_ && emitted_.size() < static_cast<std::size_t>(config_.n);
}

BigInt AdaptiveOracle::peek_exponent() const { return midpoint(e_lo_, e_hi_); }

ExactNumber AdaptiveOracle::next_value() {
    if (awaiting_) throw OracleError(OracleError::Kind::ObservationPending, "previous value not yet observed");
    if (stopped_ || emitted_.size() >= static_cast<std::size_t>(config_.n)) {
        throw OracleError(OracleError::Kind::SequenceExhausted,
                          "all " + std::to_string(emitted_.size()) + " values already emitted");
    }
    Emission e;
    e.index = emitted_.size();
    e.exponent = peek_exponent();
    emitted_.push_back(e);
    awaiting_ = true;
    return ExactNumber::inverse_power(config_.k, e.exponent);
}

void AdaptiveOracle::observe(bool satisfied_condition) {
    if (!awaiting_) throw OracleError(OracleError::Kind::NothingToObserve, "no emitted value awaits observation");
    Emission& last = emitted_.back();
    if (satisfied_condition) {
        last.cls = ItemClass::Small;
        e_hi_ = last.exponent - 2;
    } else {
        last.cls = ItemClass::Large;
        e_lo_ = last.exponent + 2;
    }
    awaiting_ = false;
    if (e_lo_ > e_hi_) throw std::logic_error("oracle window emptied");
}

bool AdaptiveOracle::stop_check(const std::function<bool()>& predicate) {
    if (awaiting_) throw OracleError(OracleError::Kind::ObservationPending, "stop check before observation");
    if (!stopped_ && predicate()) stopped_ = true;
    return stopped_;
}

Separator AdaptiveOracle::separator() const {
    if (awaiting_) throw OracleError(OracleError::Kind::ObservationPending, "separator requested mid-observation");
    Separator s;
    s.k = config_.k;
    s.gamma_exponent = peek_exponent();
    for (const auto& e : emitted_) {
        if (e.cls == ItemClass::Small) {
            if (!s.has_small || e.exponent < s.small_sup_exponent) s.small_sup_exponent = e.exponent;
            s.has_small = true;
        } else if (e.cls == ItemClass::Large) {
            if (!s.has_large || e.exponent > s.large_inf_exponent) s.large_inf_exponent = e.exponent;
            s.has_large = true;
        }
    }
    if (!s.has_small) s.small_sup_exponent = e_hi_ + 2;
    if (!s.has_large) s.large_inf_exponent = e_lo_ - 2;
    return s;
}

std::vector<std::string> AdaptiveOracle::trace() const {
    std::vector<std::string> out;
    for (const auto& e : emitted_) {
        out.push_back(std::to_string(e.index) + " " + std::to_string(config_.k) + "^-" + e.exponent.get_str() + " " +
                      (e.cls ? class_name(*e.cls) : "pending"));
    }
    return out;
}

}  // namespace packbound
