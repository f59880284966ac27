#pragma once

#include "packbound/exact_number.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace packbound {

enum class ItemClass { Small, Large };

std::string class_name(ItemClass c);

class OracleError : public std::logic_error {
public:
    enum class Kind { SequenceExhausted, ObservationPending, NothingToObserve, InvalidConfig };
    OracleError(Kind kind, const std::string& what) : std::logic_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct OracleConfig {
    unsigned k = 10;
    long n = 1;
};

struct Emission {
    std::size_t index = 0;
    BigInt exponent;
    std::optional<ItemClass> cls;
};

/// Threshold between the classes of one oracle run. Values are k^-exponent.
struct Separator {
    unsigned k = 10;
    BigInt gamma_exponent;
    BigInt small_sup_exponent;  // exponent of the largest small value, or a window bound
    BigInt large_inf_exponent;  // exponent of the smallest large value, or a window bound
    bool has_small = false;
    bool has_large = false;

    ExactNumber gamma() const { return ExactNumber::inverse_power(k, gamma_exponent); }
    ExactNumber small_sup() const { return ExactNumber::inverse_power(k, small_sup_exponent); }
    ExactNumber large_inf() const { return ExactNumber::inverse_power(k, large_inf_exponent); }
    /// largeInf / smallSup = k^ratio_exponent.
    BigInt ratio_exponent() const { return small_sup_exponent - large_inf_exponent; }
};

/// Adaptive value generator: each value k^-e is fixed before the caller reports
/// whether the item it sized satisfied the steering condition.
///
/// The exponent window starts at [2^(N+2), 3 * 2^(N+2)]. A satisfied condition
/// ("small" item) moves all later values up by cutting the window to
/// [eLo, e-2]; otherwise the window becomes [e+2, eHi].
class AdaptiveOracle {
public:
    explicit AdaptiveOracle(OracleConfig config);

    const OracleConfig& config() const { return config_; }
    const BigInt& window_low() const { return e_lo_; }
    const BigInt& window_high() const { return e_hi_; }
    bool awaiting() const { return awaiting_; }
    bool stopped() const { return stopped_; }
    std::size_t emitted_count() const { return emitted_.size(); }
    const std::vector<Emission>& emissions() const { return emitted_; }

    /// True while another value may be requested.
    bool can_emit() const;

    ExactNumber next_value();
    /// Exponent of the value next_value() would return.
    BigInt peek_exponent() const;

    void observe(bool satisfied_condition);

    /// Evaluates a stopping predicate after an observation; once true, emission ends for good.
    bool stop_check(const std::function<bool()>& predicate);

    Separator separator() const;

    /// Trace rows "index exponent class" with values rendered as "k^-e".
    std::vector<std::string> trace() const;

private:
    OracleConfig config_;
    BigInt e_lo_;
    BigInt e_hi_;
    bool awaiting_ = false;
    bool stopped_ = false;
    std::vector<Emission> emitted_;
};

}  // namespace packbound
