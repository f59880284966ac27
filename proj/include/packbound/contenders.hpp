#pragma once

#include "packbound/model.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace packbound {

class ContenderError : public std::runtime_error {
public:
    enum class Kind { AdviceMismatch, IllegalPlacement, UnknownAlgorithm, UnsupportedVariant };
    ContenderError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// A deterministic online packing rule. It sees the arriving item and its own
/// packing so far, nothing else.
class OnlineAlgorithm {
public:
    virtual ~OnlineAlgorithm() = default;
    virtual std::string id() const = 0;
    virtual Placement choose(const Item& item, const Packing& own) = 0;
};

class AlgorithmSession {
public:
    AlgorithmSession(VariantRules rules, std::optional<long> advice, std::unique_ptr<OnlineAlgorithm> algorithm);

    const VariantRules& rules() const { return packing_.rules(); }
    std::optional<long> advice() const { return advice_; }
    const std::string& algorithm_id() const { return algorithm_id_; }
    const Packing& packing() const { return packing_; }
    const std::vector<PlacedItem>& transcript() const { return transcript_; }

    /// Asks the algorithm for a placement and commits it. A rule violation is
    /// reported as ContenderError::IllegalPlacement.
    Placement place(const Item& item);

private:
    std::optional<long> advice_;
    std::unique_ptr<OnlineAlgorithm> algorithm_;
    std::string algorithm_id_;
    Packing packing_;
    std::vector<PlacedItem> transcript_;
};

/// Known ids: next-fit, first-fit, best-fit, harmonic-<j> (j >= 3), ccff,
/// shelf-first-fit, shelf-next-fit, fresh-bin, alternate-fit.
std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& id);
bool algorithm_supports(const std::string& id, const VariantRules& rules);

/// Registry ids usable on the given variant.
std::vector<std::string> baselines_for(VariantKind kind);
std::vector<std::string> registry_ids();

AlgorithmSession init_session(const VariantRules& rules, std::optional<long> advice, const std::string& algorithm_id);

/// Fresh session fed the given prefix.
AlgorithmSession fork_replay(const VariantRules& rules, std::optional<long> advice, const std::vector<Item>& prefix,
                             const std::string& algorithm_id);

}  // namespace packbound
