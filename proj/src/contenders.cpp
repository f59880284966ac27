#include "packbound/contenders.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace packbound {

namespace {

const ExactNumber kOne(1);

class NextFit : public OnlineAlgorithm {
public:
    std::string id() const override { return "next-fit"; }
    Placement choose(const Item& item, const Packing& own) override {
        const std::size_t n = own.cost();
        if (n > 0 && own.fits(n - 1, item)) return {n - 1, std::nullopt};
        return {n, std::nullopt};
    }
};

class FirstFit : public OnlineAlgorithm {
public:
    explicit FirstFit(std::string name) : name_(std::move(name)) {}
    std::string id() const override { return name_; }
    Placement choose(const Item& item, const Packing& own) override {
        for (std::size_t b = 0; b < own.cost(); ++b) {
            if (own.fits(b, item)) return {b, std::nullopt};
        }
        return {own.cost(), std::nullopt};
    }

private:
    std::string name_;
};

/// First Fit on even arrivals, a fresh bin on odd ones.
class AlternateFit : public OnlineAlgorithm {
public:
    std::string id() const override { return "alternate-fit"; }
    Placement choose(const Item& item, const Packing& own) override {
        if (own.item_count() % 2 == 0) {
            for (std::size_t b = 0; b < own.cost(); ++b) {
                if (own.fits(b, item)) return {b, std::nullopt};
            }
        }
        return {own.cost(), std::nullopt};
    }
};

class BestFit : public OnlineAlgorithm {
public:
    std::string id() const override { return "best-fit"; }
    Placement choose(const Item& item, const Packing& own) override {
        std::optional<std::size_t> best;
        for (std::size_t b = 0; b < own.cost(); ++b) {
            if (!own.fits(b, item)) continue;
            if (!best || own.bin(b).load > own.bin(*best).load) best = b;
        }
        return {best.value_or(own.cost()), std::nullopt};
    }
};

/// Sizes in (1/(i+1), 1/i] form class i < j and share bins i at a time;
/// sizes up to 1/j are packed by Next Fit among themselves.
class Harmonic : public OnlineAlgorithm {
public:
    explicit Harmonic(int j) : j_(j) {}
    std::string id() const override { return "harmonic-" + std::to_string(j_); }
    Placement choose(const Item& item, const Packing& own) override {
        const int cls = size_class(item.size);
        auto it = open_.find(cls);
        if (it != open_.end()) {
            const std::size_t b = it->second;
            const bool room = cls == j_ || own.bin(b).items.size() < static_cast<std::size_t>(cls);
            if (room && own.fits(b, item)) return {b, std::nullopt};
        }
        open_[cls] = own.cost();
        return {own.cost(), std::nullopt};
    }

private:
    int size_class(const ExactNumber& size) const {
        for (int i = 1; i < j_; ++i) {
            if (size > ExactNumber(Rational(1, i + 1))) return i;
        }
        return j_;
    }

    int j_;
    std::map<int, std::size_t> open_;
};

class FreshBin : public OnlineAlgorithm {
public:
    std::string id() const override { return "fresh-bin"; }
    Placement choose(const Item&, const Packing& own) override {
        if (own.rules().one_dimensional()) return {own.cost(), std::nullopt};
        return {own.cost(), Point{ExactNumber(0), ExactNumber(0)}};
    }
};

/// Shelves stacked bottom-up; a shelf is as tall as its first square and
/// squares go left to right.
class Shelf : public OnlineAlgorithm {
public:
    explicit Shelf(bool first_fit) : first_fit_(first_fit) {}
    std::string id() const override { return first_fit_ ? "shelf-first-fit" : "shelf-next-fit"; }

    Placement choose(const Item& item, const Packing& own) override {
        const ExactNumber& s = item.size;
        const std::size_t first_bin = first_fit_ || bins_.empty() ? 0 : bins_.size() - 1;
        for (std::size_t b = first_bin; b < bins_.size(); ++b) {
            auto& shelves = bins_[b].shelves;
            const std::size_t first_shelf = first_fit_ || shelves.empty() ? 0 : shelves.size() - 1;
            for (std::size_t k = first_shelf; k < shelves.size(); ++k) {
                ShelfRow& row = shelves[k];
                if (s <= row.height && row.used + s <= kOne) {
                    Point p{row.used, row.y};
                    row.used += s;
                    return {b, p};
                }
            }
            if (bins_[b].top + s <= kOne) {
                ShelfRow row{bins_[b].top, s, s};
                Point p{ExactNumber(0), bins_[b].top};
                bins_[b].top += s;
                shelves.push_back(row);
                return {b, p};
            }
        }
        (void)own;
        BinShelves fresh;
        fresh.shelves.push_back(ShelfRow{ExactNumber(0), s, s});
        fresh.top = s;
        bins_.push_back(std::move(fresh));
        return {bins_.size() - 1, Point{ExactNumber(0), ExactNumber(0)}};
    }

private:
    struct ShelfRow {
        ExactNumber y;
        ExactNumber height;
        ExactNumber used;
    };
    struct BinShelves {
        std::vector<ShelfRow> shelves;
        ExactNumber top;
    };

    bool first_fit_;
    std::vector<BinShelves> bins_;
};

std::optional<int> harmonic_parameter(const std::string& id) {
    const std::string prefix = "harmonic-";
    if (id.rfind(prefix, 0) != 0) return std::nullopt;
    int j = 0;
    const char* begin = id.data() + prefix.size();
    const char* end = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(begin, end, j);
    if (ec != std::errc() || ptr != end || j < 3) return std::nullopt;
    return j;
}

}  // namespace

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& id) {
    if (id == "next-fit") return std::make_unique<NextFit>();
    if (id == "first-fit" || id == "ccff") return std::make_unique<FirstFit>(id);
    if (id == "best-fit") return std::make_unique<BestFit>();
    if (id == "fresh-bin") return std::make_unique<FreshBin>();
    if (id == "alternate-fit") return std::make_unique<AlternateFit>();
    if (id == "shelf-first-fit") return std::make_unique<Shelf>(true);
    if (id == "shelf-next-fit") return std::make_unique<Shelf>(false);
    if (auto j = harmonic_parameter(id)) return std::make_unique<Harmonic>(*j);
    throw ContenderError(ContenderError::Kind::UnknownAlgorithm, "unknown algorithm '" + id + "'");
}

bool algorithm_supports(const std::string& id, const VariantRules& rules) {
    if (id == "fresh-bin") return true;
    if (id == "shelf-first-fit" || id == "shelf-next-fit") return rules.kind == VariantKind::Squares;
    if (id == "ccff") return rules.kind == VariantKind::ClassConstrained;
    if (id == "next-fit" || id == "first-fit" || id == "best-fit" || id == "alternate-fit" || harmonic_parameter(id)) {
        return rules.one_dimensional();
    }
    return false;
}

std::vector<std::string> baselines_for(VariantKind kind) {
    switch (kind) {
        case VariantKind::OneD:
        case VariantKind::KnownOpt: return {"next-fit", "first-fit", "best-fit", "harmonic-5"};
        case VariantKind::Squares: return {"shelf-first-fit", "shelf-next-fit", "fresh-bin"};
        case VariantKind::ClassConstrained: return {"ccff", "next-fit", "best-fit", "harmonic-5"};
    }
    return {};
}

std::vector<std::string> registry_ids() {
    return {"next-fit", "first-fit", "best-fit", "harmonic-5", "shelf-first-fit", "shelf-next-fit", "ccff", "fresh-bin",
            "alternate-fit"};
}

AlgorithmSession::AlgorithmSession(VariantRules rules, std::optional<long> advice,
                                   std::unique_ptr<OnlineAlgorithm> algorithm)
    : advice_(advice), algorithm_(std::move(algorithm)), packing_(rules) {
    const bool wants_advice = rules.kind == VariantKind::KnownOpt;
    if (advice.has_value() != wants_advice) {
        throw ContenderError(ContenderError::Kind::AdviceMismatch,
                             wants_advice ? "known-opt session needs the optimal cost as advice"
                                          : "advice given to a variant without known optimum");
    }
    if (advice && (*advice <= 0 || *advice != rules.advice)) {
        throw ContenderError(ContenderError::Kind::AdviceMismatch, "advice must be the positive known optimum");
    }
    algorithm_id_ = algorithm_->id();
}

Placement AlgorithmSession::place(const Item& item) {
    const Placement placement = algorithm_->choose(item, packing_);
    try {
        packing_.add_item(item, placement);
    } catch (const PackingError& e) {
        throw ContenderError(ContenderError::Kind::IllegalPlacement,
                             "algorithm " + algorithm_id_ + " made an illegal placement: " + e.what());
    }
    transcript_.push_back(PlacedItem{item, placement});
    return placement;
}

AlgorithmSession init_session(const VariantRules& rules, std::optional<long> advice, const std::string& algorithm_id) {
    if (!algorithm_supports(algorithm_id, rules)) {
        // Unknown ids surface as UnknownAlgorithm from the factory.
        auto probe = make_algorithm(algorithm_id);
        throw ContenderError(ContenderError::Kind::UnsupportedVariant,
                             "algorithm " + probe->id() + " does not support variant " + rules.name());
    }
    return AlgorithmSession(rules, advice, make_algorithm(algorithm_id));
}

AlgorithmSession fork_replay(const VariantRules& rules, std::optional<long> advice, const std::vector<Item>& prefix,
                             const std::string& algorithm_id) {
    AlgorithmSession session = init_session(rules, advice, algorithm_id);
    for (const auto& item : prefix) session.place(item);
    return session;
}

}  // namespace packbound
