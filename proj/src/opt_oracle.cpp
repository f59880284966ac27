#include "packbound/opt_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace packbound {

namespace {

const ExactNumber kOne(1);
const ExactNumber kHalf(Rational(1, 2));

std::size_t to_size(const BigInt& n) { return n.get_ui(); }

std::vector<std::size_t> decreasing_order(const std::vector<Item>& items) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (items[a].size != items[b].size) return items[a].size > items[b].size;
        return items[a].color.value_or(-1) < items[b].color.value_or(-1);
    });
    return order;
}

struct SearchBin {
    ExactNumber load;
    std::vector<ColorId> colors;  // sorted
    std::vector<std::size_t> members;

    bool same_state(const SearchBin& o) const { return load == o.load && colors == o.colors; }
};

bool accepts(const VariantRules& rules, const SearchBin& bin, const Item& item) {
    if (bin.load + item.size > kOne) return false;
    if (!rules.colored()) return true;
    if (std::binary_search(bin.colors.begin(), bin.colors.end(), *item.color)) return true;
    return bin.colors.size() < static_cast<std::size_t>(rules.colors_per_bin);
}

void admit(SearchBin& bin, const Item& item, std::size_t index) {
    bin.load += item.size;
    bin.members.push_back(index);
    if (item.color) {
        auto it = std::lower_bound(bin.colors.begin(), bin.colors.end(), *item.color);
        if (it == bin.colors.end() || *it != *item.color) bin.colors.insert(it, *item.color);
    }
}

Packing to_packing(const VariantRules& rules, const std::vector<Item>& items, const std::vector<SearchBin>& bins) {
    Packing p(rules);
    for (std::size_t b = 0; b < bins.size(); ++b) {
        for (std::size_t idx : bins[b].members) p.add_item(items[idx], Placement{b, std::nullopt});
    }
    return p;
}

class Search {
public:
    Search(const VariantRules& rules, const std::vector<Item>& items, std::size_t budget)
        : rules_(rules), items_(items), order_(decreasing_order(items)), budget_(budget) {
        suffix_.assign(order_.size() + 1, ExactNumber(0));
        for (std::size_t i = order_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + items_[order_[i]].size;
    }

    void run(std::size_t lower, std::vector<SearchBin> incumbent) {
        lower_ = lower;
        best_ = std::move(incumbent);
        if (best_.size() <= lower_) return;
        std::vector<SearchBin> open;
        dfs(0, open, ExactNumber(0));
    }

    const std::vector<SearchBin>& best() const { return best_; }
    std::size_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

private:
    bool done() const { return exhausted_ || best_.size() <= lower_; }

    void dfs(std::size_t depth, std::vector<SearchBin>& open, const ExactNumber& free_space) {
        if (done()) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (depth == order_.size()) {
            if (open.size() < best_.size()) best_ = open;
            return;
        }
        // Remaining size that cannot go into open bins needs fresh ones.
        const ExactNumber overflow = suffix_[depth] - free_space;
        std::size_t need = open.size();
        if (overflow.sign() > 0) need += to_size(overflow.ceil());
        if (need >= best_.size()) return;

        const std::size_t idx = order_[depth];
        const Item& item = items_[idx];
        for (std::size_t b = 0; b < open.size() && !done(); ++b) {
            if (!accepts(rules_, open[b], item)) continue;
            bool duplicate = false;
            for (std::size_t e = 0; e < b && !duplicate; ++e) {
                duplicate = open[e].same_state(open[b]) && accepts(rules_, open[e], item);
            }
            if (duplicate) continue;
            SearchBin saved = open[b];
            admit(open[b], item, idx);
            dfs(depth + 1, open, free_space - item.size);
            open[b] = std::move(saved);
        }
        if (done() || open.size() + 1 >= best_.size()) return;
        SearchBin fresh;
        admit(fresh, item, idx);
        open.push_back(std::move(fresh));
        dfs(depth + 1, open, free_space + kOne - item.size);
        open.pop_back();
    }

    const VariantRules& rules_;
    const std::vector<Item>& items_;
    std::vector<std::size_t> order_;
    std::vector<ExactNumber> suffix_;
    std::size_t budget_;
    std::size_t lower_ = 0;
    std::size_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<SearchBin> best_;
};

std::vector<SearchBin> ffd_bins(const VariantRules& rules, const std::vector<Item>& items) {
    std::vector<SearchBin> bins;
    for (std::size_t idx : decreasing_order(items)) {
        const Item& item = items[idx];
        auto it = std::find_if(bins.begin(), bins.end(), [&](const SearchBin& b) { return accepts(rules, b, item); });
        if (it == bins.end()) {
            bins.emplace_back();
            it = std::prev(bins.end());
        }
        admit(*it, item, idx);
    }
    return bins;
}

}  // namespace

std::size_t default_node_budget() {
    if (const char* env = std::getenv("PACKBOUND_NODE_BUDGET")) {
        try {
            const unsigned long long v = std::stoull(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 2'000'000;
}

std::size_t martello_toth_l2(const std::vector<Item>& items) {
    std::size_t best = 0;
    std::vector<ExactNumber> thresholds;
    for (const auto& it : items) {
        if (it.size <= kHalf) thresholds.push_back(it.size);
    }
    thresholds.emplace_back(0);
    for (const auto& k : thresholds) {
        std::size_t j1 = 0;
        std::size_t j2 = 0;
        ExactNumber j2_size(0);
        ExactNumber j3_size(0);
        for (const auto& it : items) {
            if (it.size > kOne - k) {
                ++j1;
            } else if (it.size > kHalf) {
                ++j2;
                j2_size += it.size;
            } else if (it.size >= k) {
                j3_size += it.size;
            }
        }
        std::size_t bound = j1 + j2;
        const ExactNumber spill = j3_size - (ExactNumber(static_cast<long>(j2)) - j2_size);
        if (spill.sign() > 0) bound += to_size(spill.ceil());
        best = std::max(best, bound);
    }
    return best;
}

std::size_t combined_lower_bound(const VariantRules& rules, const std::vector<Item>& items) {
    if (items.empty()) return 0;
    ExactNumber total(0);
    std::size_t big = 0;
    std::set<ColorId> colors;
    for (const auto& it : items) {
        total += it.size;
        if (it.size > kHalf) ++big;
        if (it.color) colors.insert(*it.color);
    }
    std::size_t lb = std::max<std::size_t>(to_size(total.ceil()), big);
    lb = std::max(lb, martello_toth_l2(items));
    if (rules.colored()) {
        const std::size_t t = static_cast<std::size_t>(rules.colors_per_bin);
        lb = std::max(lb, (colors.size() + t - 1) / t);
    }
    return std::max<std::size_t>(lb, 1);
}

Packing first_fit_decreasing(const VariantRules& rules, const std::vector<Item>& items) {
    if (!rules.one_dimensional()) throw std::invalid_argument("first_fit_decreasing is 1-D only");
    return to_packing(rules, items, ffd_bins(rules, items));
}

OracleResult min_bins(const OracleInstance& instance) {
    if (!instance.rules.one_dimensional()) {
        throw std::invalid_argument("the exact oracle handles 1-D variants only");
    }
    for (const auto& it : instance.items) {
        if (it.size.sign() <= 0 || it.size > kOne) {
            throw std::invalid_argument("item " + std::to_string(it.id) + " has size outside (0,1]");
        }
        if (it.color.has_value() != instance.rules.colored()) {
            throw std::invalid_argument("item " + std::to_string(it.id) + " color does not match the variant");
        }
    }
    OracleResult out;
    if (instance.items.empty()) {
        out.exact = true;
        out.witness = Packing(instance.rules);
        return out;
    }
    const std::size_t lower = combined_lower_bound(instance.rules, instance.items);
    Search search(instance.rules, instance.items, instance.node_budget ? instance.node_budget : default_node_budget());
    search.run(lower, ffd_bins(instance.rules, instance.items));
    out.count = search.best().size();
    out.nodes = search.nodes();
    out.budget_exceeded = search.exhausted();
    out.exact = out.count <= lower || !out.budget_exceeded;
    out.lower_bound = out.exact ? out.count : lower;
    out.witness = to_packing(instance.rules, instance.items, search.best());
    return out;
}

}  // namespace packbound
