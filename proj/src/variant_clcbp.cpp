#include "packbound/variant_clcbp.hpp"

#include "packbound/opt_oracle.hpp"

#include <algorithm>
#include <set>

namespace packbound {

namespace {

bool is_e(const Item& item) { return !item.label.empty() && item.label[0] == 'E'; }
bool is_t(const Item& item) { return !item.label.empty() && item.label[0] == 'T'; }

long count_if_label(const Bin& bin, bool (*pred)(const Item&), std::optional<std::size_t> skip_id = std::nullopt) {
    long n = 0;
    for (const auto& p : bin.items) {
        if (skip_id && p.item.id == *skip_id) continue;
        if (pred(p.item)) ++n;
    }
    return n;
}

Rational norm(long a, long m) { return Rational(BigInt(a), BigInt(m)); }

std::string text(long a) { return std::to_string(a); }

VariantRules rules_of(const CLCBPConfig& config) { return VariantRules::class_constrained(config.t); }

std::vector<Item> concat(std::vector<Item> a, const std::vector<Item>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<std::size_t> concat_bins(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Bin contents under construction, tracking the colors present.
struct Draft {
    std::vector<Item> items;
    std::set<ColorId> colors;

    void add(const Item& item) {
        items.push_back(item);
        colors.insert(*item.color);
    }
};

Packing to_packing(const CLCBPConfig& config, const std::vector<Draft>& drafts) {
    std::vector<std::vector<PlacedItem>> bins;
    for (const auto& d : drafts) {
        std::vector<PlacedItem> row;
        for (const auto& it : d.items) row.push_back(PlacedItem{it, Placement{0, std::nullopt}});
        bins.push_back(std::move(row));
    }
    return Packing::unchecked(rules_of(config), bins);
}

/// Puts each item into the first draft with a free color slot, then opens bins of t.
void fill_color_slots(std::vector<Draft>& drafts, const std::vector<Item>& items, int t) {
    std::size_t next = 0;
    for (auto& d : drafts) {
        while (next < items.size() && static_cast<int>(d.colors.size()) < t) d.add(items[next++]);
    }
    while (next < items.size()) {
        Draft d;
        while (next < items.size() && static_cast<int>(d.items.size()) < t) d.add(items[next++]);
        drafts.push_back(std::move(d));
    }
}

void confirm_with_oracle(ScenarioResult& r, const CLCBPConfig& config, const std::vector<Item>& all,
                         const CLCBPOptions& options) {
    const OracleResult o = min_bins(OracleInstance{rules_of(config), all, options.node_budget});
    std::string detail = "count " + std::to_string(o.count) + ", lower bound " + std::to_string(o.lower_bound) +
                         ", nodes " + std::to_string(o.nodes);
    if (o.budget_exceeded) detail += ", budget exceeded";
    record(r.checks, "opt-oracle lower bound <= constructed cost", o.lower_bound <= r.opt_cost, detail);
    record(r.checks, "opt-oracle witness validates", validate_packing(o.witness).empty());
    if (o.exact) {
        record(r.checks, "opt-oracle optimum <= constructed cost", o.count <= r.opt_cost, detail);
        if (o.count == r.opt_cost) r.opt_is_upper_bound = false;
    }
}

}  // namespace

void validate_clcbp_config(const CLCBPConfig& config) {
    if (config.t != 2 && config.t != 3) {
        throw VariantError(VariantError::Kind::InvalidConfig,
                           "class-constrained runs need t = 2 or 3, got " + std::to_string(config.t));
    }
    if (config.m <= 0 || config.m % 6 != 0) {
        throw VariantError(VariantError::Kind::InvalidConfig,
                           "class-constrained runs need M divisible by 6, got " + text(config.m));
    }
    if (config.k_e != 20 || config.k_t != 10) {
        throw VariantError(VariantError::Kind::InvalidConfig, "class-constrained oracles use k = 20 and k = 10");
    }
}

std::string tstop_name(TStop stop) {
    switch (stop) {
        case TStop::FixedCount: return "fixed-count";
        case TStop::SecondCondition: return "second-condition";
        case TStop::FirstThenThird: return "first-then-third";
        case TStop::CapacityReached: return "capacity-reached";
    }
    return "unknown";
}

TPhaseStop::TPhaseStop(int t, long m, long x1, long x2, long x3)
    : t_(t), m_(m), x3_(x3), target_(2 * std::max(x1, x2)) {}

bool TPhaseStop::after_item(long z1, long z2) {
    ++count_;
    if (t_ == 2) {
        decided_ = count_ >= target_;
    } else if (!decided_) {
        if (!third_mode_) {
            if (3 * z1 + 4 * z2 >= 2 * m_ - 7) {
                decided_ = true;
                reason_ = TStop::SecondCondition;
            } else if (z1 + z2 + 6 * x3_ >= 2 * m_ - 1) {
                third_mode_ = true;
            }
        }
        if (third_mode_ && 2 * z1 + 3 * z2 >= 6 * x3_ - 5) {
            decided_ = true;
            reason_ = TStop::FirstThenThird;
        }
    }
    return decided_ && count_ % 2 == 0;
}

std::string final_name(FinalKind which) { return which == FinalKind::Halves ? "halves" : "two-thirds"; }

Rational ClosedFormBound::best() const { return small ? std::max(linear, *small) : linear; }

ClosedFormBound closed_form_bound(const CLCBPCensus& census, int t, long m) {
    ClosedFormBound b;
    b.linear = Rational(t - 1) * norm(census.x_total, m) + Rational(1);
    if (2 * t * census.xj(t) <= m) b.small = Rational(2) - Rational(BigInt(1), BigInt(2 * t));
    return b;
}

bool CLCBPRun::passed() const {
    if (!all_passed(checks)) return false;
    return std::all_of(scenarios.begin(), scenarios.end(), [](const ScenarioResult& s) { return s.passed(); });
}

Rational CLCBPRun::max_ratio() const {
    Rational best;
    for (const auto& s : scenarios) best = std::max(best, s.ratio);
    return best;
}

CLCBPEPhase run_e_phase(const std::string& algorithm, const CLCBPConfig& config) {
    validate_clcbp_config(config);
    const VariantRules rules = rules_of(config);
    if (!algorithm_supports(algorithm, rules)) {
        throw ContenderError(ContenderError::Kind::UnsupportedVariant, algorithm + " does not support " + rules.name());
    }
    AlgorithmSession session = init_session(rules, std::nullopt, algorithm);
    AdaptiveOracle oracle(OracleConfig{config.k_e, 2 * config.m + 2});
    CLCBPEPhase out;
    for (long i = 0; i < config.m; ++i) {
        Item item{static_cast<std::size_t>(i), oracle.next_value(), ColorId{i}, "E"};
        const std::size_t before = session.packing().cost();
        const Placement p = session.place(item);
        const bool c1 = p.bin < before;
        oracle.observe(c1);
        item.label = c1 ? "E-small" : "E-large";
        out.record.items.push_back(item);
        out.record.bins.push_back(p.bin);
    }
    out.record.trace = oracle.trace();
    out.separator = oracle.separator();
    out.eps1 = out.separator.gamma() / Rational(2);
    out.x.assign(static_cast<std::size_t>(config.t) + 1, 0);
    for (const auto& bin : session.packing().bins()) {
        const long n = count_if_label(bin, is_e);
        if (n < 1 || n > config.t) {
            throw VariantError(VariantError::Kind::CensusGap, "an algorithm bin holds " + text(n) + " E-items");
        }
        ++out.x[static_cast<std::size_t>(n)];
    }
    out.x_total = static_cast<long>(session.packing().cost());
    return out;
}

CLCBPTPhase run_t_phase_clcbp(const CLCBPEPhase& e_phase, const std::string& algorithm, const CLCBPConfig& config) {
    validate_clcbp_config(config);
    const long m = config.m;
    const int t = config.t;
    const long xt = e_phase.x.at(static_cast<std::size_t>(t));
    CLCBPTPhase out;
    out.packing = Packing(rules_of(config));
    if (2 * t * xt <= m) {
        out.skipped = true;
        return out;
    }
    AlgorithmSession session = fork_replay(rules_of(config), std::nullopt, e_phase.record.items, algorithm);
    for (std::size_t i = 0; i < e_phase.record.items.size(); ++i) {
        const Bin& bin = session.packing().bin(e_phase.record.bins[i]);
        if (count_if_label(bin, is_e) < t) out.reusable.push_back(*e_phase.record.items[i].color);
    }

    AdaptiveOracle oracle(OracleConfig{config.k_t, 2 * m});
    TPhaseStop rule(t, m, e_phase.x.at(1), e_phase.x.at(2), t == 3 ? xt : 0);
    long count = 0;
    while (oracle.can_emit()) {
        const std::size_t pair = static_cast<std::size_t>(count / 2);
        const ColorId color = pair < out.reusable.size() ? out.reusable[pair]
                                                          : ColorId{m + static_cast<long>(pair - out.reusable.size())};
        Item item{static_cast<std::size_t>(m + count), ExactNumber(Rational(1, 3)) + oracle.next_value(), color, "T"};
        const Placement p = session.place(item);
        const bool c1 = count_if_label(session.packing().bin(p.bin), is_t, item.id) == 1;
        oracle.observe(c1);
        (c1 ? out.z2 : out.z1) += 1;
        item.label = c1 ? "T-small" : "T-large";
        out.record.items.push_back(item);
        out.record.bins.push_back(p.bin);
        ++count;
        const bool stop = rule.after_item(out.z1, out.z2);
        oracle.stop_check([&] { return stop; });
    }
    out.stop = rule.decided() && count % 2 == 0 ? rule.reason() : TStop::CapacityReached;
    out.record.trace = oracle.trace();
    out.separator = oracle.separator();
    out.eps2 = (Rational(10) * out.separator.small_sup() + out.separator.large_inf()) / Rational(2);
    out.one_t_bins = out.z1 - out.z2;
    out.packing = session.packing();
    return out;
}

CLCBPCensus clcbp_census(const CLCBPEPhase& e_phase, const CLCBPTPhase& t_phase, const CLCBPConfig& config) {
    CLCBPCensus c;
    c.x = e_phase.x;
    c.x_total = e_phase.x_total;
    c.eps1 = e_phase.eps1;
    for (const auto& it : e_phase.record.items) c.colors[*it.color].used_by_e = true;
    if (t_phase.skipped) return c;
    c.z1 = t_phase.z1;
    c.z2 = t_phase.z2;
    c.eps2 = t_phase.eps2;
    for (ColorId col : t_phase.reusable) c.colors[col].reusable_for_t = true;
    for (const auto& it : t_phase.record.items) {
        ColorRecord& rec = c.colors[*it.color];
        ++rec.t_count;
        if (it.label == "T-small") ++rec.matched;
    }
    (void)config;
    return c;
}

std::vector<Item> huge_items(const CLCBPEPhase& e_phase, const CLCBPConfig& config, std::size_t first_id) {
    const long h = (config.m - e_phase.x_total) / config.t;
    const ExactNumber size = ExactNumber(1) - e_phase.eps1;
    std::vector<Item> out;
    for (const auto& it : e_phase.record.items) {
        if (static_cast<long>(out.size()) >= h) break;
        if (it.label == "E-small") out.push_back(Item{first_id + out.size(), size, it.color, "huge"});
    }
    if (static_cast<long>(out.size()) != h) {
        throw VariantError(VariantError::Kind::BadScenario, "not enough small E-items for the huge items");
    }
    return out;
}

std::vector<Item> final_items(const CLCBPTPhase& t_phase, FinalKind which, std::size_t first_id) {
    if (t_phase.skipped) throw VariantError(VariantError::Kind::BadScenario, "no T-phase to match");
    std::vector<Item> out;
    const ExactNumber size = which == FinalKind::Halves ? ExactNumber(Rational(3, 5))
                                                        : ExactNumber(Rational(2, 3)) - t_phase.eps2 / Rational(5);
    const std::string label = which == FinalKind::Halves ? "match-3/5" : "match-2/3";
    for (const auto& it : t_phase.record.items) {
        if (which == FinalKind::TwoThirds && it.label != "T-small") continue;
        out.push_back(Item{first_id + out.size(), size, it.color, label});
    }
    return out;
}

Packing huge_opt_packing(const CLCBPEPhase& e_phase, const std::vector<Item>& huge, const CLCBPConfig& config) {
    std::vector<Item> small;
    std::vector<Item> large;
    for (const auto& it : e_phase.record.items) (it.label == "E-small" ? small : large).push_back(it);
    const std::size_t h = huge.size();
    const std::size_t t = static_cast<std::size_t>(config.t);
    if (h * t > small.size()) {
        throw VariantError(VariantError::Kind::ConstructionFailed, "too few small E-items for the huge bins");
    }
    std::vector<Draft> drafts(h);
    std::size_t spare = h;  // small E-items beyond the huge colors
    for (std::size_t i = 0; i < h; ++i) {
        if (*small[i].color != *huge[i].color) {
            throw VariantError(VariantError::Kind::ConstructionFailed, "huge item colors out of order");
        }
        drafts[i].add(huge[i]);
        drafts[i].add(small[i]);
        for (std::size_t j = 1; j < t; ++j) drafts[i].add(small[spare++]);
    }
    std::vector<Item> rest(small.begin() + static_cast<std::ptrdiff_t>(spare), small.end());
    rest.insert(rest.end(), large.begin(), large.end());
    std::sort(rest.begin(), rest.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
    std::vector<Draft> tail;
    fill_color_slots(tail, rest, config.t);
    drafts.insert(drafts.end(), tail.begin(), tail.end());
    return to_packing(config, drafts);
}

Packing final_opt_packing(const CLCBPEPhase& e_phase, const CLCBPTPhase& t_phase, const std::vector<Item>& finals,
                          FinalKind which, const CLCBPConfig& config) {
    const auto& ts = t_phase.record.items;
    std::vector<Draft> drafts;
    std::size_t next_final = 0;
    const auto take_final = [&](const Item& t_item) {
        if (next_final >= finals.size() || *finals[next_final].color != *t_item.color) {
            throw VariantError(VariantError::Kind::ConstructionFailed,
                               "matching item missing for T-item " + std::to_string(t_item.id));
        }
        return finals[next_final++];
    };

    if (which == FinalKind::Halves) {
        for (const auto& it : ts) {
            Draft d;
            d.add(it);
            d.add(take_final(it));
            drafts.push_back(std::move(d));
        }
    } else {
        for (const auto& it : ts) {
            if (it.label != "T-small") continue;
            Draft d;
            d.add(it);
            d.add(take_final(it));
            drafts.push_back(std::move(d));
        }
        // Same-color pairs of large T-items, (Z1-Z2)/2 of them, then the rest two per bin.
        std::map<ColorId, std::vector<Item>> large_by_color;
        std::vector<ColorId> color_order;
        for (const auto& it : ts) {
            if (it.label != "T-large") continue;
            if (!large_by_color.count(*it.color)) color_order.push_back(*it.color);
            large_by_color[*it.color].push_back(it);
        }
        long pairs_left = (t_phase.z1 - t_phase.z2) / 2;
        std::set<std::size_t> used;
        for (ColorId col : color_order) {
            const auto& group = large_by_color[col];
            if (pairs_left == 0) break;
            if (group.size() != 2) continue;
            Draft d;
            d.add(group[0]);
            d.add(group[1]);
            used.insert(group[0].id);
            used.insert(group[1].id);
            drafts.push_back(std::move(d));
            --pairs_left;
        }
        if (pairs_left != 0) {
            throw VariantError(VariantError::Kind::ConstructionFailed, "fewer same-color large T pairs than (Z1-Z2)/2");
        }
        std::vector<Item> rest;
        for (const auto& it : ts) {
            if (it.label == "T-large" && !used.count(it.id)) rest.push_back(it);
        }
        for (std::size_t i = 0; i < rest.size(); i += 2) {
            Draft d;
            d.add(rest[i]);
            if (i + 1 < rest.size()) d.add(rest[i + 1]);
            drafts.push_back(std::move(d));
        }
    }
    if (next_final != finals.size()) {
        throw VariantError(VariantError::Kind::ConstructionFailed, "unplaced matching items");
    }

    std::set<ColorId> t_colors;
    for (const auto& it : ts) t_colors.insert(*it.color);
    std::vector<Item> unique;
    for (const auto& it : e_phase.record.items) {
        if (!t_colors.count(*it.color)) {
            unique.push_back(it);
            continue;
        }
        auto home = std::find_if(drafts.begin(), drafts.end(), [&](const Draft& d) { return d.colors.count(*it.color); });
        home->add(it);
    }
    fill_color_slots(drafts, unique, config.t);
    return to_packing(config, drafts);
}

Rational final_lemma_bound(FinalKind which, const CLCBPCensus& census, int t) {
    if (which == FinalKind::Halves) return Rational(census.z1 + census.z2);
    if (t == 2) {
        const long k = std::max(census.xj(1), census.xj(2));
        return Rational(BigInt(census.z1), BigInt(2)) + Rational(census.z2) + Rational(census.xj(2)) -
               Rational(BigInt(k), BigInt(2)) + Rational(1);
    }
    return Rational(BigInt(census.z1 + 2 * census.z2), BigInt(2)) + Rational(3);
}

ScenarioResult huge_scenario(const CLCBPEPhase& e_phase, const std::string& algorithm, const CLCBPConfig& config,
                             const CLCBPOptions& options) {
    const long m = config.m;
    const std::vector<Item>& prefix = e_phase.record.items;
    AlgorithmSession session = fork_replay(rules_of(config), std::nullopt, prefix, algorithm);
    ScenarioResult r;
    r.name = "huge";
    record(r.checks, "replay reproduces the prefix placements", replays_identically(session, e_phase.record.bins));
    const auto extra = huge_items(e_phase, config, prefix.size());
    present_all(session, extra);
    r.items_presented = extra.size();
    r.alg_cost = session.packing().cost();
    r.alg_packing = session.packing();
    const long h = static_cast<long>(extra.size());
    record(r.checks, "ALG1 = X + floor((M-X)/t)", static_cast<long>(r.alg_cost) == e_phase.x_total + h,
           "ALG = " + std::to_string(r.alg_cost) + ", X = " + text(e_phase.x_total) + ", huge = " + text(h));
    bool apart = true;
    for (const auto& bin : r.alg_packing.bins()) {
        bool has_huge = false;
        bool has_large = false;
        for (const auto& p : bin.items) {
            has_huge = has_huge || p.item.label == "huge";
            has_large = has_large || p.item.label == "E-large";
        }
        apart = apart && !(has_huge && has_large);
    }
    record(r.checks, "no huge item shares a bin with a large E-item", apart);

    r.opt_packing = huge_opt_packing(e_phase, extra, config);
    r.opt_cost = r.opt_packing.cost();
    check_constructed(r.checks, "constructed packing", r.opt_packing, prefix.size() + extra.size());
    const long opt1 = (m + config.t - 1) / config.t;
    record(r.checks, "constructed cost = ceil(M/t)", static_cast<long>(r.opt_cost) == opt1,
           std::to_string(r.opt_cost) + " vs " + text(opt1));
    const std::vector<Item> all = concat(prefix, extra);
    const std::size_t lb = combined_lower_bound(rules_of(config), all);
    r.opt_is_upper_bound = lb != r.opt_cost;
    record(r.checks, "lower bound ceil(#colors/t) meets the construction", lb == r.opt_cost,
           "lower bound " + std::to_string(lb));
    if (options.oracle_check) confirm_with_oracle(r, config, all, options);
    r.ratio = ratio_of(r.alg_cost, r.opt_cost);
    return r;
}

ScenarioResult final_scenario(const CLCBPEPhase& e_phase, const CLCBPTPhase& t_phase, const std::string& algorithm,
                              FinalKind which, const CLCBPConfig& config, const CLCBPOptions& options) {
    if (t_phase.skipped) throw VariantError(VariantError::Kind::BadScenario, "final items need a T-phase");
    const std::vector<Item> prefix = concat(e_phase.record.items, t_phase.record.items);
    const std::vector<std::size_t> prefix_bins = concat_bins(e_phase.record.bins, t_phase.record.bins);
    AlgorithmSession session = fork_replay(rules_of(config), std::nullopt, prefix, algorithm);
    ScenarioResult r;
    r.name = final_name(which);
    record(r.checks, "replay reproduces the prefix placements", replays_identically(session, prefix_bins));
    const auto extra = final_items(t_phase, which, prefix.size());
    const auto placed = present_all(session, extra);
    r.items_presented = extra.size();
    r.alg_cost = session.packing().cost();
    r.alg_packing = session.packing();

    const CLCBPCensus c = clcbp_census(e_phase, t_phase, config);
    const long xt = c.xj(config.t);
    const long alg = static_cast<long>(r.alg_cost);
    const std::string got = "ALG = " + text(alg);
    const Packing& before = t_phase.packing;
    if (which == FinalKind::Halves) {
        long outside_one_t = 0;
        for (std::size_t b : placed) {
            const bool one_t = b < before.cost() && count_if_label(before.bin(b), is_t) == 1;
            if (!one_t) ++outside_one_t;
        }
        record(r.checks, "ALG >= X_t + Z1 + 2Z2", alg >= xt + c.z1 + 2 * c.z2, got);
        record(r.checks, "ALG >= X_t + Z1 + (3/5-items outside one-T bins)", alg >= xt + c.z1 + outside_one_t,
               got + ", outside = " + text(outside_one_t));
    } else {
        bool apart = true;
        for (std::size_t b : placed) {
            if (b < before.cost() && count_if_label(before.bin(b), is_t) > 0) apart = false;
        }
        record(r.checks, "no 2/3-item enters a bin with a T-item", apart);
        record(r.checks, "ALG >= X_t + Z1 + Z2", alg >= xt + c.z1 + c.z2, got);
    }

    r.opt_packing = final_opt_packing(e_phase, t_phase, extra, which, config);
    r.opt_cost = r.opt_packing.cost();
    r.opt_is_upper_bound = true;
    check_constructed(r.checks, "constructed packing", r.opt_packing, prefix.size() + extra.size());
    bool matched = true;
    for (const auto& bin : r.opt_packing.bins()) {
        for (const auto& p : bin.items) {
            if (p.item.label.rfind("match", 0) != 0) continue;
            const bool partner = std::any_of(bin.items.begin(), bin.items.end(), [&](const PlacedItem& q) {
                return is_t(q.item) && q.item.color == p.item.color &&
                       (which == FinalKind::Halves || q.item.label == "T-small");
            });
            matched = matched && partner;
        }
    }
    record(r.checks, "every matching item shares a bin with its T-item", matched);
    const Rational bound = final_lemma_bound(which, c, config.t);
    record(r.checks, "constructed cost within the lemma bound", Rational(static_cast<long>(r.opt_cost)) <= bound,
           std::to_string(r.opt_cost) + " vs " + bound.to_string());
    if (options.oracle_check) confirm_with_oracle(r, config, concat(prefix, extra), options);
    r.ratio = ratio_of(r.alg_cost, r.opt_cost);
    return r;
}

bool post_phase_disjunction(const CLCBPCensus& c, long m) {
    const long x3 = c.xj(3);
    return 3 * c.z1 + 4 * c.z2 <= 2 * m || (c.z1 + c.z2 + 6 * x3 <= 2 * m && 2 * c.z1 + 3 * c.z2 <= 6 * x3);
}

bool post_phase_final_form(const CLCBPCensus& c, long m) {
    const long x3 = c.xj(3);
    return 3 * c.z1 + 4 * c.z2 <= 2 * m || (2 * c.z1 + 3 * c.z2 <= 6 * x3 && 6 * x3 <= 2 * m);
}

CLCBPRun run_full_clcbp(const std::string& algorithm, const CLCBPConfig& config, const CLCBPOptions& options) {
    validate_clcbp_config(config);
    const long m = config.m;
    const int t = config.t;
    CLCBPRun run;
    run.algorithm = algorithm;
    run.config = config;
    run.e_phase = run_e_phase(algorithm, config);
    run.t_phase = run_t_phase_clcbp(run.e_phase, algorithm, config);
    run.census = clcbp_census(run.e_phase, run.t_phase, config);
    run.bound = closed_form_bound(run.census, t, m);
    auto& checks = run.checks;
    const CLCBPEPhase& e = run.e_phase;
    const CLCBPTPhase& tp = run.t_phase;
    const CLCBPCensus& c = run.census;

    long weighted = 0;
    long sum = 0;
    for (int j = 1; j <= t; ++j) {
        weighted += j * c.xj(j);
        sum += c.xj(j);
    }
    record(checks, "sum j*X_j = M", weighted == m, text(weighted));
    record(checks, "X = sum X_j", sum == c.x_total);
    const ExactNumber e_cap = ExactNumber::inverse_power(config.k_e, BigInt(4));
    const ExactNumber small_cap = Rational(2, 20) * e.eps1;
    const ExactNumber large_floor = Rational(2) * e.eps1;
    bool e_range = true;
    bool e_sep = true;
    std::optional<ExactNumber> max_small;
    std::optional<ExactNumber> min_large;
    std::optional<ExactNumber> max_e;
    for (const auto& it : e.record.items) {
        e_range = e_range && it.size.sign() > 0 && it.size < e_cap;
        const bool small = it.label == "E-small";
        e_sep = e_sep && (small ? it.size < small_cap : it.size > large_floor);
        auto& slot = small ? max_small : min_large;
        if (small) {
            slot = slot ? max(*slot, it.size) : it.size;
        } else {
            slot = slot ? min(*slot, it.size) : it.size;
        }
        max_e = max_e ? max(*max_e, it.size) : it.size;
    }
    record(checks, "E sizes in (0, 20^-4)", e_range);
    record(checks, "small E < 2 eps1/20 and large E > 2 eps1", e_sep);
    if (max_small && min_large) {
        record(checks, "large E / small E >= 20", *min_large >= Rational(20) * *max_small);
    }
    record(checks, "huge item (1 - eps1) fits with t small E-items",
           ExactNumber(1) - e.eps1 + Rational(t) * small_cap <= ExactNumber(1));

    run.scenarios.push_back(huge_scenario(e, algorithm, config, options));
    const long alg1 = static_cast<long>(run.scenarios.back().alg_cost);
    const long opt1 = static_cast<long>(run.scenarios.back().opt_cost);

    if (tp.skipped) {
        record(checks, "T-phase skipped only when X_t <= M/(2t)", 2 * t * c.xj(t) <= m);
        record(checks, "closed-form bound has the 2 - 1/(2t) branch", run.bound.small.has_value());
        return run;
    }

    // T-phase
    const long count = static_cast<long>(tp.record.items.size());
    record(checks, "T-phase ended by its stopping rule", tp.stop != TStop::CapacityReached, tstop_name(tp.stop));
    record(checks, "Z2 <= Z1", c.z2 <= c.z1);
    record(checks, "Z1 + Z2 = number of T-items", c.z1 + c.z2 == count, text(count));
    record(checks, "Z1 + Z2 even", (c.z1 + c.z2) % 2 == 0);
    record(checks, "at most 2M T-items", count <= 2 * m);
    long z1 = 0;
    long z2 = 0;
    for (const auto& bin : tp.packing.bins()) {
        const long n = count_if_label(bin, is_t);
        if (n >= 1) ++z1;
        if (n == 2) ++z2;
    }
    record(checks, "Z1, Z2 agree with the final packing", z1 == c.z1 && z2 == c.z2,
           text(z1) + ", " + text(z2) + " vs " + text(c.z1) + ", " + text(c.z2));
    if (t == 2) {
        const long target = 2 * std::max(c.xj(1), c.xj(2));
        record(checks, "T count = max(2X1, 2X2)", count == target, text(count) + " vs " + text(target));
    }
    bool pairs = true;
    bool fresh_only = true;
    std::set<ColorId> full_colors;
    for (const auto& bin : tp.packing.bins()) {
        if (count_if_label(bin, is_e) == t) {
            for (const auto& p : bin.items) full_colors.insert(*p.item.color);
        }
    }
    for (const auto& [col, rec] : c.colors) {
        if (rec.t_count != 0 && rec.t_count != 2) pairs = false;
        if (rec.t_count > 0 && full_colors.count(col)) fresh_only = false;
        if (rec.t_count > 0 && rec.used_by_e && !rec.reusable_for_t) fresh_only = false;
    }
    record(checks, "each T-color has exactly two T-items", pairs);
    record(checks, "no T-item takes a color of a t-full E bin", fresh_only);
    std::size_t reused = 0;
    for (const auto& [col, rec] : c.colors) {
        if (rec.t_count > 0 && rec.used_by_e) ++reused;
    }
    record(checks, "reusable colors are consumed before fresh ones",
           reused == std::min(tp.reusable.size(), static_cast<std::size_t>(count / 2)));

    const ExactNumber third(Rational(1, 3));
    const ExactNumber small_t_cap = third + tp.eps2 / Rational(10);
    const ExactNumber large_t_floor = third + tp.eps2;
    bool t_sep = true;
    std::optional<ExactNumber> min_pert;
    for (const auto& it : tp.record.items) {
        t_sep = t_sep && (it.label == "T-small" ? it.size < small_t_cap : it.size > large_t_floor);
        const ExactNumber pert = it.size - third;
        min_pert = min_pert ? min(*min_pert, pert) : pert;
    }
    record(checks, "small T < 1/3 + eps2/10 and large T > 1/3 + eps2", t_sep);
    record(checks, "min T-perturbation > 6 * max E-size", min_pert && max_e && *min_pert > Rational(6) * *max_e);
    record(checks, "E sizes <= eps2/60", max_e && *max_e <= tp.eps2 / Rational(60));
    if (t == 3) {
        record(checks, "post-phase: 3Z1+4Z2 <= 2M or 2Z1+3Z2 <= 6X3 <= 2M", post_phase_final_form(c, m),
               "3Z1+4Z2 = " + text(3 * c.z1 + 4 * c.z2) + ", 2Z1+3Z2 = " + text(2 * c.z1 + 3 * c.z2) +
                   ", 6X3 = " + text(6 * c.xj(3)));
        if (tp.stop == TStop::FirstThenThird) {
            record(checks, "-5 <= 2Z1+3Z2-6X3 <= 0", 2 * c.z1 + 3 * c.z2 - 6 * c.xj(3) >= -5 &&
                                                         2 * c.z1 + 3 * c.z2 - 6 * c.xj(3) <= 0);
            record(checks, "Z1+Z2+6X3 >= 2M", c.z1 + c.z2 + 6 * c.xj(3) >= 2 * m);
        } else {
            record(checks, "2M-7 <= 3Z1+4Z2 <= 2M", 3 * c.z1 + 4 * c.z2 >= 2 * m - 7 && 3 * c.z1 + 4 * c.z2 <= 2 * m);
            record(checks, "Z1+Z2+6X3 <= 2M", c.z1 + c.z2 + 6 * c.xj(3) <= 2 * m);
        }
    }

    run.scenarios.push_back(final_scenario(e, tp, algorithm, FinalKind::Halves, config, options));
    run.scenarios.push_back(final_scenario(e, tp, algorithm, FinalKind::TwoThirds, config, options));
    const Rational r1 = ratio_of(static_cast<std::size_t>(alg1), static_cast<std::size_t>(opt1));
    const Rational r_half = run.scenarios[1].ratio;
    const Rational r_two = run.scenarios[2].ratio;

    std::map<std::string, Rational> point;
    point["x1"] = norm(c.xj(1), m);
    point["x2"] = norm(c.xj(2), m);
    point["z1"] = norm(c.z1, m);
    point["z2"] = norm(c.z2, m);
    std::string id;
    if (t == 2) {
        id = c.xj(2) >= c.xj(1) ? "clcbp2-case1" : "clcbp2-case2";
    } else {
        point["x3"] = norm(c.xj(3), m);
        point["x"] = norm(c.x_total, m);
        id = tp.stop == TStop::FirstThenThird ? "clcbp3-case1" : "clcbp3-case2";
    }
    const Program program = builtin_program(id);
    std::vector<std::optional<Rational>> r_rows(program.rows().size());
    std::vector<Rational> slack(program.rows().size());
    const Rational inv_m = norm(1, m);
    // ALG1 loses at most (t-1)/t to the floor; the two-thirds bound carries +1 (t=2) or +3 (t=3).
    if (t == 2) {
        r_rows[1] = r1;
        slack[1] = inv_m;
        r_rows[2] = r_half;
        r_rows[7] = r_two;
        slack[7] = r_two * inv_m;
    } else {
        r_rows[2] = r1;
        slack[2] = Rational(2) * inv_m;
        r_rows[4] = r_two;
        slack[4] = Rational(3) * r_two * inv_m;
        r_rows[5] = r_half;
        slack[7] = (tp.stop == TStop::FirstThenThird ? Rational(5) : Rational(7)) * inv_m;
    }
    check_program_point(checks, program, point, r_rows, slack);
    return run;
}

}  // namespace packbound
