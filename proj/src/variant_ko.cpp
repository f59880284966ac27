#include "packbound/variant_ko.hpp"

#include "packbound/opt_oracle.hpp"

#include <algorithm>

namespace packbound {

namespace {

const unsigned kBase = 10;

long ceil_div(long a, long b) { return (a + b - 1) / b; }

bool is_s(const Item& item) { return !item.label.empty() && item.label[0] == 'S'; }
bool is_t(const Item& item) { return !item.label.empty() && item.label[0] == 'T'; }

Packing from_groups(const VariantRules& rules, const std::vector<std::vector<Item>>& groups) {
    Packing p(rules);
    std::size_t b = 0;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        for (const auto& item : g) p.add_item(item, Placement{b, std::nullopt});
        ++b;
    }
    return p;
}

class Pool {
public:
    Pool(std::vector<Item> items, std::string what) : items_(std::move(items)), what_(std::move(what)) {}

    Item take() {
        if (next_ >= items_.size()) {
            throw VariantError(VariantError::Kind::ConstructionFailed, "ran out of " + what_);
        }
        return items_[next_++];
    }
    std::size_t left() const { return items_.size() - next_; }

private:
    std::vector<Item> items_;
    std::string what_;
    std::size_t next_ = 0;
};

std::vector<Item> with_label(const std::vector<Item>& items, const std::string& label) {
    std::vector<Item> out;
    for (const auto& it : items) {
        if (it.label == label) out.push_back(it);
    }
    return out;
}

void must_be_empty(const Pool& pool, const std::string& what) {
    if (pool.left() != 0) {
        throw VariantError(VariantError::Kind::ConstructionFailed,
                           std::to_string(pool.left()) + " " + what + " left unpacked");
    }
}

PhaseRecord adaptive_phase(AlgorithmSession& session, AdaptiveOracle& oracle, long count, std::size_t first_id,
                           const ExactNumber& base, const std::string& family) {
    PhaseRecord rec;
    for (long i = 0; i < count; ++i) {
        const ExactNumber a = oracle.next_value();
        Item item{first_id + static_cast<std::size_t>(i), base + a, std::nullopt, family};
        const std::size_t before = session.packing().cost();
        const Placement p = session.place(item);
        const bool c1 = p.bin < before;
        oracle.observe(c1);
        item.label = family + (c1 ? "-small" : "-large");
        rec.items.push_back(item);
        rec.bins.push_back(p.bin);
    }
    rec.trace = oracle.trace();
    return rec;
}

void check_sizes(std::vector<CrossCheck>& checks, const std::vector<Item>& items, const Rational& lo,
                 const Rational& hi, const ExactNumber& threshold, const std::string& family) {
    bool in_range = true;
    bool separated = true;
    for (const auto& it : items) {
        in_range = in_range && it.size > ExactNumber(lo) && it.size < ExactNumber(hi);
        const bool small = it.label == family + "-small";
        separated = separated && (small ? it.size < threshold : it.size > threshold);
    }
    record(checks, family + "-item sizes in (" + lo.to_string() + ", " + hi.to_string() + ")", in_range);
    record(checks, family + "-item classes separated by the threshold", separated);
}

}  // namespace

std::vector<std::pair<std::string, long>> KOCensus::entries() const {
    return {{"y7", y7},   {"y3", y3},   {"x60", x60}, {"x30", x30}, {"x20", x20}, {"x10", x10},
            {"x41", x41}, {"x11", x11}, {"x12", x12}, {"x22", x22}, {"x01", x01}, {"x02", x02}};
}

bool KORun::passed() const {
    if (!all_passed(checks)) return false;
    return std::all_of(scenarios.begin(), scenarios.end(), [](const ScenarioResult& s) { return s.passed(); });
}

Rational KORun::max_ratio() const {
    Rational best;
    for (const auto& s : scenarios) best = std::max(best, s.ratio);
    return best;
}

VariantRules ko_rules(long m) { return VariantRules::known_opt(m); }

void validate_ko_m(long m) {
    if (m <= 0 || m % 4 != 0) {
        throw VariantError(VariantError::Kind::InvalidConfig, "known-OPT runs need M > 0 divisible by 4, got " +
                                                                  std::to_string(m));
    }
}

KOSPhase run_s_phase(const std::string& algorithm, long m) {
    validate_ko_m(m);
    AlgorithmSession session = init_session(ko_rules(m), m, algorithm);
    AdaptiveOracle oracle(OracleConfig{kBase, m});
    KOSPhase out;
    out.record = adaptive_phase(session, oracle, m, 0, ExactNumber(Rational(1, 7)), "S");
    out.y7 = static_cast<long>(session.packing().cost());
    out.separator = oracle.separator();
    out.gamma1 = out.separator.gamma();
    return out;
}

KOTPhase run_t_phase(const KOSPhase& s_phase, const std::string& algorithm, long m) {
    validate_ko_m(m);
    AlgorithmSession session = fork_replay(ko_rules(m), m, s_phase.record.items, algorithm);
    AdaptiveOracle oracle(OracleConfig{kBase, m});
    KOTPhase out;
    out.record = adaptive_phase(session, oracle, m, static_cast<std::size_t>(m), ExactNumber(Rational(1, 3)), "T");
    out.y3 = static_cast<long>(session.packing().cost()) - s_phase.y7;
    out.separator = oracle.separator();
    out.gamma2 = out.separator.gamma();
    out.packing = session.packing();
    out.census = classify_ko(out.packing);
    out.census.gamma1 = s_phase.gamma1;
    out.census.gamma2 = out.gamma2;
    return out;
}

KOCensus classify_ko(const Packing& packing) {
    KOCensus c;
    for (std::size_t b = 0; b < packing.bins().size(); ++b) {
        long s = 0;
        long t = 0;
        for (const auto& p : packing.bins()[b].items) {
            if (is_s(p.item)) {
                ++s;
            } else if (is_t(p.item)) {
                ++t;
            } else {
                throw VariantError(VariantError::Kind::CensusGap,
                                   "bin " + std::to_string(b) + " holds item '" + p.item.label + "'");
            }
        }
        long* slot = nullptr;
        if (t == 0) {
            if (s >= 4 && s <= 6) slot = &c.x60;
            if (s == 3) slot = &c.x30;
            if (s == 2) slot = &c.x20;
            if (s == 1) slot = &c.x10;
        } else if (t == 1) {
            if (s >= 2 && s <= 4) slot = &c.x41;
            if (s == 1) slot = &c.x11;
            if (s == 0) slot = &c.x01;
        } else if (t == 2) {
            if (s == 1) slot = &c.x12;
            if (s == 2) slot = &c.x22;
            if (s == 0) slot = &c.x02;
        }
        if (!slot) {
            throw VariantError(VariantError::Kind::CensusGap, "bin " + std::to_string(b) + " has " + std::to_string(s) +
                                                                  " S-items and " + std::to_string(t) + " T-items");
        }
        ++*slot;
    }
    c.y7 = c.x60 + c.x30 + c.x20 + c.x10 + c.x41 + c.x11 + c.x12 + c.x22;
    c.y3 = c.x01 + c.x02;
    return c;
}

std::string ko_scenario_name(int scenario) {
    switch (scenario) {
        case 1: return "s1-four-fifths";
        case 2: return "s2-six-sevenths";
        case 3: return "s3-ones";
        case 4: return "s4-fifty-two";
        case 5: return "s5-two-thirds";
    }
    throw VariantError(VariantError::Kind::BadScenario, "known-OPT scenarios are 1..5, got " + std::to_string(scenario));
}

std::vector<Item> ko_scenario_items(int scenario, long m, long y7, long y3, const ExactNumber& gamma1,
                                    const ExactNumber& gamma2, std::size_t first_id) {
    long count = 0;
    ExactNumber size;
    std::string label;
    switch (scenario) {
        case 1:
            count = m;
            size = ExactNumber(Rational(4, 5));
            label = "four-fifths";
            break;
        case 2:
            count = m - ceil_div(y7, 6);
            size = ExactNumber(Rational(6, 7)) - gamma1;
            label = "six-sevenths";
            break;
        case 3:
            count = m / 2;
            size = ExactNumber(1);
            label = "one";
            break;
        case 4:
            count = m;
            size = ExactNumber(Rational(13, 25));
            label = "fifty-two";
            break;
        case 5:
            count = 2 * y3 <= m ? 3 * m / 4 : m - ceil_div(y3, 2);
            size = ExactNumber(Rational(2, 3)) - gamma2;
            label = "two-thirds";
            break;
        default:
            throw VariantError(VariantError::Kind::BadScenario,
                               "known-OPT scenarios are 1..5, got " + std::to_string(scenario));
    }
    std::vector<Item> out;
    for (long i = 0; i < count; ++i) out.push_back(Item{first_id + static_cast<std::size_t>(i), size, std::nullopt, label});
    return out;
}

Packing ko_opt_packing(int scenario, long m, const std::vector<Item>& s_items, const std::vector<Item>& t_items,
                       const std::vector<Item>& continuation) {
    const VariantRules rules = ko_rules(m);
    std::vector<std::vector<Item>> groups;
    Pool extra(continuation, "continuation items");
    switch (scenario) {
        case 1: {
            Pool s(s_items, "S-items");
            for (long i = 0; i < m; ++i) groups.push_back({extra.take(), s.take()});
            must_be_empty(s, "S-items");
            break;
        }
        case 2: {
            Pool large(with_label(s_items, "S-large"), "large S-items");
            Pool small(with_label(s_items, "S-small"), "small S-items");
            while (large.left() > 0) {
                std::vector<Item> bin;
                while (bin.size() < 6 && large.left() > 0) bin.push_back(large.take());
                groups.push_back(bin);
            }
            while (extra.left() > 0) {
                std::vector<Item> bin{extra.take()};
                if (small.left() > 0) bin.push_back(small.take());
                groups.push_back(bin);
            }
            must_be_empty(small, "small S-items");
            break;
        }
        case 3: {
            Pool s(s_items, "S-items");
            Pool t(t_items, "T-items");
            for (long i = 0; i < m / 2; ++i) groups.push_back({s.take(), s.take(), t.take(), t.take()});
            while (extra.left() > 0) groups.push_back({extra.take()});
            must_be_empty(s, "S-items");
            must_be_empty(t, "T-items");
            break;
        }
        case 4: {
            Pool s(s_items, "S-items");
            Pool t(t_items, "T-items");
            for (long i = 0; i < m; ++i) groups.push_back({extra.take(), t.take(), s.take()});
            must_be_empty(s, "S-items");
            must_be_empty(t, "T-items");
            break;
        }
        case 5: {
            Pool s(s_items, "S-items");
            Pool large(with_label(t_items, "T-large"), "large T-items");
            Pool small(with_label(t_items, "T-small"), "small T-items");
            const long y3 = static_cast<long>(large.left());
            if (2 * y3 <= m) {
                for (long i = 0; i < m / 4; ++i) {
                    std::vector<Item> bin{s.take(), s.take()};
                    for (int j = 0; j < 2; ++j) bin.push_back(large.left() > 0 ? large.take() : small.take());
                    groups.push_back(bin);
                }
                for (long i = 0; i < m / 4; ++i) groups.push_back({extra.take(), s.take(), s.take()});
                for (long i = 0; i < m / 2; ++i) groups.push_back({extra.take(), small.take()});
            } else {
                const long c = ceil_div(y3, 2);
                for (long i = 0; i < c; ++i) {
                    std::vector<Item> bin{s.take(), s.take(), large.take()};
                    if (large.left() > 0) bin.push_back(large.take());
                    groups.push_back(bin);
                }
                for (long i = 0; i < m / 2 - c; ++i) groups.push_back({extra.take(), s.take(), s.take()});
                for (long i = 0; i < m - y3; ++i) groups.push_back({extra.take(), small.take()});
                while (extra.left() > 0) groups.push_back({extra.take()});
            }
            must_be_empty(s, "S-items");
            must_be_empty(large, "large T-items");
            must_be_empty(small, "small T-items");
            break;
        }
        default:
            throw VariantError(VariantError::Kind::BadScenario,
                               "known-OPT scenarios are 1..5, got " + std::to_string(scenario));
    }
    must_be_empty(extra, "continuation items");
    try {
        return from_groups(rules, groups);
    } catch (const PackingError& e) {
        throw VariantError(VariantError::Kind::ConstructionFailed,
                           "scenario " + std::to_string(scenario) + " construction: " + e.what());
    }
}

KORun run_full_ko(const std::string& algorithm, long m, const KOOptions& options) {
    validate_ko_m(m);
    if (!algorithm_supports(algorithm, ko_rules(m))) {
        throw ContenderError(ContenderError::Kind::UnsupportedVariant, algorithm + " does not run on known-OPT");
    }
    KORun run;
    run.algorithm = algorithm;
    run.m = m;
    run.s_phase = run_s_phase(algorithm, m);
    run.t_phase = run_t_phase(run.s_phase, algorithm, m);
    const KOSPhase& s = run.s_phase;
    const KOTPhase& t = run.t_phase;
    const KOCensus& c = t.census;
    auto& checks = run.checks;

    check_sizes(checks, s.record.items, Rational(1, 7), Rational(143, 1000), ExactNumber(Rational(1, 7)) + s.gamma1, "S");
    check_sizes(checks, t.record.items, Rational(1, 3), Rational(33344, 100000), ExactNumber(Rational(1, 3)) + t.gamma2,
                "T");
    const long large_s = static_cast<long>(with_label(s.record.items, "S-large").size());
    const long large_t = static_cast<long>(with_label(t.record.items, "T-large").size());
    record(checks, "Y7 = number of large S-items", s.y7 == large_s,
           std::to_string(s.y7) + " vs " + std::to_string(large_s));
    record(checks, "Y3 = number of large T-items", t.y3 == large_t,
           std::to_string(t.y3) + " vs " + std::to_string(large_t));
    record(checks, "T-items: X41+X11+2X12+2X22+X01+2X02 = M",
           c.x41 + c.x11 + 2 * c.x12 + 2 * c.x22 + c.x01 + 2 * c.x02 == m);
    record(checks, "S-items: 6X60+3X30+2X20+X10+4X41+X11+X12+2X22 >= M",
           6 * c.x60 + 3 * c.x30 + 2 * c.x20 + c.x10 + 4 * c.x41 + c.x11 + c.x12 + 2 * c.x22 >= m);
    record(checks, "Y7 = X60+X30+X20+X10+X41+X11+X12+X22", c.y7 == s.y7,
           std::to_string(c.y7) + " vs " + std::to_string(s.y7));
    record(checks, "Y3 = X01+X02", c.y3 == t.y3, std::to_string(c.y3) + " vs " + std::to_string(t.y3));

    std::vector<Item> st_items = s.record.items;
    st_items.insert(st_items.end(), t.record.items.begin(), t.record.items.end());
    std::vector<std::size_t> st_bins = s.record.bins;
    st_bins.insert(st_bins.end(), t.record.bins.begin(), t.record.bins.end());

    std::vector<long> alg(6, 0);
    for (int sc = 1; sc <= 5; ++sc) {
        const bool after_t = sc >= 3;
        const auto& prefix = after_t ? st_items : s.record.items;
        AlgorithmSession session = fork_replay(ko_rules(m), m, prefix, algorithm);
        ScenarioResult r;
        r.name = ko_scenario_name(sc);
        record(r.checks, "replay reproduces the prefix placements",
               replays_identically(session, after_t ? st_bins : s.record.bins));
        const long y7_replay = static_cast<long>(session.packing().cost()) - (after_t ? t.y3 : 0);
        record(r.checks, "Y7 identical in the replay", y7_replay == s.y7);
        const auto extra = ko_scenario_items(sc, m, s.y7, t.y3, s.gamma1, t.gamma2, prefix.size());
        present_all(session, extra);
        r.items_presented = extra.size();
        r.alg_cost = session.packing().cost();
        r.alg_packing = session.packing();
        alg[sc] = static_cast<long>(r.alg_cost);
        r.opt_packing = ko_opt_packing(sc, m, s.record.items, after_t ? t.record.items : std::vector<Item>{}, extra);
        r.opt_cost = static_cast<std::size_t>(m);
        r.ratio = ratio_of(r.alg_cost, r.opt_cost);
        check_constructed(r.checks, "OPT packing", r.opt_packing, prefix.size() + extra.size());
        record(r.checks, "OPT packing cost = M", r.opt_packing.cost() == static_cast<std::size_t>(m),
               std::to_string(r.opt_packing.cost()));
        const long a = alg[sc];
        const std::string got = "ALG = " + std::to_string(a);
        switch (sc) {
            case 1:
                record(r.checks, "ALG1 >= M+X60+X30+X20+X41+X22", a >= m + c.x60 + c.x30 + c.x20 + c.x41 + c.x22, got);
                break;
            case 2:
                record(r.checks, "ALG2 = Y7 + M - ceil(Y7/6)", a == s.y7 + m - ceil_div(s.y7, 6), got);
                break;
            case 3: record(r.checks, "ALG3 = Y7+Y3+M/2", a == s.y7 + t.y3 + m / 2, got); break;
            case 4:
                record(r.checks, "ALG4 >= M+X60+X41+X12+X22+X02", a >= m + c.x60 + c.x41 + c.x12 + c.x22 + c.x02, got);
                break;
            case 5:
                record(r.checks, "ALG5 >= Y7+Y3-X20-X10+(scenario items)",
                       a >= s.y7 + t.y3 - c.x20 - c.x10 + static_cast<long>(extra.size()), got);
                break;
        }
        if (options.oracle_check) {
            std::vector<Item> all = prefix;
            all.insert(all.end(), extra.begin(), extra.end());
            const OracleResult o = min_bins(OracleInstance{VariantRules::one_d(), all, options.node_budget});
            std::string detail = "count " + std::to_string(o.count) + ", lower bound " + std::to_string(o.lower_bound) +
                                 ", nodes " + std::to_string(o.nodes);
            if (o.budget_exceeded) detail += ", budget exceeded";
            record(r.checks, "opt-oracle confirms OPT = M", o.exact && o.count == static_cast<std::size_t>(m), detail);
            record(r.checks, "opt-oracle witness validates", validate_packing(o.witness).empty());
        }
        run.scenarios.push_back(std::move(r));
    }

    const bool case1 = 2 * c.y3 <= m;
    const Program program = builtin_program(case1 ? "ko-case1" : "ko-case2");
    std::map<std::string, Rational> point;
    for (const auto& [name, value] : c.entries()) point[name] = Rational(BigInt(value), BigInt(m));
    std::vector<std::optional<Rational>> r_rows(program.rows().size());
    std::vector<Rational> slack(program.rows().size());
    const auto norm = [&](long a) { return Rational(BigInt(a), BigInt(m)); };
    r_rows[4] = norm(alg[1]);
    r_rows[5] = norm(alg[2]);
    slack[5] = Rational(BigInt(5), BigInt(m));  // 6*ceil(Y7/6) - Y7 <= 5
    r_rows[6] = norm(alg[3]);
    r_rows[7] = norm(alg[4]);
    r_rows[9] = norm(alg[5]);
    if (!case1) slack[9] = Rational(BigInt(1), BigInt(m));  // 2*ceil(Y3/2) - Y3 <= 1
    check_program_point(checks, program, point, r_rows, slack);
    return run;
}

}  // namespace packbound
