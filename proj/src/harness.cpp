#include "packbound/harness.hpp"

#include "packbound/opt_oracle.hpp"
#include "packbound/variant_clcbp.hpp"
#include "packbound/variant_ko.hpp"
#include "packbound/variant_sp.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace packbound {

namespace {

constexpr const char* kDisplayNote = "decimals are display only (12 significant digits, round half even)";

Json phase_json(const std::string& name, const PhaseRecord& record) {
    Json j;
    j["name"] = name;
    j["items"] = record.items.size();
    j["trace"] = record.trace;
    return j;
}

Json census_json(const std::vector<std::pair<std::string, long>>& entries) {
    Json j = Json::object();
    for (const auto& [name, value] : entries) j[name] = value;
    return j;
}

Json scenarios_json(const std::vector<ScenarioResult>& scenarios) {
    Json j = Json::array();
    for (const auto& s : scenarios) j.push_back(scenario_json(s));
    return j;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// One adversary run, kept together with its checks for the verify suites.
struct CellRun {
    Json report;
    std::vector<CrossCheck> run_checks;
    std::vector<ScenarioResult> scenarios;
};

CellRun run_ko_cell(const std::string& algorithm, long m, bool confirm) {
    KOOptions options;
    options.oracle_check = confirm;
    const KORun run = run_full_ko(algorithm, m, options);
    CellRun out;
    Json& j = out.report;
    j["variant"] = "ko";
    j["algorithm"] = algorithm;
    j["m"] = m;
    j["advice"] = m;
    j["decimals"] = kDisplayNote;
    j["phases"] = Json::array({phase_json("S", run.s_phase.record), phase_json("T", run.t_phase.record)});
    j["census"] = census_json(run.t_phase.census.entries());
    j["gamma1"] = run.s_phase.gamma1.to_string();
    j["gamma2"] = run.t_phase.gamma2.to_string();
    j["scenarios"] = scenarios_json(run.scenarios);
    j["cross_checks"] = checks_json(run.checks);
    j["max_ratio"] = exact_json(run.max_ratio());
    j["passed"] = run.passed();
    out.run_checks = run.checks;
    out.scenarios = run.scenarios;
    return out;
}

CellRun run_sp_cell(const std::string& algorithm, long m) {
    const SPRun run = run_full_sp(algorithm, m);
    CellRun out;
    Json& j = out.report;
    j["variant"] = "sp";
    j["algorithm"] = algorithm;
    j["m"] = m;
    j["decimals"] = kDisplayNote;
    j["phases"] = Json::array({phase_json("F", run.f_phase.record), phase_json("T", run.t_phase.record)});
    j["census"] = census_json(run.t_phase.census.entries());
    j["gamma1"] = run.f_phase.gamma1.to_string();
    j["gamma2"] = run.t_phase.gamma2.to_string();
    j["scenarios"] = scenarios_json(run.scenarios);
    j["cross_checks"] = checks_json(run.checks);
    j["max_ratio"] = exact_json(run.max_ratio());
    j["passed"] = run.passed();
    out.run_checks = run.checks;
    out.scenarios = run.scenarios;
    return out;
}

CellRun run_clcbp_cell(const std::string& algorithm, long m, int t, bool confirm) {
    CLCBPConfig config;
    config.t = t;
    config.m = m;
    CLCBPOptions options;
    options.oracle_check = confirm;
    const CLCBPRun run = run_full_clcbp(algorithm, config, options);
    CellRun out;
    Json& j = out.report;
    j["variant"] = "clcbp";
    j["algorithm"] = algorithm;
    j["m"] = m;
    j["t"] = t;
    j["decimals"] = kDisplayNote;
    Json phases = Json::array({phase_json("E", run.e_phase.record)});
    Json tp = phase_json("T", run.t_phase.record);
    tp["skipped"] = run.t_phase.skipped;
    tp["stop"] = tstop_name(run.t_phase.stop);
    phases.push_back(std::move(tp));
    j["phases"] = std::move(phases);
    Json census;
    census["x"] = run.census.x;
    census["x_total"] = run.census.x_total;
    census["z1"] = run.census.z1;
    census["z2"] = run.census.z2;
    j["census"] = std::move(census);
    j["eps1"] = run.census.eps1.to_string();
    j["eps2"] = run.t_phase.skipped ? Json(nullptr) : Json(run.census.eps2.to_string());
    Json bound;
    bound["linear"] = exact_json(run.bound.linear);
    bound["small"] = run.bound.small ? exact_json(*run.bound.small) : Json(nullptr);
    bound["best"] = exact_json(run.bound.best());
    j["closed_form_bound"] = std::move(bound);
    j["scenarios"] = scenarios_json(run.scenarios);
    j["cross_checks"] = checks_json(run.checks);
    j["max_ratio"] = exact_json(run.max_ratio());
    j["passed"] = run.passed();
    out.run_checks = run.checks;
    out.scenarios = run.scenarios;
    return out;
}

CellRun run_cell(const DuelRequest& request) {
    if (request.variant == "ko") return run_ko_cell(request.algorithm, request.m, request.confirm_opt);
    if (request.variant == "sp") return run_sp_cell(request.algorithm, request.m);
    if (request.variant == "clcbp") return run_clcbp_cell(request.algorithm, request.m, request.t, request.confirm_opt);
    throw VariantError(VariantError::Kind::InvalidConfig, "unknown variant '" + request.variant + "'");
}

std::vector<std::string> variant_programs(const DuelRequest& request) {
    if (request.variant == "ko") return {"ko-case1", "ko-case2"};
    if (request.variant == "sp") return {"sp"};
    const std::string prefix = request.t == 3 ? "clcbp3" : "clcbp2";
    return {prefix + "-case1", prefix + "-case2"};
}

std::string cell_name(const DuelRequest& r) {
    std::string out = r.variant;
    if (r.variant == "clcbp") out += " t=" + std::to_string(r.t);
    return out + " " + r.algorithm + " M=" + std::to_string(r.m);
}

// The verify matrix: small M per variant, every baseline of the variant.
std::vector<DuelRequest> verify_matrix(bool confirm) {
    std::vector<DuelRequest> cells;
    for (long m : {4L, 8L}) {
        for (const auto& id : baselines_for(VariantKind::KnownOpt)) cells.push_back({"ko", id, m, 2, confirm});
    }
    for (long m : {10L, 20L}) {
        for (const auto& id : baselines_for(VariantKind::Squares)) cells.push_back({"sp", id, m, 2, false});
    }
    std::vector<std::string> clcbp = baselines_for(VariantKind::ClassConstrained);
    clcbp.push_back("alternate-fit");
    for (int t : {2, 3}) {
        for (long m : {6L, 12L}) {
            for (const auto& id : clcbp) cells.push_back({"clcbp", id, m, t, confirm && m == 6});
        }
    }
    return cells;
}

SuiteCell make_cell(std::string name, const std::vector<CrossCheck>& checks) {
    SuiteCell cell;
    cell.cell = std::move(name);
    cell.checks = checks.size();
    for (const auto& c : checks) {
        if (!c.passed) cell.failures.push_back(c);
    }
    return cell;
}

}  // namespace

Json exact_json(const Rational& value) {
    Json j;
    j["exact"] = value.to_string();
    j["display"] = value.to_decimal(12);
    return j;
}

Json checks_json(const std::vector<CrossCheck>& checks) {
    Json j = Json::array();
    for (const auto& c : checks) {
        Json row;
        row["name"] = c.name;
        row["pass"] = c.passed;
        if (!c.detail.empty()) row["detail"] = c.detail;
        j.push_back(std::move(row));
    }
    return j;
}

Json scenario_json(const ScenarioResult& s) {
    Json j;
    j["name"] = s.name;
    j["items_presented"] = s.items_presented;
    j["alg_cost"] = s.alg_cost;
    if (s.opt_is_upper_bound) {
        j["opt_upper"] = s.opt_cost;
    } else {
        j["opt_cost"] = s.opt_cost;
    }
    j["ratio"] = exact_json(s.ratio);
    j["cross_checks"] = checks_json(s.checks);
    return j;
}

Rational parse_tolerance(const std::string& text) {
    const auto e = text.find_first_of("eE");
    Rational out;
    if (e == std::string::npos) {
        out = Rational::parse(text);
    } else {
        const Rational mantissa = Rational::parse(text.substr(0, e));
        std::size_t used = 0;
        const long exponent = std::stol(text.substr(e + 1), &used);
        if (used != text.size() - e - 1) throw std::invalid_argument("bad tolerance '" + text + "'");
        out = mantissa * rational_pow(Rational(10), exponent);
    }
    if (out.sign() <= 0) throw std::invalid_argument("tolerance must be positive, got '" + text + "'");
    return out;
}

// Program table

bool BoundsTable::ok() const {
    const bool rows_ok = std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.ok; });
    return rows_ok &&
           std::all_of(certificates.begin(), certificates.end(), [](const CertificateRow& c) { return c.verified; });
}

std::string printed_bound(const std::string& program) {
    if (program == "ko-case1") return "87/62";
    if (program == "ko-case2") return "17/12";
    if (program == "sp") return "1.751544578513";
    if (program == "clcbp2-case1") return "1.7320507";
    if (program == "clcbp2-case2") return "1.717668486";
    if (program == "clcbp3-case1") return "1.902018";
    if (program == "clcbp3-case2") return "1.80814287";
    throw MathProgError(MathProgError::Kind::UnknownProgram, "no printed bound for program " + program);
}

BoundsTable compute_bounds(const Rational& tol, const std::vector<std::string>& programs) {
    BoundsTable table;
    table.tol = tol;
    const std::vector<std::string> ids = programs.empty() ? builtin_program_ids() : programs;
    for (const auto& id : ids) {
        BoundRow row;
        row.program = id;
        row.printed = printed_bound(id);
        const Program p = builtin_program(id);
        const Rational printed = Rational::parse(row.printed);
        try {
            if (p.linear_in_r()) {
                row.exact = true;
                row.value = solve_min_r_exact(p);
                row.lo = row.hi = row.value;
                row.ok = row.value == printed;
            } else {
                const Bracket b = bisect_min_r(p, tol);
                row.lo = b.lo;
                row.hi = b.hi;
                row.allowance = id == "sp" ? tol : Rational(1, 1000000);
                row.ok = row.lo - row.allowance <= printed && printed <= row.hi + row.allowance;
            }
        } catch (const MathProgError& e) {
            row.error = e.what();
        }
        table.rows.push_back(std::move(row));
        if (id == "ko-case1" || id == "ko-case2") {
            CertificateRow c;
            c.program = id;
            try {
                const KnownOptProof proof = known_opt_proof(id);
                c.statement = proof.certificate.target->label;
                check_certificate(proof.program, proof.certificate);
                c.verified = true;
                c.detail = "R >= " + proof.bound.to_string();
            } catch (const MathProgError& e) {
                c.detail = e.what();
            }
            table.certificates.push_back(std::move(c));
        }
    }
    return table;
}

Json bounds_json(const BoundsTable& table) {
    Json j;
    j["tol"] = table.tol.to_string();
    j["decimals"] = kDisplayNote;
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        Json row;
        row["program"] = r.program;
        row["printed"] = r.printed;
        if (!r.error.empty()) {
            row["error"] = r.error;
        } else if (r.exact) {
            row["method"] = "exact";
            row["value"] = exact_json(r.value);
        } else {
            row["method"] = "bisection";
            row["lo"] = exact_json(r.lo);
            row["hi"] = exact_json(r.hi);
            row["allowance"] = r.allowance.to_string();
            const Rational printed = Rational::parse(r.printed);
            row["contains_printed"] = r.lo <= printed && printed <= r.hi;
        }
        row["ok"] = r.ok;
        rows.push_back(std::move(row));
    }
    j["programs"] = std::move(rows);
    Json certs = Json::array();
    for (const auto& c : table.certificates) {
        Json row;
        row["program"] = c.program;
        row["statement"] = c.statement;
        row["verified"] = c.verified;
        row["detail"] = c.detail;
        certs.push_back(std::move(row));
    }
    j["certificates"] = std::move(certs);
    j["ok"] = table.ok();
    return j;
}

std::string bounds_text(const BoundsTable& table) {
    std::ostringstream os;
    os << std::left << std::setw(14) << "program" << " | " << std::setw(16) << "printed" << " | " << std::setw(32)
       << "computed" << " | " << std::setw(18) << "rule" << " | status\n";
    for (const auto& r : table.rows) {
        std::string computed;
        std::string rule;
        if (!r.error.empty()) {
            computed = "error";
            rule = r.error;
        } else if (r.exact) {
            computed = r.value.to_string();
            rule = "exact";
        } else {
            computed = "[" + r.lo.to_decimal(12) + ", " + r.hi.to_decimal(12) + "]";
            rule = "bracket +-" + r.allowance.to_decimal(3);
        }
        os << std::setw(14) << r.program << " | " << std::setw(16) << r.printed << " | " << std::setw(32) << computed
           << " | " << std::setw(18) << rule << " | " << (r.ok ? "OK" : "MISMATCH") << "\n";
    }
    for (const auto& c : table.certificates) {
        os << "certificate " << c.program << " \"" << c.statement << "\" | " << (c.verified ? "verified" : "FAILED")
           << " | " << c.detail << "\n";
    }
    os << "(" << kDisplayNote << ")\n";
    return os.str();
}

std::string bounds_csv(const BoundsTable& table) {
    std::ostringstream os;
    os << "kind,program,printed,lo,hi,method,ok\n";
    for (const auto& r : table.rows) {
        os << "program," << r.program << "," << r.printed << "," << r.lo.to_string() << "," << r.hi.to_string() << ","
           << (r.exact ? "exact" : "bisection") << "," << (r.ok ? "true" : "false") << "\n";
    }
    for (const auto& c : table.certificates) {
        os << "certificate," << c.program << "," << csv_field(c.statement) << ",,,certificate,"
           << (c.verified ? "true" : "false") << "\n";
    }
    return os.str();
}

// Duel

DuelOutcome run_duel(const DuelRequest& request) {
    if (request.variant != "ko" && request.variant != "sp" && request.variant != "clcbp") {
        throw VariantError(VariantError::Kind::InvalidConfig, "unknown variant '" + request.variant + "'");
    }
    CellRun cell = run_cell(request);
    DuelOutcome out;
    out.passed = cell.report.at("passed").get<bool>();
    if (request.with_program) {
        const BoundsTable table = compute_bounds(request.tol, variant_programs(request));
        cell.report["programs"] = bounds_json(table);
    }
    out.report = std::move(cell.report);
    out.scenarios = std::move(cell.scenarios);
    return out;
}

std::string duel_csv(const DuelOutcome& outcome) {
    const Json& r = outcome.report;
    std::ostringstream os;
    os << "variant,algorithm,m,scenario,items_presented,alg_cost,opt,opt_kind,ratio,ratio_display,checks_passed,"
          "checks_total\n";
    for (const auto& s : outcome.scenarios) {
        const auto passed = std::count_if(s.checks.begin(), s.checks.end(), [](const CrossCheck& c) { return c.passed; });
        os << r.at("variant").get<std::string>() << "," << r.at("algorithm").get<std::string>() << ","
           << r.at("m").get<long>() << "," << s.name << "," << s.items_presented << "," << s.alg_cost << ","
           << s.opt_cost << "," << (s.opt_is_upper_bound ? "upper" : "exact") << "," << s.ratio.to_string() << ","
           << s.ratio.to_decimal(12) << "," << passed << "," << s.checks.size() << "\n";
    }
    return os.str();
}

// Oracle

std::vector<std::string> oracle_patterns() {
    std::vector<std::string> out{"all-small", "all-large", "alternating"};
    for (const auto& id : baselines_for(VariantKind::OneD)) out.push_back(id);
    return out;
}

OracleDrive drive_oracle(unsigned k, long n, const std::string& pattern) {
    const bool fixed = pattern == "all-small" || pattern == "all-large" || pattern == "alternating";
    if (!fixed && !algorithm_supports(pattern, VariantRules::one_d())) {
        throw std::invalid_argument("unknown oracle pattern '" + pattern + "'");
    }
    std::optional<AlgorithmSession> session;
    if (!fixed) session.emplace(init_session(VariantRules::one_d(), std::nullopt, pattern));

    AdaptiveOracle oracle({k, n});
    OracleDrive d;
    bool observe_guard = false;
    try {
        oracle.observe(true);
    } catch (const OracleError& e) {
        observe_guard = e.kind() == OracleError::Kind::NothingToObserve;
    }
    bool emit_guard = true;
    while (oracle.can_emit()) {
        const std::size_t i = d.values.size();
        const ExactNumber value = oracle.next_value();
        try {
            oracle.next_value();
            emit_guard = false;
        } catch (const OracleError& e) {
            emit_guard = emit_guard && e.kind() == OracleError::Kind::ObservationPending;
        }
        bool small = false;
        if (pattern == "all-small") {
            small = true;
        } else if (pattern == "alternating") {
            small = i % 2 == 0;
        } else if (!fixed) {
            const Rational base = i % 3 == 2 ? Rational(1, 2) : Rational(1, 4);
            const std::size_t bins = session->packing().cost();
            small = session->place(Item{i, ExactNumber(base) + value, std::nullopt, ""}).bin < bins;
        }
        oracle.observe(small);
        d.values.push_back(value);
        d.small.push_back(small);
    }
    d.separator = oracle.separator();
    d.trace = oracle.trace();

    const ExactNumber gamma = d.separator.gamma();
    const ExactNumber cap = ExactNumber::inverse_power(k, BigInt(4));
    const Rational k2 = Rational(static_cast<long>(k) * static_cast<long>(k));
    bool in_range = true;
    bool small_below = true;
    bool large_above = true;
    bool cross = true;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        in_range = in_range && d.values[i] > ExactNumber(0) && d.values[i] < cap;
        if (d.small[i]) {
            small_below = small_below && d.values[i] < gamma;
        } else {
            large_above = large_above && d.values[i] > gamma;
        }
    }
    // Every cross pair: compare the largest small value with the smallest large one.
    if (d.separator.has_small && d.separator.has_large) {
        cross = d.separator.small_sup() * k2 <= d.separator.large_inf();
        for (std::size_t i = 0; i < d.values.size(); ++i) {
            if (d.small[i]) cross = cross && d.values[i] <= d.separator.small_sup();
            if (!d.small[i]) cross = cross && d.values[i] >= d.separator.large_inf();
        }
    }
    record(d.checks, "emitted all N values", d.values.size() == static_cast<std::size_t>(n));
    record(d.checks, "values in (0, k^-4)", in_range);
    record(d.checks, "small values below gamma", small_below);
    record(d.checks, "large values above gamma", large_above);
    record(d.checks, "large/small >= k^2 for every cross pair", cross);
    record(d.checks, "separator bounds strictly around gamma",
           d.separator.small_sup() < gamma && gamma < d.separator.large_inf());
    record(d.checks, "value withheld until the previous one is observed", emit_guard);
    record(d.checks, "observation needs an emitted value", observe_guard);
    return d;
}

Json oracle_trace_json(unsigned k, long n, const std::string& pattern) {
    const OracleDrive d = drive_oracle(k, n, pattern);
    Json j;
    j["k"] = k;
    j["n"] = n;
    j["pattern"] = pattern;
    j["trace"] = d.trace;
    Json s;
    s["gamma"] = d.separator.gamma().to_string();
    s["small_sup"] = d.separator.small_sup().to_string();
    s["large_inf"] = d.separator.large_inf().to_string();
    s["has_small"] = d.separator.has_small;
    s["has_large"] = d.separator.has_large;
    j["separator"] = std::move(s);
    j["cross_checks"] = checks_json(d.checks);
    j["passed"] = all_passed(d.checks);
    return j;
}

Json oracle_instance_json(const std::string& path, bool& exact) {
    const Instance instance = read_instance_file(path);
    OracleInstance in;
    in.rules = instance.rules;
    in.items = instance.items;
    const OracleResult r = min_bins(in);
    exact = r.exact;
    Json j = rules_to_json(instance.rules);
    j["items"] = instance.items.size();
    j["optimum"] = r.count;
    j["lower_bound"] = r.lower_bound;
    j["exact"] = r.exact;
    j["budget_exceeded"] = r.budget_exceeded;
    j["nodes"] = r.nodes;
    j["witness"] = packing_to_json(r.witness);
    return j;
}

// Verify

std::vector<std::string> verify_suite_names() {
    return {"oracle", "census", "geometry", "scenarios", "replay", "certificates"};
}

bool SuiteResult::passed() const {
    return std::all_of(cells.begin(), cells.end(), [](const SuiteCell& c) { return c.failures.empty(); });
}

std::size_t SuiteResult::check_count() const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.checks;
    return n;
}

bool VerifySummary::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

VerifySummary run_verify(const VerifyOptions& options) {
    const auto names = verify_suite_names();
    for (const auto& o : options.only) {
        if (std::find(names.begin(), names.end(), o) == names.end()) {
            throw std::invalid_argument("unknown verify suite '" + o + "'");
        }
    }
    auto wanted = [&](const std::string& s) {
        return options.only.empty() || std::find(options.only.begin(), options.only.end(), s) != options.only.end();
    };
    std::vector<std::string> selected;
    for (const auto& s : names) {
        if (wanted(s)) selected.push_back(s);
    }
    std::map<std::string, SuiteResult> suites;
    for (const auto& s : selected) suites[s].name = s;

    if (wanted("oracle")) {
        for (unsigned k : {10u, 20u}) {
            for (long n : {8L, 16L}) {
                for (const auto& pattern : oracle_patterns()) {
                    const OracleDrive d = drive_oracle(k, n, pattern);
                    suites["oracle"].cells.push_back(
                        make_cell("k=" + std::to_string(k) + " N=" + std::to_string(n) + " " + pattern, d.checks));
                }
            }
        }
    }
    if (wanted("certificates")) {
        const BoundsTable table = compute_bounds(Rational(1, 1000000000), {"ko-case1", "ko-case2"});
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            std::vector<CrossCheck> checks;
            const auto& r = table.rows[i];
            record(checks, "exact optimum equals " + r.printed, r.ok, r.exact ? r.value.to_string() : r.error);
            const auto& c = table.certificates[i];
            record(checks, "certificate " + c.statement, c.verified, c.detail);
            suites["certificates"].cells.push_back(make_cell(r.program, checks));
        }
    }
    const bool need_runs = wanted("census") || wanted("geometry") || wanted("scenarios") || wanted("replay");
    if (need_runs) {
        for (const auto& request : verify_matrix(options.confirm_opt)) {
            const bool geometry_only = !wanted("census") && !wanted("scenarios") && !wanted("replay");
            if (geometry_only && request.variant != "sp") continue;
            const std::string name = cell_name(request);
            const CellRun run = run_cell(request);
            if (wanted("census")) suites["census"].cells.push_back(make_cell(name, run.run_checks));
            std::vector<CrossCheck> scenario_checks;
            for (const auto& s : run.scenarios) {
                for (const auto& c : s.checks) scenario_checks.push_back({s.name + ": " + c.name, c.passed, c.detail});
            }
            if (request.variant == "sp") {
                if (wanted("geometry")) suites["geometry"].cells.push_back(make_cell(name, scenario_checks));
            } else if (wanted("scenarios")) {
                suites["scenarios"].cells.push_back(make_cell(name, scenario_checks));
            }
            if (wanted("replay")) {
                const CellRun again = run_cell(request);
                std::vector<CrossCheck> checks;
                record(checks, "second run gives a byte-identical report", run.report.dump() == again.report.dump());
                suites["replay"].cells.push_back(make_cell(name, checks));
            }
        }
    }
    VerifySummary summary;
    for (const auto& s : selected) summary.suites.push_back(std::move(suites[s]));
    return summary;
}

Json verify_json(const VerifySummary& summary) {
    Json j;
    Json suites = Json::array();
    for (const auto& s : summary.suites) {
        Json sj;
        sj["suite"] = s.name;
        sj["cells"] = s.cells.size();
        sj["checks"] = s.check_count();
        sj["passed"] = s.passed();
        Json failures = Json::array();
        for (const auto& c : s.cells) {
            for (const auto& f : c.failures) {
                Json fj;
                fj["cell"] = c.cell;
                fj["check"] = f.name;
                if (!f.detail.empty()) fj["detail"] = f.detail;
                failures.push_back(std::move(fj));
            }
        }
        sj["failures"] = std::move(failures);
        suites.push_back(std::move(sj));
    }
    j["suites"] = std::move(suites);
    j["passed"] = summary.passed();
    return j;
}

std::string verify_csv(const VerifySummary& summary) {
    std::ostringstream os;
    os << "suite,cell,checks,failures\n";
    for (const auto& s : summary.suites) {
        for (const auto& c : s.cells) {
            os << s.name << "," << csv_field(c.cell) << "," << c.checks << "," << c.failures.size() << "\n";
        }
    }
    return os.str();
}

}  // namespace packbound
