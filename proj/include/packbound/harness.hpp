#pragma once

#include "packbound/adaptive_oracle.hpp"
#include "packbound/instance_io.hpp"
#include "packbound/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace packbound {

/// Exact value with a 12-digit round-half-even rendering marked display only.
Json exact_json(const Rational& value);
Json checks_json(const std::vector<CrossCheck>& checks);
Json scenario_json(const ScenarioResult& scenario);

/// Accepts "num/den", plain decimals and decimal exponents such as "1e-9".
Rational parse_tolerance(const std::string& text);

// Program table

struct BoundRow {
    std::string program;
    std::string printed;
    bool exact = false;  // linear in R, solved exactly
    Rational value;      // exact optimum
    Rational lo;         // bisection bracket
    Rational hi;
    Rational allowance;  // permitted distance between printed value and bracket
    bool ok = false;
    std::string error;
};

struct CertificateRow {
    std::string program;
    std::string statement;
    bool verified = false;
    std::string detail;
};

struct BoundsTable {
    Rational tol;
    std::vector<BoundRow> rows;
    std::vector<CertificateRow> certificates;

    bool ok() const;
};

/// Value printed for a builtin program ("87/62", "1.751544578513", ...).
std::string printed_bound(const std::string& program);

/// Solves the listed programs (all builtin ones when empty) and, for the
/// known-OPT programs, verifies both certificates.
BoundsTable compute_bounds(const Rational& tol, const std::vector<std::string>& programs = {});
Json bounds_json(const BoundsTable& table);
std::string bounds_text(const BoundsTable& table);
std::string bounds_csv(const BoundsTable& table);

// Duel

struct DuelRequest {
    std::string variant;  // ko, sp, clcbp
    std::string algorithm;
    long m = 0;
    int t = 2;
    bool confirm_opt = false;  // exact solver on every 1-D optimum
    bool with_program = false;
    Rational tol = Rational(1, 1000000000);
};

struct DuelOutcome {
    Json report;
    std::vector<ScenarioResult> scenarios;
    bool passed = false;
};

/// Throws VariantError::InvalidConfig for an unknown variant or a bad M.
DuelOutcome run_duel(const DuelRequest& request);
std::string duel_csv(const DuelOutcome& outcome);

// Oracle

/// Pattern "all-small", "all-large", "alternating", or a 1-D registry id whose
/// placements decide the condition ("placed into an existing bin").
std::vector<std::string> oracle_patterns();
struct OracleDrive {
    std::vector<ExactNumber> values;
    std::vector<bool> small;
    Separator separator;
    std::vector<std::string> trace;
    std::vector<CrossCheck> checks;  // separation and protocol properties
};
OracleDrive drive_oracle(unsigned k, long n, const std::string& pattern);
Json oracle_trace_json(unsigned k, long n, const std::string& pattern);
/// Exact optimum of a 1-D instance file with its witness packing.
Json oracle_instance_json(const std::string& path, bool& exact);

// Verify

std::vector<std::string> verify_suite_names();

struct SuiteCell {
    std::string cell;
    std::size_t checks = 0;
    std::vector<CrossCheck> failures;
};

struct SuiteResult {
    std::string name;
    std::vector<SuiteCell> cells;

    bool passed() const;
    std::size_t check_count() const;
};

struct VerifyOptions {
    std::vector<std::string> only;  // empty: every suite
    bool confirm_opt = true;
};

struct VerifySummary {
    std::vector<SuiteResult> suites;

    bool passed() const;
};

/// Throws std::invalid_argument for an unknown suite name.
VerifySummary run_verify(const VerifyOptions& options);
Json verify_json(const VerifySummary& summary);
std::string verify_csv(const VerifySummary& summary);

}  // namespace packbound
