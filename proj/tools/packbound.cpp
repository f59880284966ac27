#include "CLI11.hpp"

#include "packbound/harness.hpp"
#include "packbound/variant_ko.hpp"

#include <fstream>
#include <iostream>

using namespace packbound;

namespace {

enum Exit { kOk = 0, kCheckFailed = 2, kInvalidConfig = 3, kSolverFailure = 4 };

struct Output {
    std::string path;
    bool json = false;
    bool csv = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--out", path, "Write the report to this file instead of stdout");
        auto* j = cmd->add_flag("--json", json, "JSON output");
        auto* c = cmd->add_flag("--csv", csv, "CSV output");
        j->excludes(c);
    }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write '" + path + "'");
        out << text;
    }
};

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adversarial lower-bound constructions for online bin packing variants"};
    app.require_subcommand(1);

    std::string tol_text = "1e-9";

    auto* bounds = app.add_subcommand("bounds", "Solve the builtin programs and verify the known-OPT certificates");
    Output bounds_out;
    bounds_out.add_to(bounds);
    bounds->add_option("--tol", tol_text, "Bisection tolerance (rational, decimal or 1e-k)");

    auto* duel = app.add_subcommand("duel", "Run the full adversary against one algorithm");
    DuelRequest request;
    Output duel_out;
    duel_out.add_to(duel);
    duel->add_option("--variant", request.variant, "Problem variant")
        ->required()
        ->check(CLI::IsMember({"ko", "sp", "clcbp"}));
    duel->add_option("--algorithm", request.algorithm, "Registry id of the online algorithm")->required();
    duel->add_option("--m", request.m, "Scale parameter M")->required();
    duel->add_option("--t", request.t, "Colors per bin (clcbp)")->check(CLI::IsMember({2, 3}));
    duel->add_flag("--confirm-opt", request.confirm_opt, "Confirm every 1-D optimum with the exact solver");
    duel->add_flag("--program", request.with_program, "Attach the variant's program table");
    duel->add_option("--tol", tol_text, "Bisection tolerance for --program");

    auto* verify = app.add_subcommand("verify", "Run the invariant suites over the baseline matrix");
    VerifyOptions verify_options;
    Output verify_out;
    verify_out.add_to(verify);
    bool no_confirm = false;
    verify->add_option("--only", verify_options.only, "Restrict to these suites")
        ->check(CLI::IsMember(verify_suite_names()));
    verify->add_flag("--no-confirm-opt", no_confirm, "Skip exact-solver confirmation of optima");

    auto* oracle = app.add_subcommand("oracle", "Exact optimum of an instance file, or an adaptive oracle trace");
    Output oracle_out;
    oracle_out.add_to(oracle);
    std::string instance_path;
    unsigned k = 10;
    long n = 8;
    std::string pattern = "alternating";
    oracle->add_option("instance", instance_path, "1-D instance JSON file");
    oracle->add_option("--k", k, "Oracle base (trace mode)");
    oracle->add_option("--n", n, "Number of values (trace mode)");
    oracle->add_option("--pattern", pattern, "all-small, all-large, alternating or a 1-D algorithm id");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (bounds->parsed()) {
            const BoundsTable table = compute_bounds(parse_tolerance(tol_text));
            for (const auto& r : table.rows) {
                if (!r.error.empty()) {
                    std::cerr << "solver failure on " << r.program << ": " << r.error << "\n";
                    return kSolverFailure;
                }
            }
            if (bounds_out.json) {
                bounds_out.write(pretty(bounds_json(table)));
            } else if (bounds_out.csv) {
                bounds_out.write(bounds_csv(table));
            } else {
                bounds_out.write(bounds_text(table));
            }
            return table.ok() ? kOk : kCheckFailed;
        }
        if (duel->parsed()) {
            request.tol = parse_tolerance(tol_text);
            const DuelOutcome outcome = run_duel(request);
            duel_out.write(duel_out.csv ? duel_csv(outcome) : pretty(outcome.report));
            return outcome.passed ? kOk : kCheckFailed;
        }
        if (verify->parsed()) {
            verify_options.confirm_opt = !no_confirm;
            const VerifySummary summary = run_verify(verify_options);
            verify_out.write(verify_out.csv ? verify_csv(summary) : pretty(verify_json(summary)));
            return summary.passed() ? kOk : kCheckFailed;
        }
        if (oracle->parsed()) {
            if (!instance_path.empty()) {
                bool exact = false;
                oracle_out.write(pretty(oracle_instance_json(instance_path, exact)));
                return exact ? kOk : kSolverFailure;
            }
            const Json trace = oracle_trace_json(k, n, pattern);
            oracle_out.write(pretty(trace));
            return trace.at("passed").get<bool>() ? kOk : kCheckFailed;
        }
    } catch (const VariantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == VariantError::Kind::InvalidConfig ? kInvalidConfig : kCheckFailed;
    } catch (const ContenderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ContenderError::Kind::IllegalPlacement ? kCheckFailed : kInvalidConfig;
    } catch (const OracleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == OracleError::Kind::InvalidConfig ? kInvalidConfig : kSolverFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const MathProgError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kSolverFailure;
    }
    return kOk;
}
