#pragma once

#include "packbound/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace packbound {

enum class Relation { GreaterEq, LessEq, Equal };

std::string relation_symbol(Relation rel);

/// c + d * R
struct Affine {
    Rational c;
    Rational d;

    bool is_zero() const { return c.is_zero() && d.is_zero(); }
    Rational at(const Rational& r) const { return c + d * r; }
    friend bool operator==(const Affine&, const Affine&) = default;
};

/// sum_j (c_j + d_j R) v_j  rel  c0 + d0 R
struct Row {
    std::string label;
    std::vector<Affine> coeffs;
    Affine constant;
    Relation rel = Relation::GreaterEq;
};

/// One summand when writing a row: coef * [R] * var, or a constant when var is empty.
struct Term {
    std::string var;
    Rational coef;
    bool times_r = false;
};

Term v(const std::string& var, const Rational& coef = Rational(1));
Term rv(const std::string& var, const Rational& coef = Rational(1));
Term k(const Rational& coef);
Term rk(const Rational& coef);

class MathProgError : public std::runtime_error {
public:
    enum class Kind {
        UnknownProgram,
        UnknownVariable,
        Unbounded,
        Infeasible,
        NotLinearInR,
        NonMonotoneDetected,
        NoUpperBound,
        NoLowerBound,
        SignViolation,
        MismatchedTarget,
        BadCertificate,
    };
    MathProgError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Minimise R over nonnegative variables subject to the rows. R is a formal
/// parameter and never appears in `variables`.
class Program {
public:
    Program() = default;
    Program(std::string id, std::vector<std::string> variables);

    const std::string& id() const { return id_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t variable_count_with_r() const { return variables_.size() + 1; }
    std::size_t index_of(const std::string& var) const;

    /// Adds lhs rel rhs, normalised to sum (c_j + d_j R) v_j rel c0 + d0 R.
    Program& add(const std::string& label, const std::vector<Term>& lhs, Relation rel, const std::vector<Term>& rhs);
    Row make_row(const std::string& label, const std::vector<Term>& lhs, Relation rel,
                 const std::vector<Term>& rhs) const;
    /// Copy with one more row (used to compose certificates from derived rows).
    Program with_row(const Row& row) const;

    bool linear_in_r() const;
    std::string row_text(const Row& row) const;

private:
    std::string id_;
    std::vector<std::string> variables_;
    std::vector<Row> rows_;
};

std::vector<std::string> builtin_program_ids();
Program builtin_program(const std::string& id);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

/// Dense two-phase simplex over exact rationals with Bland's rule:
/// minimise c.x subject to A x rel b, x >= 0.
LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Relation>& rel,
                  const std::vector<Rational>& b, const std::vector<Rational>& c);

/// Exact minimum of R. Requires every row to be linear in R (d_j = 0).
Rational solve_min_r_exact(const Program& program);
/// Minimiser of the LP behind solve_min_r_exact: values per variable plus R last.
std::vector<Rational> argmin_r_exact(const Program& program);

bool feasible_at(const Program& program, const Rational& r0);

struct Bracket {
    Rational lo;
    Rational hi;
    std::vector<bool> grid;  // feasibility at 1 + 2i/31, i = 0..31
};

/// Bisection on R with a 32-point monotonicity guard on [1, 3].
Bracket bisect_min_r(const Program& program, const Rational& tol);

/// Row oriented as  E(v, R) >= 0  (or = 0), E = lhs - rhs.
struct OrientedRow {
    std::vector<Affine> coeffs;
    Affine constant;  // E = sum coeffs_j v_j + constant
    bool equality = false;
};

OrientedRow orient(const Row& row);
bool same_expression(const OrientedRow& a, const OrientedRow& b);

struct Certificate {
    std::vector<Rational> multipliers;  // one per program row
    std::optional<Row> target;
};

/// Weighted sum of the program rows. Throws SignViolation for a negative
/// multiplier on an inequality row and MismatchedTarget if a target is given
/// and differs from the derived row.
Row check_certificate(const Program& program, const Certificate& certificate);

/// Evaluates a row at a point (missing variables count as 0) with R fixed,
/// allowing the given slack toward satisfaction.
bool row_holds(const Program& program, const Row& row, const std::map<std::string, Rational>& point, const Rational& r,
               const Rational& slack = Rational(0));

/// Multipliers over the first five known-OPT rows giving
/// 2x60+2x41+2x12+2x02+2x22-2x10-x30-2x20+3y7+2y3+R >= 4.
Certificate ko_combined_certificate(const Program& ko);

/// A known-OPT program with the combined row appended, and the multipliers
/// that derive  a R - b x30 >= c  from it.
struct KnownOptProof {
    Program program;
    Certificate certificate;
    Rational bound;  // c / a
};

/// Proof for "ko-case1" (62R - 10x30 >= 87) or "ko-case2" (12R - 2x30 >= 17).
KnownOptProof known_opt_proof(const std::string& id);

}  // namespace packbound
