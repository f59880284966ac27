#include "packbound/mathprog.hpp"

#include <algorithm>
#include <sstream>

namespace packbound {

std::string relation_symbol(Relation rel) {
    switch (rel) {
        case Relation::GreaterEq: return ">=";
        case Relation::LessEq: return "<=";
        case Relation::Equal: return "=";
    }
    return "?";
}

Term v(const std::string& var, const Rational& coef) { return Term{var, coef, false}; }
Term rv(const std::string& var, const Rational& coef) { return Term{var, coef, true}; }
Term k(const Rational& coef) { return Term{"", coef, false}; }
Term rk(const Rational& coef) { return Term{"", coef, true}; }

Program::Program(std::string id, std::vector<std::string> variables)
    : id_(std::move(id)), variables_(std::move(variables)) {}

std::size_t Program::index_of(const std::string& var) const {
    auto it = std::find(variables_.begin(), variables_.end(), var);
    if (it == variables_.end()) {
        throw MathProgError(MathProgError::Kind::UnknownVariable, "program " + id_ + " has no variable '" + var + "'");
    }
    return static_cast<std::size_t>(it - variables_.begin());
}

Row Program::make_row(const std::string& label, const std::vector<Term>& lhs, Relation rel,
                      const std::vector<Term>& rhs) const {
    Row row;
    row.label = label;
    row.rel = rel;
    row.coeffs.assign(variables_.size(), Affine{});
    auto accumulate = [&](const Term& t, int side) {
        // Variables gather on the left, constants on the right.
        const Rational sign = side;
        if (t.var.empty()) {
            Affine& a = row.constant;
            (t.times_r ? a.d : a.c) -= sign * t.coef;
        } else {
            Affine& a = row.coeffs[index_of(t.var)];
            (t.times_r ? a.d : a.c) += sign * t.coef;
        }
    };
    for (const auto& t : lhs) accumulate(t, 1);
    for (const auto& t : rhs) accumulate(t, -1);
    return row;
}

Program& Program::add(const std::string& label, const std::vector<Term>& lhs, Relation rel,
                      const std::vector<Term>& rhs) {
    rows_.push_back(make_row(label, lhs, rel, rhs));
    return *this;
}

Program Program::with_row(const Row& row) const {
    if (row.coeffs.size() != variables_.size()) {
        throw MathProgError(MathProgError::Kind::BadCertificate, "row width does not match program " + id_);
    }
    Program out = *this;
    out.rows_.push_back(row);
    return out;
}

bool Program::linear_in_r() const {
    for (const auto& row : rows_) {
        for (const auto& a : row.coeffs) {
            if (!a.d.is_zero()) return false;
        }
    }
    return true;
}

namespace {

std::string coef_text(const Rational& c, bool first) {
    std::string sign = c.sign() < 0 ? "-" : (first ? "" : "+");
    const Rational mag = c.abs();
    std::string body = mag.is_integer() ? mag.numerator().get_str() : mag.to_string();
    return sign + body;
}

void append_affine_term(std::ostringstream& os, bool& first, const Affine& a, const std::string& var) {
    auto emit = [&](const Rational& c, const std::string& factor) {
        if (c.is_zero()) return;
        if (!first) os << ' ';
        const bool unit = c.abs() == Rational(1) && !factor.empty();
        if (unit) {
            os << (c.sign() < 0 ? "-" : (first ? "" : "+")) << factor;
        } else {
            os << coef_text(c, first) << factor;
        }
        first = false;
    };
    emit(a.c, var);
    emit(a.d, var.empty() ? "R" : "R*" + var);
}

}  // namespace

std::string Program::row_text(const Row& row) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < variables_.size(); ++j) append_affine_term(os, first, row.coeffs[j], variables_[j]);
    if (first) os << '0';
    os << ' ' << relation_symbol(row.rel) << ' ';
    bool rfirst = true;
    append_affine_term(os, rfirst, row.constant, "");
    if (rfirst) os << '0';
    return os.str();
}

// ---------------------------------------------------------------------------
// Builtin programs

namespace {

const Relation GE = Relation::GreaterEq;
const Relation LE = Relation::LessEq;
const Relation EQ = Relation::Equal;

Program ko_common(const std::string& id) {
    Program p(id, {"y7", "y3", "x60", "x30", "x20", "x10", "x41", "x11", "x12", "x22", "x01", "x02"});
    p.add("T-items: x41+x11+2x12+2x22+x01+2x02 = 1",
          {v("x41"), v("x11"), v("x12", 2), v("x22", 2), v("x01"), v("x02", 2)}, EQ, {k(1)});
    p.add("S-items: 6x60+3x30+2x20+x10+4x41+x11+x12+2x22 >= 1",
          {v("x60", 6), v("x30", 3), v("x20", 2), v("x10"), v("x41", 4), v("x11"), v("x12"), v("x22", 2)}, GE, {k(1)});
    p.add("definition of y7",
          {v("y7"), v("x60", -1), v("x30", -1), v("x20", -1), v("x10", -1), v("x41", -1), v("x11", -1), v("x12", -1),
           v("x22", -1)},
          EQ, {k(0)});
    p.add("definition of y3", {v("y3"), v("x01", -1), v("x02", -1)}, EQ, {k(0)});
    p.add("scenario 1 (size 4/5)", {rk(1), v("x60", -1), v("x30", -1), v("x20", -1), v("x41", -1), v("x22", -1)}, GE,
          {k(1)});
    p.add("scenario 2 (size 6/7-gamma1)", {rk(6), v("y7", -5)}, GE, {k(6)});
    p.add("scenario 3 (size 1)", {rk(2), v("y7", -2), v("y3", -2)}, GE, {k(1)});
    p.add("scenario 4 (size 13/25)", {rk(1), v("x60", -1), v("x41", -1), v("x22", -1), v("x12", -1), v("x02", -1)},
          GE, {k(1)});
    return p;
}

Program ko_case1() {
    Program p = ko_common("ko-case1");
    p.add("case y3 <= 1/2", {v("y3")}, LE, {k(Rational(1, 2))});
    p.add("scenario 5, 3M/4 items", {rk(4), v("y7", -4), v("y3", -4), v("x20", 4), v("x10", 4)}, GE, {k(3)});
    return p;
}

Program ko_case2() {
    Program p = ko_common("ko-case2");
    p.add("case y3 >= 1/2", {v("y3")}, GE, {k(Rational(1, 2))});
    p.add("scenario 5, M-ceil(Y3/2) items", {rk(2), v("y7", -2), v("y3", -1), v("x20", 2), v("x10", 2)}, GE, {k(2)});
    return p;
}

Program sp_program() {
    Program p("sp", {"y4", "y3", "s3", "l3", "x90", "x50", "x81", "x41", "x72", "x42", "x32", "x63", "x43", "x23",
                     "x54", "x44", "x14", "x03", "x04"});
    p.add("stopping rule: 8s3+15l3 = 12", {v("s3", 8), v("l3", 15)}, EQ, {k(12)});
    p.add("definition of y4",
          {v("y4"), v("x90", -1), v("x50", -1), v("x81", -1), v("x41", -1), v("x72", -1), v("x42", -1), v("x32", -1),
           v("x63", -1), v("x43", -1), v("x23", -1), v("x54", -1), v("x44", -1), v("x14", -1)},
          EQ, {k(0)});
    p.add("definition of y3", {v("y3"), v("x03", -1), v("x04", -1)}, EQ, {k(0)});
    p.add("T-items: sum j*x_ij >= s3+l3",
          {v("x81"), v("x41"), v("x72", 2), v("x42", 2), v("x32", 2), v("x63", 3), v("x43", 3), v("x23", 3), v("x44", 4),
           v("x54", 4), v("x14", 4), v("x03", 3), v("x04", 4)},
          GE, {v("l3"), v("s3")});
    p.add("large T-items: one per bin",
          {v("x41"), v("x42"), v("x32"), v("x43"), v("x23"), v("x44"), v("x14"), v("x03"), v("x04")}, EQ, {v("l3")});
    p.add("F-items: sum i*x_ij >= 1",
          {v("x90", 9), v("x50", 5), v("x81", 8), v("x41", 4), v("x72", 7), v("x42", 4), v("x32", 3), v("x63", 6),
           v("x43", 4), v("x23", 2), v("x54", 5), v("x44", 4), v("x14", 1)},
          GE, {k(1)});
    p.add("scenario 1: 9+36y4 <= R(9-4y4)", {k(9), v("y4", 36)}, LE, {rk(9), rv("y4", -4)});
    p.add("scenario 2 (size 3/5)",
          {v("y4"), v("y3"), v("x50", -1), v("x41", -1), v("x32", -1), v("x23", -1), v("x03", -1),
           v("s3", Rational(1, 3)), v("l3", Rational(1, 3))},
          LE, {rv("s3", Rational(7, 27)), rv("l3", Rational(7, 27)), rk(Rational(1, 9))});
    p.add("scenario 3 (size 2/3-gamma2)", {v("y4"), v("y3"), v("x50", -1), v("s3", Rational(1, 3))}, LE,
          {rv("s3", Rational(1, 3)), rv("l3", Rational(1, 4))});
    return p;
}

Program clcbp2_common(const std::string& id) {
    Program p(id, {"x1", "x2", "z1", "z2"});
    p.add("x1 <= 2x2", {v("x1")}, LE, {v("x2", 2)});
    p.add("huge items: x1+x2+1 <= R", {v("x1"), v("x2"), k(1)}, LE, {rk(1)});
    p.add("halves: x2+z1+2z2 <= R(z1+z2)", {v("x2"), v("z1"), v("z2", 2)}, LE, {rv("z1"), rv("z2")});
    p.add("z2 <= z1", {v("z2")}, LE, {v("z1")});
    p.add("E-items: x1+2x2 = 1", {v("x1"), v("x2", 2)}, EQ, {k(1)});
    return p;
}

Program clcbp2_case1() {
    Program p = clcbp2_common("clcbp2-case1");
    p.add("case x2 >= x1", {v("x2")}, GE, {v("x1")});
    p.add("T-count: z1+z2 = 2x2", {v("z2"), v("z1"), v("x2", -2)}, EQ, {k(0)});
    p.add("two-thirds: x2+z1+z2 <= R(z1/2+z2+x2/2)", {v("x2"), v("z1"), v("z2")}, LE,
          {rv("z1", Rational(1, 2)), rv("z2"), rv("x2", Rational(1, 2))});
    return p;
}

Program clcbp2_case2() {
    Program p = clcbp2_common("clcbp2-case2");
    p.add("case x1 >= x2", {v("x1")}, GE, {v("x2")});
    p.add("T-count: z1+z2 = 2x1", {v("z2"), v("z1"), v("x1", -2)}, EQ, {k(0)});
    p.add("two-thirds: x2+z1+z2 <= R(z1/2+z2+x2-x1/2)", {v("x2"), v("z1"), v("z2")}, LE,
          {rv("z1", Rational(1, 2)), rv("z2"), rv("x2"), rv("x1", Rational(-1, 2))});
    return p;
}

Program clcbp3_common(const std::string& id) {
    Program p(id, {"x1", "x2", "x3", "x", "z1", "z2"});
    p.add("E-items: x1+2x2+3x3 = 1", {v("x1"), v("x2", 2), v("x3", 3)}, EQ, {k(1)});
    p.add("x = x1+x2+x3", {v("x")}, EQ, {v("x1"), v("x2"), v("x3")});
    p.add("huge items: 1+2x <= R", {k(1), v("x", 2)}, LE, {rk(1)});
    p.add("z2 <= z1", {v("z2")}, LE, {v("z1")});
    p.add("two-thirds: x3+z1+z2 <= R(z1+2z2)/2", {v("x3"), v("z1"), v("z2")}, LE,
          {rv("z1", Rational(1, 2)), rv("z2")});
    p.add("halves: x3+z1+2z2 <= R(z1+z2)", {v("x3"), v("z1"), v("z2", 2)}, LE, {rv("z1"), rv("z2")});
    return p;
}

Program clcbp3_case1() {
    Program p = clcbp3_common("clcbp3-case1");
    p.add("z1+z2+6x3 >= 2", {v("z1"), v("z2"), v("x3", 6)}, GE, {k(2)});
    p.add("2z1+3z2-6x3 = 0", {v("z1", 2), v("z2", 3), v("x3", -6)}, EQ, {k(0)});
    return p;
}

Program clcbp3_case2() {
    Program p = clcbp3_common("clcbp3-case2");
    p.add("z1+z2+6x3 <= 2", {v("z1"), v("z2"), v("x3", 6)}, LE, {k(2)});
    p.add("3z1+4z2 = 2", {v("z1", 3), v("z2", 4)}, EQ, {k(2)});
    return p;
}

}  // namespace

std::vector<std::string> builtin_program_ids() {
    return {"ko-case1", "ko-case2", "sp", "clcbp2-case1", "clcbp2-case2", "clcbp3-case1", "clcbp3-case2"};
}

Program builtin_program(const std::string& id) {
    if (id == "ko-case1") return ko_case1();
    if (id == "ko-case2") return ko_case2();
    if (id == "sp") return sp_program();
    if (id == "clcbp2-case1") return clcbp2_case1();
    if (id == "clcbp2-case2") return clcbp2_case2();
    if (id == "clcbp3-case1") return clcbp3_case1();
    if (id == "clcbp3-case2") return clcbp3_case2();
    throw MathProgError(MathProgError::Kind::UnknownProgram, "unknown program '" + id + "'");
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

using Matrix = std::vector<std::vector<Rational>>;

enum class PivotOutcome { Optimal, Unbounded };

void pivot(Matrix& t, std::vector<std::size_t>& basis, std::size_t row, std::size_t col) {
    const std::size_t width = t[row].size();
    const Rational p = t[row][col];
    for (std::size_t j = 0; j < width; ++j) t[row][j] /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i == row || t[i][col].is_zero()) continue;
        const Rational f = t[i][col];
        for (std::size_t j = 0; j < width; ++j) {
            if (!t[row][j].is_zero()) t[i][j] -= f * t[row][j];
        }
    }
    basis[row] = col;
}

PivotOutcome run_simplex(Matrix& t, std::vector<std::size_t>& basis, const std::vector<Rational>& cost,
                         const std::vector<bool>& allowed) {
    const std::size_t cols = cost.size();
    while (true) {
        // Bland: the lowest-index improving column enters.
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < cols && !enter; ++j) {
            if (!allowed[j]) continue;
            if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
            Rational reduced = cost[j];
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (!t[i][j].is_zero()) reduced -= cost[basis[i]] * t[i][j];
            }
            if (reduced.sign() < 0) enter = j;
        }
        if (!enter) return PivotOutcome::Optimal;
        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i][*enter].sign() <= 0) continue;
            const Rational ratio = t[i][cols] / t[i][*enter];
            if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave) return PivotOutcome::Unbounded;
        pivot(t, basis, *leave, *enter);
    }
}

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Relation>& rel,
                  const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    std::vector<Relation> r = rel;
    Matrix rows = a;
    std::vector<Rational> rhs = b;
    for (std::size_t i = 0; i < m; ++i) {
        if (rhs[i].sign() < 0) {
            for (auto& x : rows[i]) x = -x;
            rhs[i] = -rhs[i];
            if (r[i] == Relation::GreaterEq) {
                r[i] = Relation::LessEq;
            } else if (r[i] == Relation::LessEq) {
                r[i] = Relation::GreaterEq;
            }
        }
    }
    std::size_t slack_count = 0;
    std::size_t art_count = 0;
    for (auto x : r) {
        if (x != Relation::Equal) ++slack_count;
        if (x != Relation::LessEq) ++art_count;
    }
    const std::size_t total = n + slack_count + art_count;
    Matrix t(m, std::vector<Rational>(total + 1));
    std::vector<std::size_t> basis(m);
    std::vector<bool> artificial(total, false);
    std::size_t next_slack = n;
    std::size_t next_art = n + slack_count;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
        t[i][total] = rhs[i];
        if (r[i] == Relation::LessEq) {
            t[i][next_slack] = 1;
            basis[i] = next_slack++;
        } else {
            if (r[i] == Relation::GreaterEq) t[i][next_slack++] = -1;
            t[i][next_art] = 1;
            artificial[next_art] = true;
            basis[i] = next_art++;
        }
    }

    std::vector<bool> all(total, true);
    if (art_count > 0) {
        std::vector<Rational> phase1(total);
        for (std::size_t j = 0; j < total; ++j) {
            if (artificial[j]) phase1[j] = 1;
        }
        run_simplex(t, basis, phase1, all);
        Rational infeas;
        for (std::size_t i = 0; i < m; ++i) {
            if (artificial[basis[i]]) infeas += t[i][total];
        }
        if (infeas.sign() > 0) return LpResult{LpStatus::Infeasible, Rational(0), {}};
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            for (std::size_t j = 0; j < total; ++j) {
                if (!artificial[j] && !t[i][j].is_zero()) {
                    pivot(t, basis, i, j);
                    break;
                }
            }
        }
    }

    std::vector<Rational> phase2(total);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    std::vector<bool> allowed(total);
    for (std::size_t j = 0; j < total; ++j) allowed[j] = !artificial[j];
    if (run_simplex(t, basis, phase2, allowed) == PivotOutcome::Unbounded) {
        return LpResult{LpStatus::Unbounded, Rational(0), {}};
    }
    LpResult out;
    out.status = LpStatus::Optimal;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) out.x[basis[i]] = t[i][total];
    }
    for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
    return out;
}

namespace {

LpResult solve_r_lp(const Program& program) {
    if (!program.linear_in_r()) {
        throw MathProgError(MathProgError::Kind::NotLinearInR,
                            "program " + program.id() + " has bilinear rows; use bisection");
    }
    const std::size_t n = program.variables().size();
    std::vector<std::vector<Rational>> a;
    std::vector<Relation> rel;
    std::vector<Rational> b;
    for (const auto& row : program.rows()) {
        std::vector<Rational> line(n + 1);
        for (std::size_t j = 0; j < n; ++j) line[j] = row.coeffs[j].c;
        line[n] = -row.constant.d;
        a.push_back(std::move(line));
        rel.push_back(row.rel);
        b.push_back(row.constant.c);
    }
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    LpResult res = solve_lp(a, rel, b, c);
    if (res.status == LpStatus::Infeasible) {
        throw MathProgError(MathProgError::Kind::Infeasible, "program " + program.id() + " is infeasible");
    }
    if (res.status == LpStatus::Unbounded) {
        throw MathProgError(MathProgError::Kind::Unbounded, "program " + program.id() + " is unbounded");
    }
    return res;
}

}  // namespace

Rational solve_min_r_exact(const Program& program) { return solve_r_lp(program).value; }

std::vector<Rational> argmin_r_exact(const Program& program) { return solve_r_lp(program).x; }

bool feasible_at(const Program& program, const Rational& r0) {
    const std::size_t n = program.variables().size();
    std::vector<std::vector<Rational>> a;
    std::vector<Relation> rel;
    std::vector<Rational> b;
    for (const auto& row : program.rows()) {
        std::vector<Rational> line(n);
        for (std::size_t j = 0; j < n; ++j) line[j] = row.coeffs[j].at(r0);
        a.push_back(std::move(line));
        rel.push_back(row.rel);
        b.push_back(row.constant.at(r0));
    }
    return solve_lp(a, rel, b, std::vector<Rational>(n)).status != LpStatus::Infeasible;
}

Bracket bisect_min_r(const Program& program, const Rational& tol) {
    if (tol.sign() <= 0) throw std::invalid_argument("bisection tolerance must be positive");
    Bracket out;
    const int points = 32;
    std::optional<int> first_feasible;
    for (int i = 0; i < points; ++i) {
        const Rational r = Rational(1) + Rational(2 * i, points - 1);
        const bool ok = feasible_at(program, r);
        out.grid.push_back(ok);
        if (ok && !first_feasible) first_feasible = i;
        if (!ok && first_feasible) {
            throw MathProgError(MathProgError::Kind::NonMonotoneDetected,
                                "program " + program.id() + " is feasible at grid point " +
                                    std::to_string(*first_feasible) + " but not at " + std::to_string(i));
        }
    }
    if (!first_feasible) {
        throw MathProgError(MathProgError::Kind::NoUpperBound, "program " + program.id() + " is infeasible at R = 3");
    }
    if (*first_feasible == 0) {
        throw MathProgError(MathProgError::Kind::NoLowerBound, "program " + program.id() + " is feasible at R = 1");
    }
    out.lo = Rational(1) + Rational(2 * (*first_feasible - 1), points - 1);
    out.hi = Rational(1) + Rational(2 * (*first_feasible), points - 1);
    while (out.hi - out.lo > tol) {
        const Rational mid = (out.lo + out.hi) / Rational(2);
        if (feasible_at(program, mid)) {
            out.hi = mid;
        } else {
            out.lo = mid;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

OrientedRow orient(const Row& row) {
    OrientedRow out;
    out.equality = row.rel == Relation::Equal;
    const Rational sign = row.rel == Relation::LessEq ? Rational(-1) : Rational(1);
    for (const auto& a : row.coeffs) out.coeffs.push_back(Affine{sign * a.c, sign * a.d});
    out.constant = Affine{-sign * row.constant.c, -sign * row.constant.d};
    return out;
}

bool same_expression(const OrientedRow& a, const OrientedRow& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant && a.equality == b.equality;
}

Row check_certificate(const Program& program, const Certificate& certificate) {
    const auto& rows = program.rows();
    if (certificate.multipliers.size() != rows.size()) {
        throw MathProgError(MathProgError::Kind::BadCertificate,
                            "certificate has " + std::to_string(certificate.multipliers.size()) +
                                " multipliers for " + std::to_string(rows.size()) + " rows");
    }
    const std::size_t n = program.variables().size();
    OrientedRow sum;
    sum.coeffs.assign(n, Affine{});
    sum.equality = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational& lambda = certificate.multipliers[i];
        if (lambda.is_zero()) continue;
        if (rows[i].rel != Relation::Equal && lambda.sign() < 0) {
            throw MathProgError(MathProgError::Kind::SignViolation,
                                "negative multiplier on inequality row '" + rows[i].label + "'");
        }
        const OrientedRow o = orient(rows[i]);
        if (!o.equality) sum.equality = false;
        for (std::size_t j = 0; j < n; ++j) {
            sum.coeffs[j].c += lambda * o.coeffs[j].c;
            sum.coeffs[j].d += lambda * o.coeffs[j].d;
        }
        sum.constant.c += lambda * o.constant.c;
        sum.constant.d += lambda * o.constant.d;
    }
    Row derived;
    derived.label = "derived";
    derived.rel = sum.equality ? Relation::Equal : Relation::GreaterEq;
    derived.coeffs = sum.coeffs;
    derived.constant = Affine{-sum.constant.c, -sum.constant.d};
    if (certificate.target) {
        const OrientedRow want = orient(*certificate.target);
        if (!same_expression(orient(derived), want)) {
            throw MathProgError(MathProgError::Kind::MismatchedTarget,
                                "derived row '" + program.row_text(derived) + "' differs from target '" +
                                    program.row_text(*certificate.target) + "'");
        }
    }
    return derived;
}

bool row_holds(const Program& program, const Row& row, const std::map<std::string, Rational>& point, const Rational& r,
               const Rational& slack) {
    Rational lhs;
    for (const auto& [name, value] : point) {
        const std::size_t j = program.index_of(name);
        lhs += row.coeffs[j].at(r) * value;
    }
    const Rational rhs = row.constant.at(r);
    switch (row.rel) {
        case Relation::GreaterEq: return lhs + slack >= rhs;
        case Relation::LessEq: return lhs <= rhs + slack;
        case Relation::Equal: return (lhs - rhs).abs() <= slack;
    }
    return false;
}

Certificate ko_combined_certificate(const Program& ko) {
    Certificate c;
    c.multipliers.assign(ko.rows().size(), Rational(0));
    c.multipliers[0] = 2;
    c.multipliers[1] = 1;
    c.multipliers[2] = 3;
    c.multipliers[3] = 2;
    c.multipliers[4] = 1;
    c.target = ko.make_row("combined S/T row",
                           {v("x60", 2), v("x41", 2), v("x12", 2), v("x02", 2), v("x22", 2), v("x10", -2),
                            v("x30", -1), v("x20", -2), v("y7", 3), v("y3", 2), rk(1)},
                           Relation::GreaterEq, {k(4)});
    return c;
}

KnownOptProof known_opt_proof(const std::string& id) {
    const Program base = builtin_program(id);
    if (id != "ko-case1" && id != "ko-case2") {
        throw MathProgError(MathProgError::Kind::UnknownProgram, "no known-OPT proof for program " + id);
    }
    KnownOptProof proof;
    proof.program = base.with_row(check_certificate(base, ko_combined_certificate(base)));
    Certificate& c = proof.certificate;
    c.multipliers.assign(proof.program.rows().size(), Rational(0));
    if (id == "ko-case1") {
        c.multipliers[5] = 2;
        c.multipliers[7] = 20;
        c.multipliers[9] = 5;
        c.multipliers[10] = 10;
        c.target = proof.program.make_row("62R - 10x30 >= 87", {rk(62), v("x30", -10)}, Relation::GreaterEq, {k(87)});
        proof.bound = Rational(87, 62);
    } else {
        c.multipliers[6] = 1;
        c.multipliers[7] = 4;
        c.multipliers[9] = 2;
        c.multipliers[10] = 2;
        c.target = proof.program.make_row("12R - 2x30 >= 17", {rk(12), v("x30", -2)}, Relation::GreaterEq, {k(17)});
        proof.bound = Rational(17, 12);
    }
    return proof;
}

}  // namespace packbound
