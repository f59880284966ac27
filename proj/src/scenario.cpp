#include "packbound/scenario.hpp"

namespace packbound {

std::string variant_error_name(VariantError::Kind kind) {
    switch (kind) {
        case VariantError::Kind::InvalidConfig: return "InvalidConfig";
        case VariantError::Kind::BadScenario: return "BadScenario";
        case VariantError::Kind::CensusGap: return "CensusGap";
        case VariantError::Kind::ConstructionFailed: return "ConstructionFailed";
    }
    return "Unknown";
}

void record(std::vector<CrossCheck>& checks, std::string name, bool passed, std::string detail) {
    checks.push_back(CrossCheck{std::move(name), passed, std::move(detail)});
}

bool all_passed(const std::vector<CrossCheck>& checks) {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::vector<std::size_t> present_all(AlgorithmSession& session, const std::vector<Item>& items) {
    std::vector<std::size_t> bins;
    bins.reserve(items.size());
    for (const auto& item : items) bins.push_back(session.place(item).bin);
    return bins;
}

bool replays_identically(const AlgorithmSession& session, const std::vector<std::size_t>& bins) {
    const auto& t = session.transcript();
    if (t.size() < bins.size()) return false;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (t[i].placement.bin != bins[i]) return false;
    }
    return true;
}

void check_program_point(std::vector<CrossCheck>& checks, const Program& program,
                         const std::map<std::string, Rational>& point,
                         const std::vector<std::optional<Rational>>& r_for_row, const std::vector<Rational>& slack) {
    const auto& rows = program.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational r = i < r_for_row.size() && r_for_row[i] ? *r_for_row[i] : Rational(0);
        const Rational s = i < slack.size() ? slack[i] : Rational(0);
        std::string detail = program.row_text(rows[i]);
        if (i < r_for_row.size() && r_for_row[i]) detail += " at R=" + r.to_string();
        if (!s.is_zero()) detail += " slack " + s.to_string();
        record(checks, program.id() + " row " + std::to_string(i) + ": " + rows[i].label,
               row_holds(program, rows[i], point, r, s), detail);
    }
}

void check_constructed(std::vector<CrossCheck>& checks, const std::string& what, const Packing& packing,
                       std::size_t expected_items) {
    const auto violations = validate_packing(packing);
    std::string detail;
    if (!violations.empty()) detail = rule_name(violations.front().rule) + ": " + violations.front().detail;
    record(checks, what + " validates", violations.empty(), detail);
    record(checks, what + " packs every item once", packing.item_count() == expected_items,
           std::to_string(packing.item_count()) + " of " + std::to_string(expected_items));
}

Rational ratio_of(std::size_t alg, std::size_t opt) {
    if (opt == 0) return Rational(0);
    return Rational(BigInt(static_cast<unsigned long>(alg)), BigInt(static_cast<unsigned long>(opt)));
}

}  // namespace packbound
