#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibercheck/fiber.hpp"

namespace fibercheck {

struct FibrationModel {
    std::string name;
    long g = 1;  // fiber genus
    long b = 0;  // base genus
    long q = 0;
    long p_g = 0;
    std::optional<long> c1_sq;
    std::optional<long> c2;
    std::optional<long> h11;
    bool semistable = false;
    bool trivial = false;
    /// Singular fibers (smooth ones may be listed and are ignored in the counts).
    std::vector<FiberModel> fibers;

    long q_f() const { return q - b; }
    long chi_O() const { return 1 - q + p_g; }
};

struct RelativeTriple {
    long chi_f = 0;
    long K_f_sq = 0;
    long e_f = 0;
};

struct S1Classification {
    long s = 0;
    long s1 = 0;
    std::vector<std::size_t> s1_indices;
};

struct RelativeInvariants {
    long chi_f = 0;
    long K_f_sq = 0;
    long e_f = 0;
    long h11 = 0;  // value used by the audit (supplied when present)
    long h11_computed = 0;
    long s = 0;
    long s1 = 0;
    std::vector<std::string> s1_list;
};

struct BalanceResult {
    Rational lhs;
    Rational rhs;
    Rational residual;
};

/// One line of the audit. Inequalities read lhs <= rhs (lhs < rhs when strict);
/// identities read lhs = rhs. margin = rhs - lhs in both cases.
struct RuleEntry {
    std::string id;
    std::string statement;
    bool applicable = false;
    bool identity = false;
    bool strict = false;
    Rational lhs;
    Rational rhs;
    Rational margin;
    bool passed = true;
    std::string note;
};

enum class ConditionStatus { Verified, Violated, NotRequired };

std::string_view to_string(ConditionStatus s);

struct RationalBaseDiagnosis {
    long s1 = 0;
    bool s1_bound_holds = false;
    ConditionStatus cond_pg_genus = ConditionStatus::NotRequired;
    ConditionStatus cond_h11 = ConditionStatus::NotRequired;
    ConditionStatus cond_q = ConditionStatus::NotRequired;
    BalanceResult balance;  // (g - q)(s1 - 4)/2 against its right side
};

struct FiberReport {
    std::string name;
    std::optional<FiberInvariants> invariants;
    std::optional<ChiTopCheck> chi_top;
    bool semistable = false;
    std::string error;
    std::vector<std::string> warnings;
};

struct AuditOptions {
    bool strict_extras = false;
    ResolutionOptions resolution;
};

struct AuditReport {
    std::string name;
    long g = 0, b = 0, q = 0, p_g = 0, q_f = 0, chi_O = 0, c1_sq = 0, c2 = 0;
    bool semistable = false;
    bool trivial = false;
    RelativeInvariants relative;
    std::vector<FiberReport> fibers;
    BalanceResult balance;
    std::vector<RuleEntry> rules;
    std::optional<RationalBaseDiagnosis> rational_base;
    std::vector<std::string> warnings;
    std::vector<std::string> errors;  // fatal inconsistencies that stopped the audit early

    bool consistent() const;
};

RelativeTriple relative_invariants(long g, long b, long chiO, long c1_sq, long c2);

long hodge_h11(long e_f, long q, long p_g, long g, long b);

S1Classification classify_s1(const std::vector<FiberInvariants>& fibers, long g);

/// Both sides of 2 chi_f = (g - q_f)(2b - 2 + s1) - sum_{s1}(g(F) - q_f)
///   - (h11 - 2 q_f b - 2 - sum (l(F) - 1)) + sum_{s1} N_bar.
BalanceResult h11_balance(long g, long b, long q_f, long chi_f, long h11,
                                const std::vector<FiberInvariants>& fibers);

/// Diagnosis for semistable non-trivial families over P^1. Throws NotApplicable otherwise.
RationalBaseDiagnosis rational_base_diagnosis(const FibrationModel& model, const std::vector<FiberInvariants>& fibers,
                                            long h11);

/// Runs the complete audit. Inconsistent data never throw; they show up as
/// failed rules or entries in `errors`. Malformed input still throws.
AuditReport inequality_audit(const FibrationModel& model, const AuditOptions& opts = {});

/// Stable list of rule ids in report order.
const std::vector<std::string>& audit_rule_ids();

}  // namespace fibercheck
