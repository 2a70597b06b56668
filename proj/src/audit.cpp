#include "fibercheck/audit.hpp"

#include <algorithm>
#include <cstdlib>

#include "fibercheck/errors.hpp"

namespace fibercheck {

namespace {

Rational R(long v) { return Rational(v); }

Rational half(long v) {
    Rational r(v, 2);
    r.canonicalize();
    return r;
}

RuleEntry inequality(std::string id, std::string statement, const Rational& lhs, const Rational& rhs,
                     bool strict = false) {
    RuleEntry e;
    e.id = std::move(id);
    e.statement = std::move(statement);
    e.applicable = true;
    e.strict = strict;
    e.lhs = lhs;
    e.rhs = rhs;
    e.margin = rhs - lhs;
    e.passed = strict ? e.margin > 0 : e.margin >= 0;
    return e;
}

RuleEntry identity(std::string id, std::string statement, const Rational& lhs, const Rational& rhs) {
    RuleEntry e = inequality(std::move(id), std::move(statement), lhs, rhs);
    e.identity = true;
    e.passed = e.margin == 0;
    return e;
}

RuleEntry skipped(std::string id, std::string statement, std::string note) {
    RuleEntry e;
    e.id = std::move(id);
    e.statement = std::move(statement);
    e.note = std::move(note);
    return e;
}

void validate_model(const FibrationModel& m) {
    if (m.g < 1) throw Error(ErrorCode::ValidationError, "fiber_genus >= 1 required");
    if (m.b < 0) throw Error(ErrorCode::ValidationError, "base_genus >= 0 required");
    if (m.q < m.b) throw Error(ErrorCode::ValidationError, "q >= b required");
    if (m.p_g < 0) throw Error(ErrorCode::ValidationError, "p_g >= 0 required");
    if (m.h11 && *m.h11 < 0) throw Error(ErrorCode::ValidationError, "h11 >= 0 required");
    for (const auto& f : m.fibers)
        if (f.ambient_genus != m.g)
            throw Error(ErrorCode::ValidationError, "fiber '" + f.name + "' has genus " +
                                                        std::to_string(f.ambient_genus) + " but the family has " +
                                                        std::to_string(m.g));
}

long sum_components_minus_one(const std::vector<FiberInvariants>& fibers) {
    long total = 0;
    for (const auto& f : fibers)
        if (f.e_F > 0) total += f.ell - 1;
    return total;
}

}  // namespace

std::string_view to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Verified: return "verified";
        case ConditionStatus::Violated: return "violated";
        case ConditionStatus::NotRequired: return "not-required";
    }
    return "not-required";
}

bool AuditReport::consistent() const {
    if (!errors.empty()) return false;
    for (const auto& f : fibers)
        if (!f.error.empty()) return false;
    return std::all_of(rules.begin(), rules.end(), [](const RuleEntry& r) { return !r.applicable || r.passed; });
}

RelativeTriple relative_invariants(long g, long b, long chiO, long c1_sq, long c2) {
    if (g < 1) throw Error(ErrorCode::ValidationError, "fiber genus must be at least 1");
    const long t = (g - 1) * (b - 1);
    return {chiO - t, c1_sq - 8 * t, c2 - 4 * t};
}

long hodge_h11(long e_f, long q, long p_g, long g, long b) { return e_f - 2 + 4 * q - 2 * p_g + 4 * (g - 1) * (b - 1); }

S1Classification classify_s1(const std::vector<FiberInvariants>& fibers, long g) {
    S1Classification out;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (fibers[i].e_F <= 0) continue;
        ++out.s;
        if (fibers[i].gF < g) {
            ++out.s1;
            out.s1_indices.push_back(i);
        }
    }
    return out;
}

BalanceResult h11_balance(long g, long b, long q_f, long chi_f, long h11,
                                const std::vector<FiberInvariants>& fibers) {
    const S1Classification cls = classify_s1(fibers, g);
    long genus_gap = 0, n_bar = 0;
    for (std::size_t i : cls.s1_indices) {
        genus_gap += fibers[i].gF - q_f;
        n_bar += fibers[i].N_bar;
    }
    const long components = sum_components_minus_one(fibers);
    BalanceResult out;
    out.lhs = R(2 * chi_f);
    out.rhs = R((g - q_f) * (2 * b - 2 + cls.s1) - genus_gap - (h11 - 2 * q_f * b - 2 - components) + n_bar);
    out.residual = out.lhs - out.rhs;
    return out;
}

RationalBaseDiagnosis rational_base_diagnosis(const FibrationModel& model, const std::vector<FiberInvariants>& fibers,
                                            long h11) {
    if (model.b != 0) throw Error(ErrorCode::NotApplicable, "base is not P^1");
    if (!model.semistable) throw Error(ErrorCode::NotApplicable, "family is not semistable");
    if (model.trivial) throw Error(ErrorCode::NotApplicable, "family is trivial");
    const S1Classification cls = classify_s1(fibers, model.g);
    RationalBaseDiagnosis d;
    d.s1 = cls.s1;
    d.s1_bound_holds = cls.s1 >= 4;
    long genus_gap = 0;
    bool genus_match = true;
    for (std::size_t i : cls.s1_indices) {
        genus_gap += fibers[i].gF - model.q;
        genus_match = genus_match && fibers[i].gF == model.q;
    }
    const long components = sum_components_minus_one(fibers);
    if (cls.s1 == 4) {
        d.cond_pg_genus = model.p_g == 0 && genus_match ? ConditionStatus::Verified : ConditionStatus::Violated;
        d.cond_h11 = h11 == 2 + components ? ConditionStatus::Verified : ConditionStatus::Violated;
        d.cond_q = model.q <= 1 ? ConditionStatus::Verified : ConditionStatus::Violated;
    }
    d.balance.lhs = half((model.g - model.q) * (cls.s1 - 4));
    d.balance.rhs = R(model.p_g) + half(genus_gap) + half(h11 - 2 - components);
    d.balance.residual = d.balance.lhs - d.balance.rhs;
    return d;
}

const std::vector<std::string>& audit_rule_ids() {
    static const std::vector<std::string> ids = {
        "fiber-models",          "semistable-fibers",       "trivial-family",        "noether",
        "euler-fibers",          "h11-supplied",            "euler-hodge",           "h11-balance",
        "fiber-genus",           "h11-picard-bound",        "h11-bound",             "arakelov-s1",
        "arakelov-s",            "arakelov-weak",           "nonsemistable-bound",   "slope",
        "canonical-class",       "rational-base-s1",        "rational-base-pg-genus", "rational-base-h11",
        "rational-base-q",       "rational-base-balance",
    };
    return ids;
}

AuditReport inequality_audit(const FibrationModel& model, const AuditOptions& opts) {
    AuditReport rep;
    rep.name = model.name;
    rep.g = model.g;
    rep.b = model.b;
    rep.q = model.q;
    rep.p_g = model.p_g;
    rep.q_f = model.q_f();
    rep.chi_O = model.chi_O();
    rep.semistable = model.semistable;
    rep.trivial = model.trivial;
    try {
        validate_model(model);
    } catch (const Error& e) {
        if (!e.is_inconsistency()) throw;
        rep.errors.push_back(e.what());
        return rep;
    }

    const long g = model.g, b = model.b, q_f = model.q_f();
    std::vector<FiberInvariants> good;
    std::vector<const FiberModel*> good_models;
    long failed = 0, not_semistable = 0;
    for (const auto& fm : model.fibers) {
        FiberReport fr;
        fr.name = fm.name;
        try {
            FiberModel f = fm;
            if (std::any_of(f.singular_points.begin(), f.singular_points.end(),
                            [](const SingularPointRecord& p) { return !p.is_resolved; }))
                resolve_singularities(f, opts.resolution);
            for (const auto& p : f.singular_points)
                for (const auto& w : p.warnings) fr.warnings.push_back(w);
            FiberInvariants inv = fiber_full_invariants(f);
            fr.chi_top = chi_top_identity_check(f);
            fr.semistable = is_semistable_fiber(f, inv);
            if (fr.chi_top->residual != 0)
                throw Error(ErrorCode::IdentityViolation,
                            "topological Euler characteristic residual " + std::to_string(fr.chi_top->residual));
            if (inv.gF < q_f)
                fr.warnings.push_back("geometric genus " + std::to_string(inv.gF) + " is below q_f = " +
                                      std::to_string(q_f));
            fr.invariants = inv;
            good.push_back(inv);
            good_models.push_back(&fm);
            if (inv.e_F > 0 && !fr.semistable) ++not_semistable;
        } catch (const Error& e) {
            if (!e.is_inconsistency()) throw;
            fr.error = e.what();
            ++failed;
        }
        for (const auto& w : fr.warnings) rep.warnings.push_back("fiber '" + fr.name + "': " + w);
        rep.fibers.push_back(std::move(fr));
    }

    // relative invariants
    long fiber_euler = 0;
    for (const auto& f : good) fiber_euler += f.e_F;
    const long t = (g - 1) * (b - 1);
    RelativeInvariants& rel = rep.relative;
    rel.chi_f = model.chi_O() - t;
    rel.e_f = model.c2 ? *model.c2 - 4 * t : fiber_euler;
    rep.c2 = rel.e_f + 4 * t;
    rel.K_f_sq = model.c1_sq ? *model.c1_sq - 8 * t : 12 * rel.chi_f - rel.e_f;
    rep.c1_sq = rel.K_f_sq + 8 * t;
    rel.h11_computed = hodge_h11(rel.e_f, model.q, model.p_g, g, b);
    rel.h11 = model.h11 ? *model.h11 : rel.h11_computed;
    const S1Classification cls = classify_s1(good, g);
    rel.s = cls.s;
    rel.s1 = cls.s1;
    for (std::size_t i : cls.s1_indices) rel.s1_list.push_back(good_models[i]->name);
    const long h11 = rel.h11;
    const long components = sum_components_minus_one(good);
    rep.balance = h11_balance(g, b, q_f, rel.chi_f, h11, good);

    auto& rules = rep.rules;
    rules.push_back(identity("fiber-models", "fibers failing their own checks = 0", R(failed), R(0)));

    if (model.semistable)
        rules.push_back(identity("semistable-fibers", "non-semistable singular fibers = 0", R(not_semistable), R(0)));
    else
        rules.push_back(skipped("semistable-fibers", "non-semistable singular fibers = 0", "family not declared semistable"));

    if (model.trivial)
        rules.push_back(identity("trivial-family", "singular fibers of a trivial family = 0", R(rel.s), R(0)));
    else
        rules.push_back(skipped("trivial-family", "singular fibers of a trivial family = 0", "family not declared trivial"));

    if (model.c1_sq)
        rules.push_back(identity("noether", "12 chi_f = K_f^2 + e_f", R(12 * rel.chi_f), R(rel.K_f_sq + rel.e_f)));
    else
        rules.push_back(skipped("noether", "12 chi_f = K_f^2 + e_f", "c1_sq not supplied; K_f^2 derived from it"));

    if (model.c2)
        rules.push_back(identity("euler-fibers", "e_f from c2 = sum of fiber e_F", R(rel.e_f), R(fiber_euler)));
    else
        rules.push_back(skipped("euler-fibers", "e_f from c2 = sum of fiber e_F", "c2 not supplied; e_f taken from fibers"));

    if (model.h11)
        rules.push_back(identity("h11-supplied", "supplied h11 = h11 from e_f, q, p_g", R(*model.h11), R(rel.h11_computed)));
    else
        rules.push_back(skipped("h11-supplied", "supplied h11 = h11 from e_f, q, p_g", "h11 not supplied"));

    rules.push_back(identity("euler-hodge", "2 chi_f = e_f + (g - q_f)(2b - 2) + 2 q_f b + 2 - h11", R(2 * rel.chi_f),
                             R(rel.e_f + (g - q_f) * (2 * b - 2) + 2 * q_f * b + 2 - h11)));

    {
        RuleEntry e = identity("h11-balance",
                               "2 chi_f = (g - q_f)(2b - 2 + s1) - sum(g(F) - q_f) - (h11 - 2 q_f b - 2 - sum(l - 1)) + sum N_bar",
                               rep.balance.lhs, rep.balance.rhs);
        rules.push_back(e);
    }

    {
        long min_genus = g;
        for (const auto& f : good) min_genus = std::min(min_genus, f.gF);
        RuleEntry e = inequality("fiber-genus", "q_f <= min g(F) (and q_f <= g)", R(q_f), R(min_genus));
        rules.push_back(e);
    }

    rules.push_back(inequality("h11-picard-bound", "2 + sum(l - 1) <= h11", R(2 + components), R(h11)));
    rules.push_back(inequality("h11-bound", "2 q_f b + 2 + sum(l - 1) <= h11", R(2 * q_f * b + 2 + components), R(h11)));

    const bool arakelov_gate = model.semistable && !model.trivial;
    const std::string gate_note = "requires a semistable non-trivial family";
    if (arakelov_gate) {
        rules.push_back(inequality("arakelov-s1", "chi_f <= (g - q_f)(2b - 2 + s1)/2", R(rel.chi_f),
                                   half((g - q_f) * (2 * b - 2 + rel.s1))));
        rules.push_back(inequality("arakelov-s", "chi_f <= (g - q_f)(2b - 2 + s)/2", R(rel.chi_f),
                                   half((g - q_f) * (2 * b - 2 + rel.s))));
        rules.push_back(inequality("arakelov-weak", g >= 2 ? "chi_f < g(2b - 2 + s)/2" : "chi_f <= g(2b - 2 + s)/2",
                                   R(rel.chi_f), half(g * (2 * b - 2 + rel.s)), g >= 2));
    } else {
        rules.push_back(skipped("arakelov-s1", "chi_f <= (g - q_f)(2b - 2 + s1)/2", gate_note));
        rules.push_back(skipped("arakelov-s", "chi_f <= (g - q_f)(2b - 2 + s)/2", gate_note));
        rules.push_back(skipped("arakelov-weak", "chi_f <= g(2b - 2 + s)/2", gate_note));
    }

    if (!model.semistable)
        rules.push_back(inequality("nonsemistable-bound", "chi_f <= (g - q_f)(b - 1 + s1)", R(rel.chi_f),
                                   R((g - q_f) * (b - 1 + rel.s1))));
    else
        rules.push_back(skipped("nonsemistable-bound", "chi_f <= (g - q_f)(b - 1 + s1)", "family is semistable"));

    if (opts.strict_extras && g >= 2) {
        Rational lhs(4 * g - 4, g);
        lhs.canonicalize();
        lhs *= rel.chi_f;
        rules.push_back(inequality("slope", "(4g - 4)/g chi_f <= K_f^2", lhs, R(rel.K_f_sq)));
    } else {
        rules.push_back(skipped("slope", "(4g - 4)/g chi_f <= K_f^2", "needs --strict-extras and g >= 2"));
    }
    if (opts.strict_extras && g >= 2 && !model.trivial)
        rules.push_back(inequality("canonical-class", "K_f^2 < (2g - 2)(2b - 2 + s)", R(rel.K_f_sq),
                                   R((2 * g - 2) * (2 * b - 2 + rel.s)), true));
    else
        rules.push_back(skipped("canonical-class", "K_f^2 < (2g - 2)(2b - 2 + s)",
                                "needs --strict-extras, g >= 2 and a non-trivial family"));

    const char* s1_stmt = "4 <= s1";
    const char* pg_stmt = "p_g + sum |g(F) - q| over the s1 fibers = 0";
    const char* h11_stmt = "h11 = 2 + sum(l - 1)";
    const char* q_stmt = "q <= 1";
    const char* bal_stmt = "(g - q)(s1 - 4)/2 = p_g + sum(g(F) - q)/2 + (h11 - 2 - sum(l - 1))/2";
    if (b == 0 && arakelov_gate) {
        RationalBaseDiagnosis d = rational_base_diagnosis(model, good, h11);
        rules.push_back(inequality("rational-base-s1", s1_stmt, R(4), R(rel.s1)));
        if (rel.s1 == 4) {
            long gap = 0;
            for (std::size_t i : cls.s1_indices) gap += std::abs(good[i].gF - model.q);
            rules.push_back(identity("rational-base-pg-genus", pg_stmt, R(model.p_g + gap), R(0)));
            rules.push_back(identity("rational-base-h11", h11_stmt, R(h11), R(2 + components)));
            rules.push_back(inequality("rational-base-q", q_stmt, R(model.q), R(1)));
        } else {
            const std::string note = "only required when s1 = 4";
            rules.push_back(skipped("rational-base-pg-genus", pg_stmt, note));
            rules.push_back(skipped("rational-base-h11", h11_stmt, note));
            rules.push_back(skipped("rational-base-q", q_stmt, note));
        }
        rules.push_back(identity("rational-base-balance", bal_stmt, d.balance.lhs, d.balance.rhs));
        rep.rational_base = d;
    } else {
        const std::string note = "requires b = 0 and a semistable non-trivial family";
        for (auto [id, st] : {std::pair{"rational-base-s1", s1_stmt}, std::pair{"rational-base-pg-genus", pg_stmt},
                              std::pair{"rational-base-h11", h11_stmt}, std::pair{"rational-base-q", q_stmt},
                              std::pair{"rational-base-balance", bal_stmt}})
            rules.push_back(skipped(id, st, note));
    }
    return rep;
}

}  // namespace fibercheck
