#include "fibercheck/fiber.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "fibercheck/errors.hpp"

namespace fibercheck {

BiPoly canonical_germ(const std::string& kind) {
    const BiPoly x = BiPoly::x(), y = BiPoly::y();
    if (kind == "node") return y * y - x * x;
    if (kind == "cusp") return y * y - x.pow(3);
    if (kind == "tacnode") return y * y - x.pow(4);
    const std::string prefix = "ordinary(";
    if (kind.size() > prefix.size() + 1 && kind.compare(0, prefix.size(), prefix) == 0 && kind.back() == ')') {
        const std::string digits = kind.substr(prefix.size(), kind.size() - prefix.size() - 1);
        if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::ParseError, "bad multiplicity in singularity kind '" + kind + "'");
        const int m = std::stoi(digits);
        if (m < 2) throw Error(ErrorCode::ValidationError, "ordinary point needs multiplicity at least 2: " + kind);
        BiPoly f(1);
        for (int i = 0; i < m; ++i) f *= y - x * FieldScalar(i);
        return f;
    }
    throw Error(ErrorCode::ParseError, "unknown singularity kind '" + kind + "'");
}

namespace {

void check_tree_node(const ResolutionNode& n, bool root) {
    if (n.cluster_degree < 1) throw Error(ErrorCode::ValidationError, "cluster_degree must be positive");
    if (n.terminal == TerminalKind::Pending)
        throw Error(ErrorCode::ValidationError, "resolution tree has a pending terminal");
    if (n.is_blowup_center) {
        if (n.multiplicity < 2) throw Error(ErrorCode::ValidationError, "blow-up centre with multiplicity below 2");
        if (n.children.empty()) throw Error(ErrorCode::ValidationError, "blow-up centre without children");
        if (n.terminal != TerminalKind::None)
            throw Error(ErrorCode::ValidationError, "blow-up centre marked terminal");
        for (const auto& c : n.children) check_tree_node(c, false);
        return;
    }
    if (!n.children.empty()) throw Error(ErrorCode::ValidationError, "terminal point with children");
    if (n.terminal == TerminalKind::Node && n.multiplicity != 2)
        throw Error(ErrorCode::ValidationError, "node terminal must have multiplicity 2");
    if (n.terminal == TerminalKind::Smooth && n.multiplicity != 1)
        throw Error(ErrorCode::ValidationError, "smooth terminal must have multiplicity 1");
    if (n.terminal == TerminalKind::None) throw Error(ErrorCode::ValidationError, "tree leaf without terminal kind");
    if (root && n.terminal == TerminalKind::Smooth)
        throw Error(ErrorCode::ValidationError, "a smooth point is not a singular point");
}

bool same_invariants(const SingularityInvariants& a, const SingularityInvariants& b) {
    return a.m == b.m && a.mu == b.mu && a.delta == b.delta && a.branches == b.branches &&
           a.m_sequence == b.m_sequence && a.final_nodes == b.final_nodes;
}

std::string describe(const SingularityInvariants& s) {
    std::string seq;
    for (int m : s.m_sequence) seq += (seq.empty() ? "" : ",") + std::to_string(m);
    return "(m=" + std::to_string(s.m) + " mu=" + std::to_string(s.mu) + " delta=" + std::to_string(s.delta) +
           " r=" + std::to_string(s.branches) + " seq=[" + seq + "])";
}

void validate_structure(const FiberModel& model) {
    if (model.ambient_genus < 1)
        throw Error(ErrorCode::ValidationError, "fiber '" + model.name + "': genus must be at least 1");
    if (model.components.empty())
        throw Error(ErrorCode::ValidationError, "fiber '" + model.name + "' has no components");
    std::set<std::string> ids;
    for (const auto& c : model.components) {
        if (!ids.insert(c.id).second)
            throw Error(ErrorCode::ParseError, "fiber '" + model.name + "': duplicate component id '" + c.id + "'");
        if (c.geometric_genus < 0)
            throw Error(ErrorCode::ValidationError, "component '" + c.id + "' has negative genus");
        if (c.multiplicity < 1)
            throw Error(ErrorCode::ValidationError, "component '" + c.id + "' multiplicity must be positive");
    }
    for (const auto& p : model.singular_points) {
        if (p.incident_components.empty())
            throw Error(ErrorCode::ParseError, "fiber '" + model.name + "': singular point without components");
        for (const auto& id : p.incident_components)
            if (!ids.count(id))
                throw Error(ErrorCode::ParseError, "fiber '" + model.name + "': unknown component id '" + id + "'");
        if (p.count < 1) throw Error(ErrorCode::ValidationError, "singular point count must be positive");
        if (!p.is_resolved)
            throw Error(ErrorCode::ValidationError, "fiber '" + model.name + "': unresolved singular point");
    }
}

long distinct_count(const std::vector<std::string>& v) { return static_cast<long>(std::set(v.begin(), v.end()).size()); }

}  // namespace

SingularityInvariants named_kind_invariants(const std::string& kind, const ResolutionOptions& opts) {
    static std::mutex mutex;
    static std::map<std::string, SingularityInvariants> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(kind); it != cache.end()) return it->second;
    }
    SingularityInvariants inv = analyze_germ(Germ::from_polynomial(canonical_germ(kind)), opts);
    std::lock_guard lock(mutex);
    cache.emplace(kind, inv);
    return inv;
}

SingularityInvariants tree_invariants(const ExplicitTree& tree) {
    check_tree_node(tree.root, true);
    if (tree.branches < 1) throw Error(ErrorCode::ValidationError, "explicit tree must declare branches >= 1");
    PartialResolution pr = summarize_tree(tree.root);
    SingularityInvariants inv;
    inv.m = tree.root.multiplicity;
    inv.m_sequence = pr.m_sequence;
    inv.blowup_count = static_cast<long>(pr.m_sequence.size());
    inv.final_nodes = pr.final_nodes;
    inv.mu = pr.final_nodes + partial_resolution_correction(pr.m_sequence) - inv.blowup_count;
    inv.branches = tree.branches;
    const long twice_delta = inv.mu + inv.branches - 1;
    if (inv.mu < 0 || twice_delta < 0 || twice_delta % 2 != 0)
        throw Error(ErrorCode::ValidationError,
                    "explicit tree is inconsistent with " + std::to_string(tree.branches) + " branches");
    inv.delta = twice_delta / 2;
    if (inv.mu == 0) throw Error(ErrorCode::ValidationError, "explicit tree describes a smooth point");
    return inv;
}

void resolve_singularities(FiberModel& model, const ResolutionOptions& opts) {
    for (auto& p : model.singular_points) {
        const auto& src = p.source;
        std::optional<BiPoly> germ = src.germ;
        std::map<std::pair<std::string, std::string>, long> local;
        if (!src.component_germs.empty()) {
            BiPoly product(1);
            for (const auto& [id, f] : src.component_germs) {
                if (std::find(p.incident_components.begin(), p.incident_components.end(), id) ==
                    p.incident_components.end())
                    throw Error(ErrorCode::ParseError, "branch germ for component '" + id + "' not incident here");
                if (order_at_origin(f).value_or(0) < 1)
                    throw Error(ErrorCode::InvalidGerm, "branch germ of '" + id + "' does not pass through the origin");
                product *= f;
            }
            for (auto a = src.component_germs.begin(); a != src.component_germs.end(); ++a)
                for (auto b = std::next(a); b != src.component_germs.end(); ++b)
                    local[{a->first, b->first}] = intersection_multiplicity(a->second, b->second, opts);
            if (germ) {
                BiPoly q = gcd(*germ, product);
                if (!(exact_divide(*germ, q).total_degree() == 0 && exact_divide(product, q).total_degree() == 0))
                    throw Error(ErrorCode::ValidationError, "germ disagrees with the product of its branch germs");
            } else {
                germ = product;
            }
        }

        std::vector<std::pair<std::string, SingularityInvariants>> found;
        if (src.tree) found.emplace_back("tree", tree_invariants(*src.tree));
        if (germ) {
            Germ g = Germ::from_polynomial(*germ);
            found.emplace_back("germ", analyze_germ(g, opts));
            if (g.reduced_automatically) p.warnings.push_back("germ was not reduced; used its squarefree part");
        }
        if (src.kind) found.emplace_back("kind", named_kind_invariants(*src.kind, opts));
        if (found.empty()) throw Error(ErrorCode::ParseError, "singular point has no kind, germ or tree");
        for (std::size_t i = 1; i < found.size(); ++i)
            if (!same_invariants(found[0].second, found[i].second))
                throw Error(ErrorCode::ValidationError, "singularity sources disagree: " + found[0].first + " gives " +
                                                            describe(found[0].second) + ", " + found[i].first +
                                                            " gives " + describe(found[i].second));
        p.resolved = found[0].second;
        if (p.resolved.mu == 0) throw Error(ErrorCode::ValidationError, "declared singular point is smooth");
        p.resolved.local_intersections = local;
        if (p.resolved.reduced_automatically && found[0].first != "germ")
            p.warnings.push_back("germ was not reduced; used its squarefree part");
        if (p.resolved.branches < distinct_count(p.incident_components))
            throw Error(ErrorCode::ValidationError,
                        "singular point has " + std::to_string(p.resolved.branches) + " branches but meets " +
                            std::to_string(distinct_count(p.incident_components)) + " components");
        p.is_resolved = true;
    }
}

bool fiber_connected(const FiberModel& model) {
    std::map<std::string, std::string> parent;
    for (const auto& c : model.components) parent[c.id] = c.id;
    auto find = [&](std::string v) {
        while (parent.at(v) != v) v = parent[v] = parent.at(parent.at(v));
        return v;
    };
    for (const auto& p : model.singular_points)
        for (const auto& id : p.incident_components) parent[find(id)] = find(p.incident_components.front());
    std::set<std::string> roots;
    for (const auto& c : model.components) roots.insert(find(c.id));
    return roots.size() <= 1;
}

ReducedFiberInvariants fiber_reduced_invariants(const FiberModel& model) {
    validate_structure(model);
    if (!fiber_connected(model))
        throw Error(ErrorCode::DisconnectedFiber, "fiber '" + model.name + "' has disconnected components");
    ReducedFiberInvariants r;
    r.ell = static_cast<long>(model.components.size());
    long delta = 0;
    bool reduced = true;
    for (const auto& c : model.components) {
        r.gF += c.geometric_genus;
        reduced = reduced && c.multiplicity == 1;
    }
    for (const auto& p : model.singular_points) {
        delta += p.count * p.resolved.delta;
        r.mu_F += p.count * p.resolved.mu;
    }
    r.pa_red = r.gF + delta - r.ell + 1;
    r.N_F = model.ambient_genus - r.pa_red;
    if (r.N_F < 0)
        throw Error(ErrorCode::GenusMismatch, "fiber '" + model.name + "': p_a(F_red) = " + std::to_string(r.pa_red) +
                                                  " exceeds g = " + std::to_string(model.ambient_genus));
    if (reduced && r.N_F != 0)
        throw Error(ErrorCode::GenusMismatch, "fiber '" + model.name + "' is reduced but p_a(F_red) = " +
                                                  std::to_string(r.pa_red) + " differs from g = " +
                                                  std::to_string(model.ambient_genus));
    r.e_F = 2 * r.N_F + r.mu_F;
    return r;
}

PartialTransform partial_resolution_transform(long mu, long N, long pa_red, const std::vector<int>& m_sequence) {
    for (int m : m_sequence)
        if (m < 2) throw Error(ErrorCode::ValidationError, "multiplicity sequence entry below 2");
    const long c = partial_resolution_correction(m_sequence);
    if (c % 2 != 0) throw Error(ErrorCode::OddCorrection, "sum of (m-1)(m-2) is odd: " + std::to_string(c));
    const long r = static_cast<long>(m_sequence.size());
    return {mu - c + r, N + c / 2, pa_red - c / 2};
}

FiberInvariants fiber_full_invariants(const FiberModel& model) {
    const ReducedFiberInvariants red = fiber_reduced_invariants(model);
    FiberInvariants inv;
    inv.ell = red.ell;
    inv.gF = red.gF;
    inv.pa_red = red.pa_red;
    inv.N_F = red.N_F;
    inv.mu_F = red.mu_F;
    inv.e_F = red.e_F;
    for (const auto& p : model.singular_points)
        for (long k = 0; k < p.count; ++k)
            inv.m_sequence_all.insert(inv.m_sequence_all.end(), p.resolved.m_sequence.begin(),
                                      p.resolved.m_sequence.end());
    inv.r_F = static_cast<long>(inv.m_sequence_all.size());
    const PartialTransform bar = partial_resolution_transform(inv.mu_F, inv.N_F, inv.pa_red, inv.m_sequence_all);
    inv.mu_bar = bar.mu_bar;
    inv.N_bar = bar.N_bar;
    inv.pa_bar_red = bar.pa_bar_red;
    inv.ell_bar = inv.ell + inv.r_F;
    inv.alpha = inv.mu_bar - inv.ell_bar + 1;

    auto violation = [&](const std::string& what, long lhs, long rhs) {
        throw Error(ErrorCode::IdentityViolation, "fiber '" + model.name + "': " + what + " (" + std::to_string(lhs) +
                                                      " vs " + std::to_string(rhs) + ")");
    };
    const long alpha_genus = inv.pa_bar_red - inv.gF;
    if (inv.alpha != alpha_genus) violation("alpha from the dual graph differs from p_a - g(F)", inv.alpha, alpha_genus);
    const long g = model.ambient_genus;
    if (g != inv.gF + inv.N_bar + inv.alpha) violation("g != g(F) + N_bar + alpha", g, inv.gF + inv.N_bar + inv.alpha);
    const long e_bar = 2 * inv.N_bar + inv.mu_bar - inv.r_F;
    if (inv.e_F != e_bar) violation("e_F from the partial resolution differs", inv.e_F, e_bar);
    if (inv.alpha < 0) violation("alpha is negative", inv.alpha, 0);
    if (inv.pa_bar_red < 0) violation("p_a of the resolved fiber is negative", inv.pa_bar_red, 0);
    if (inv.N_F > inv.N_bar || inv.N_bar > g) violation("N_F <= N_bar <= g fails", inv.N_bar, g);
    return inv;
}

ChiTopCheck chi_top_identity_check(const FiberModel& model) {
    const ReducedFiberInvariants red = fiber_reduced_invariants(model);
    ChiTopCheck out;
    for (const auto& c : model.components) out.chi_top += 2 - 2 * c.geometric_genus;
    for (const auto& p : model.singular_points) out.chi_top -= p.count * (p.resolved.branches - 1);
    out.residual = out.chi_top - (2 * (1 - red.pa_red) + red.mu_F);
    return out;
}

bool is_semistable_fiber(const FiberModel& model, const FiberInvariants& inv) {
    for (const auto& c : model.components)
        if (c.multiplicity != 1) return false;
    for (const auto& p : model.singular_points)
        if (p.resolved.mu != 1) return false;
    return inv.N_F == 0;
}

}  // namespace fibercheck
