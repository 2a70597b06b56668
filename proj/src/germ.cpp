#include "fibercheck/germ.hpp"

#include <algorithm>
#include <deque>

#include "fibercheck/errors.hpp"
#include "fibercheck/factor.hpp"

namespace fibercheck {

namespace {

int order_or_throw(const BiPoly& f) {
    auto m = order_at_origin(f);
    if (!m) throw Error(ErrorCode::InvalidGerm, "the zero polynomial is not a curve germ");
    return *m;
}

void require_vanishing(const BiPoly& f) {
    if (order_or_throw(f) == 0)
        throw Error(ErrorCode::InvalidGerm, "germ does not pass through the origin: " + f.to_string());
}

void require_isolated(const BiPoly& f) {
    if (!is_locally_reduced(f))
        throw Error(ErrorCode::NonIsolatedSingularity,
                    "repeated factor through the origin in " + f.to_string());
}

QPoly to_qpoly(const KPoly& p) {
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c.push_back(p.coeff(i).rational());
    return QPoly(std::move(c));
}

struct StrictStats {
    long mu = 0;
    long delta = 0;
    long branches = 0;
};

StrictStats strict_walk(const BiPoly& f, int depth, const ResolutionOptions& opts) {
    const int m = order_or_throw(f);
    if (m == 0) return {};
    if (m == 1) return {0, 0, 1};
    if (depth >= opts.max_depth)
        throw Error(ErrorCode::ResolutionDepthExceeded,
                    "more than " + std::to_string(opts.max_depth) + " nested blow-ups");
    const auto points = exceptional_points(f, m);
    long r = 0;
    for (const auto& p : points) r += p.cluster_degree;
    StrictStats out;
    out.mu = static_cast<long>(m) * (m - 1) - (r - 1);
    out.delta = static_cast<long>(m) * (m - 1) / 2;
    for (const auto& p : points) {
        StrictStats s = strict_walk(p.curve, depth + 1, opts);
        out.mu += p.cluster_degree * s.mu;
        out.delta += p.cluster_degree * s.delta;
        out.branches += p.cluster_degree * s.branches;
    }
    return out;
}

ResolutionNode build_tree(const BiPoly& h, int depth, int cluster_degree, const ResolutionOptions& opts) {
    ResolutionNode node;
    node.multiplicity = order_or_throw(h);
    node.cluster_degree = cluster_degree;
    if (node.multiplicity <= 1) {
        node.terminal = TerminalKind::Smooth;
        return node;
    }
    if (node.multiplicity == 2) {
        // mu = 1 exactly when the quadratic tangent cone has nonzero discriminant
        const FieldScalar a = h.coeff(2, 0), b = h.coeff(1, 1), c = h.coeff(0, 2);
        if (!(b * b - FieldScalar(4) * a * c).is_zero()) {
            node.terminal = TerminalKind::Node;
            return node;
        }
    }
    if (depth >= opts.max_depth)
        throw Error(ErrorCode::ResolutionDepthExceeded,
                    "more than " + std::to_string(opts.max_depth) + " nested blow-ups");
    node.is_blowup_center = true;
    for (const auto& p : exceptional_points(h, node.multiplicity))
        node.children.push_back(build_tree(BiPoly::x() * p.curve, depth + 1, p.cluster_degree, opts));
    return node;
}

// Sparse row over a field with columns in increasing order.
template <class S>
using Row = std::vector<std::pair<int, S>>;

template <class S>
Row<S> row_axpy(const Row<S>& a, const S& c, const Row<S>& b) {
    // a - c*b
    Row<S> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -(c * b[j].second));
            ++j;
        } else {
            S v = a[i].second - c * b[j].second;
            if (!(v == S(0))) out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

inline Rational inverse_of(const Rational& r) { return Rational(1) / r; }
inline FieldScalar inverse_of(const FieldScalar& s) { return s.inverse(); }
inline Rational scalar_from(const FieldScalar& s, Rational*) { return s.rational(); }
inline FieldScalar scalar_from(const FieldScalar& s, FieldScalar*) { return s; }

int monomial_index(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
}

template <class S>
long colength(const BiPoly& fx, const BiPoly& fy, int n) {
    std::map<int, Row<S>> pivots;
    for (const BiPoly* g : {&fx, &fy}) {
        for (int d = 0; d < n; ++d) {
            for (int b = 0; b <= d; ++b) {
                const int a = d - b;
                std::map<int, S> entries;
                for (const auto& [e, c] : g->terms()) {
                    const int i = e.x + a, j = e.y + b;
                    if (i + j >= n) continue;
                    entries[monomial_index(i, j)] = scalar_from(c, static_cast<S*>(nullptr));
                }
                Row<S> row(entries.begin(), entries.end());
                while (!row.empty()) {
                    auto it = pivots.find(row.front().first);
                    if (it == pivots.end()) {
                        const S inv = inverse_of(row.front().second);
                        for (auto& [col, v] : row) v = v * inv;
                        pivots.emplace(row.front().first, std::move(row));
                        break;
                    }
                    row = row_axpy(row, row.front().second, it->second);
                }
            }
        }
    }
    const long columns = static_cast<long>(n) * (n + 1) / 2;
    return columns - static_cast<long>(pivots.size());
}

}  // namespace

Germ Germ::from_polynomial(const BiPoly& f) {
    require_vanishing(f);
    Germ g;
    if (is_locally_reduced(f)) {
        g.equation = f;
    } else {
        g.equation = squarefree_reduce(f);
        g.reduced_automatically = true;
        require_vanishing(g.equation);
    }
    g.reduced = true;
    return g;
}

std::string_view to_string(TerminalKind kind) {
    switch (kind) {
        case TerminalKind::None: return "none";
        case TerminalKind::Smooth: return "smooth";
        case TerminalKind::Node: return "node";
        case TerminalKind::Pending: return "pending";
    }
    return "none";
}

std::vector<InfinitelyNearPoint> exceptional_points(const BiPoly& f, int m) {
    const BiPoly cone = leading_form(f);
    const KPoly dehom = dehomogenize(cone);
    const FieldPtr field = f.field();
    std::vector<InfinitelyNearPoint> out;

    std::vector<KFactor> factors;
    if (dehom.degree() >= 1) {
        if (field) {
            factors = factor_over_extension(dehom, field);
            for (const auto& fac : factors)
                if (fac.poly.degree() >= 2)
                    throw Error(ErrorCode::ExtensionTowerUnsupported,
                                "tangent factor " + fac.poly.to_string("t") + " is irreducible over Q(a)");
        } else {
            factors = univariate_factor(dehom);
        }
    }
    for (const auto& fac : factors) {
        const KPoly phi = fac.poly.monic();
        InfinitelyNearPoint p;
        p.key = phi.to_string("t");
        if (phi.degree() == 1) {
            p.direction = TangentDirection::finite(-phi.coeff(0));
        } else {
            FieldPtr ext = make_field(to_qpoly(phi));
            p.direction = TangentDirection::finite(FieldScalar::generator(ext));
            p.cluster_degree = phi.degree();
        }
        p.curve = blowup_substitute(f, m, p.direction);
        out.push_back(std::move(p));
    }
    if (dehom.degree() < m) {
        InfinitelyNearPoint p;
        p.chart = 1;
        p.direction = TangentDirection::vertical_line();
        p.curve = blowup_substitute(f, m, p.direction);
        out.push_back(std::move(p));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.chart, a.key) < std::tie(b.chart, b.key);
    });
    return out;
}

BiPoly squarefree_reduce(const BiPoly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot reduce the zero polynomial");
    BiPoly g = gcd(gcd(f, f.derivative_x()), f.derivative_y());
    if (g.total_degree() == 0) return f;
    return exact_divide(f, g);
}

bool is_locally_reduced(const BiPoly& f) {
    if (f.is_zero()) return false;
    BiPoly g = gcd(gcd(f, f.derivative_x()), f.derivative_y());
    return !g.coeff(0, 0).is_zero();
}

bool is_ordinary_double_point(const Germ& g, const ResolutionOptions& opts) {
    if (!g.reduced) throw Error(ErrorCode::NonReducedGerm, "germ is not flagged reduced");
    require_vanishing(g.equation);
    if (order_or_throw(g.equation) != 2) return false;
    return milnor_recursive(g, opts) == 1;
}

long milnor_recursive(const Germ& g, const ResolutionOptions& opts) {
    require_vanishing(g.equation);
    require_isolated(g.equation);
    return strict_walk(g.equation, 0, opts).mu;
}

long milnor_jacobian_oracle(const Germ& g, const ResolutionOptions& opts) {
    const BiPoly& f = g.equation;
    require_vanishing(f);
    require_isolated(f);
    const BiPoly fx = f.derivative_x(), fy = f.derivative_y();
    const bool rational = !f.field();
    long previous = -1;
    for (int n = 1; n <= opts.oracle_degree_cap; ++n) {
        long dim = rational ? colength<Rational>(fx, fy, n) : colength<FieldScalar>(fx, fy, n);
        if (dim == previous) return dim;
        previous = dim;
    }
    throw Error(ErrorCode::TruncationLimitExceeded,
                "Jacobian colength did not stabilize below degree " + std::to_string(opts.oracle_degree_cap));
}

std::pair<long, long> delta_and_branches(const Germ& g, const ResolutionOptions& opts) {
    require_vanishing(g.equation);
    require_isolated(g.equation);
    StrictStats s = strict_walk(g.equation, 0, opts);
    if (s.mu != 2 * s.delta - s.branches + 1)
        throw Error(ErrorCode::IdentityViolation, "Milnor relation fails for " + g.equation.to_string());
    return {s.delta, s.branches};
}

PartialResolution summarize_tree(const GermResolution& tree) {
    PartialResolution out;
    out.tree = tree;
    std::deque<std::pair<const ResolutionNode*, long>> queue{{&tree, 1}};
    while (!queue.empty()) {
        auto [node, weight] = queue.front();
        queue.pop_front();
        if (node->is_blowup_center) {
            out.m_sequence.insert(out.m_sequence.end(), static_cast<std::size_t>(weight), node->multiplicity);
            for (const auto& child : node->children) queue.emplace_back(&child, weight * child.cluster_degree);
        } else if (node->terminal == TerminalKind::Node) {
            out.final_nodes += weight;
        }
    }
    return out;
}

PartialResolution minimal_partial_resolution(const Germ& g, const ResolutionOptions& opts) {
    require_vanishing(g.equation);
    require_isolated(g.equation);
    return summarize_tree(build_tree(g.equation, 0, 1, opts));
}

std::vector<int> ordinary_point_resolution(int m, const ResolutionOptions& opts) {
    if (m < 2) throw Error(ErrorCode::InvalidGerm, "ordinary point needs multiplicity at least 2");
    BiPoly f(1);
    for (int i = 0; i < m; ++i) f *= BiPoly::y() - BiPoly::x() * FieldScalar(i);
    return minimal_partial_resolution(Germ::from_polynomial(f), opts).m_sequence;
}

long partial_resolution_correction(const std::vector<int>& m_sequence) {
    long c = 0;
    for (int m : m_sequence) c += static_cast<long>(m - 1) * (m - 2);
    return c;
}

SingularityInvariants analyze_germ(const Germ& g, const ResolutionOptions& opts) {
    require_vanishing(g.equation);
    require_isolated(g.equation);
    SingularityInvariants inv;
    inv.m = order_or_throw(g.equation);
    StrictStats s = strict_walk(g.equation, 0, opts);
    inv.mu = s.mu;
    inv.delta = s.delta;
    inv.branches = s.branches;
    if (inv.mu != 2 * inv.delta - inv.branches + 1)
        throw Error(ErrorCode::IdentityViolation, "Milnor relation fails for " + g.equation.to_string());
    PartialResolution pr = minimal_partial_resolution(g, opts);
    inv.m_sequence = pr.m_sequence;
    inv.blowup_count = static_cast<long>(pr.m_sequence.size());
    inv.final_nodes = pr.final_nodes;
    if (inv.final_nodes != inv.mu - partial_resolution_correction(inv.m_sequence) + inv.blowup_count)
        throw Error(ErrorCode::IdentityViolation,
                    "node count of the partial resolution disagrees for " + g.equation.to_string());
    inv.reduced_automatically = g.reduced_automatically;
    return inv;
}

namespace {

long intersection_walk(const BiPoly& f, const BiPoly& g, int depth, const ResolutionOptions& opts) {
    const int mf = order_or_throw(f), mg = order_or_throw(g);
    if (mf == 0 || mg == 0) return 0;
    if (depth >= opts.max_depth)
        throw Error(ErrorCode::ResolutionDepthExceeded, "curves share too many infinitely near points");
    long total = static_cast<long>(mf) * mg;
    for (const auto& p : exceptional_points(f * g, mf + mg)) {
        BiPoly fs = blowup_substitute(f, mf, p.direction);
        BiPoly gs = blowup_substitute(g, mg, p.direction);
        total += p.cluster_degree * intersection_walk(fs, gs, depth + 1, opts);
    }
    return total;
}

}  // namespace

long intersection_multiplicity(const BiPoly& f, const BiPoly& g, const ResolutionOptions& opts) {
    if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::InvalidGerm, "zero polynomial in intersection");
    if (gcd(f, g).coeff(0, 0).is_zero())
        throw Error(ErrorCode::NonIsolatedSingularity, "curves share a component through the origin");
    return intersection_walk(f, g, 0, opts);
}

}  // namespace fibercheck
