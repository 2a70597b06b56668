#include "fibercheck/cover.hpp"

#include "fibercheck/errors.hpp"

namespace fibercheck {

namespace {

void even_walk(const BiPoly& B, int depth, long weight, std::vector<long>& out, const ResolutionOptions& opts) {
    const auto order = order_at_origin(B);
    if (!order) throw Error(ErrorCode::InvalidGerm, "the zero polynomial is not a branch curve");
    const int m = *order;
    if (m <= 1) return;
    if (depth >= opts.max_depth)
        throw Error(ErrorCode::ResolutionDepthExceeded,
                    "more than " + std::to_string(opts.max_depth) + " nested blow-ups");
    out.insert(out.end(), static_cast<std::size_t>(weight), m / 2);
    // odd multiplicity: the exceptional curve joins the branch locus
    for (const auto& p : exceptional_points(B, m))
        even_walk(m % 2 ? BiPoly::x() * p.curve : p.curve, depth + 1, weight * p.cluster_degree, out, opts);
}

void tree_walk(const GermResolution& n, long weight, std::vector<long>& out) {
    if (n.cluster_degree < 1) throw Error(ErrorCode::ValidationError, "cluster_degree must be positive");
    if (n.multiplicity < 0) throw Error(ErrorCode::ValidationError, "negative multiplicity in branch tree");
    const long w = weight * n.cluster_degree;
    if (n.multiplicity >= 2) out.insert(out.end(), static_cast<std::size_t>(w), n.multiplicity / 2);
    for (const auto& c : n.children) tree_walk(c, w, out);
}

bool is_integer_half(long twice) { return twice % 2 == 0; }

}  // namespace

void SurfaceLattice::validate() const {
    const std::size_t n = gram.size();
    if (n == 0) throw Error(ErrorCode::ValidationError, "lattice rank must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) throw Error(ErrorCode::ValidationError, "gram matrix is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i]) throw Error(ErrorCode::ValidationError, "gram matrix is not symmetric");
    }
    if (canonical_class.size() != n)
        throw Error(ErrorCode::ValidationError, "canonical class length differs from the lattice rank");
    if (!basis_labels.empty() && basis_labels.size() != n)
        throw Error(ErrorCode::ValidationError, "basis_labels length differs from the lattice rank");
    if (euler) {
        const long K2 = pairing(canonical_class, canonical_class, *this);
        if (K2 + *euler != 12 * chiO)
            throw Error(ErrorCode::ValidationError, "Noether check fails: K^2 + e = " + std::to_string(K2 + *euler) +
                                                        " but 12 chi = " + std::to_string(12 * chiO));
    }
}

long pairing(const LatticeVector& u, const LatticeVector& v, const SurfaceLattice& lat) {
    const std::size_t n = lat.gram.size();
    if (u.size() != n || v.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "vectors of length " + std::to_string(u.size()) + " and " +
                                                      std::to_string(v.size()) + " on a rank " +
                                                      std::to_string(n) + " lattice");
    long s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (lat.gram[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "gram matrix is not square");
        for (std::size_t j = 0; j < n; ++j) s += u[i] * lat.gram[i][j] * v[j];
    }
    return s;
}

SurfaceLattice blow_up_lattice(const SurfaceLattice& lat, const std::string& label) {
    SurfaceLattice out = lat;
    for (auto& row : out.gram) row.push_back(0);
    out.gram.emplace_back(lat.gram.size() + 1, 0);
    out.gram.back().back() = -1;
    out.canonical_class.push_back(1);
    if (out.basis_labels.size() == lat.gram.size()) out.basis_labels.push_back(label);
    if (out.euler) *out.euler += 1;
    return out;
}

SurfaceLattice projective_plane() { return {{{1}}, {-3}, 1, 3, {"H"}}; }

SurfaceLattice quadric_surface() { return {{{0, 1}, {1, 0}}, {-2, -2}, 1, 4, {"F1", "F2"}}; }

SurfaceLattice elliptic_ruled_product() { return {{{0, 1}, {1, 0}}, {-2, 0}, 0, 0, {"F1", "F2"}}; }

std::vector<long> even_resolution_multiplicities(const BranchSingularity& sing, const ResolutionOptions& opts) {
    std::vector<long> out;
    if (sing.tree) {
        tree_walk(*sing.tree, 1, out);
        return out;
    }
    BiPoly B;
    if (sing.germ) B = *sing.germ;
    else if (sing.kind) B = canonical_germ(*sing.kind);
    else throw Error(ErrorCode::ValidationError, "branch singularity needs a kind, germ or tree");
    const auto order = order_at_origin(B);
    if (!order || *order == 0)
        throw Error(ErrorCode::InvalidGerm, "branch germ does not pass through the origin: " + B.to_string());
    if (!is_locally_reduced(B))
        throw Error(ErrorCode::NonReducedGerm, "branch curve has a repeated factor at the origin: " + B.to_string());
    even_walk(B, 0, 1, out, opts);
    return out;
}

CoverInvariants double_cover_invariants(long chiO_W, long KW_sq, long L_sq, long L_dot_K,
                                        const std::vector<long>& k_list) {
    if (!is_integer_half(L_sq + L_dot_K))
        throw Error(ErrorCode::NonIntegralResult, "L^2 + L.K = " + std::to_string(L_sq + L_dot_K) +
                                                      " is odd, so chi(O_S) would not be an integer");
    long chi_corr = 0, k_corr = 0;
    for (long k : k_list) {
        if (k < 1) throw Error(ErrorCode::ValidationError, "every k must be at least 1");
        chi_corr += k * (k - 1) / 2;
        k_corr += (k - 1) * (k - 1);
    }
    CoverInvariants c;
    c.chiO_S = 2 * chiO_W + (L_sq + L_dot_K) / 2 - chi_corr;
    c.K_S_sq = 2 * (KW_sq + 2 * L_dot_K + L_sq) - 2 * k_corr;
    c.e_S = 12 * c.chiO_S - c.K_S_sq;
    return c;
}

CoverInvariants double_cover_from_branch(const SurfaceLattice& lat, const BranchSpec& branch,
                                         const ResolutionOptions& opts) {
    lat.validate();
    if (branch.branch_class.size() != lat.rank() || branch.L_class.size() != lat.rank())
        throw Error(ErrorCode::DimensionMismatch, "branch data do not match the lattice rank");
    for (std::size_t i = 0; i < lat.rank(); ++i)
        if (branch.branch_class[i] != 2 * branch.L_class[i])
            throw Error(ErrorCode::ValidationError, "branch class is not twice L");
    std::vector<long> ks;
    for (const auto& s : branch.singularities) {
        if (s.count < 1) throw Error(ErrorCode::ValidationError, "branch singularity count must be positive");
        const auto one = even_resolution_multiplicities(s, opts);
        for (long c = 0; c < s.count; ++c) ks.insert(ks.end(), one.begin(), one.end());
    }
    const LatticeVector& L = branch.L_class;
    return double_cover_invariants(lat.chiO, pairing(lat.canonical_class, lat.canonical_class, lat),
                                   pairing(L, L, lat), pairing(L, lat.canonical_class, lat), ks);
}

FibrationModel assemble_fibration(const CoverInvariants& cover, long g, long b, long q, long p_g,
                                  std::vector<FiberModel> fibers, bool semistable) {
    if (1 - q + p_g != cover.chiO_S)
        throw Error(ErrorCode::ChiMismatch, "1 - q + p_g = " + std::to_string(1 - q + p_g) +
                                                " but the cover has chi(O_S) = " + std::to_string(cover.chiO_S));
    FibrationModel m;
    m.g = g;
    m.b = b;
    m.q = q;
    m.p_g = p_g;
    m.c1_sq = cover.K_S_sq;
    m.c2 = cover.e_S;
    m.semistable = semistable;
    m.fibers = std::move(fibers);
    return m;
}

}  // namespace fibercheck
