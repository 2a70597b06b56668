#include <doctest.h>

#include <random>

#include "fiber_builders.hpp"
#include "fibercheck/cover.hpp"
#include "fibercheck/errors.hpp"

using namespace fibercheck;
using namespace testing_support;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();

BranchSingularity named(const std::string& kind, long count = 1) {
    BranchSingularity s;
    s.kind = kind;
    s.count = count;
    return s;
}

BranchSingularity from_germ(const BiPoly& f) {
    BranchSingularity s;
    s.germ = f;
    return s;
}

std::vector<long> ones(std::size_t n) { return std::vector<long>(n, 1); }

}  // namespace

TEST_CASE("pairing") {
    SurfaceLattice hyp{{{0, 1}, {1, 0}}, {-2, 0}, 0, 0, {}};
    CHECK(pairing({1, 1}, {1, 1}, hyp) == 2);
    CHECK(pairing({1}, {1}, projective_plane()) == 1);
    SurfaceLattice d{{{1, 0}, {0, -1}}, {-3, 1}, 1, 4, {}};
    CHECK(pairing({5, -2}, {2, -1}, d) == 8);
    CHECK_THROWS_WITH_AS(pairing({1, 0}, {1}, d), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("blow_up_lattice") {
    auto p = blow_up_lattice(projective_plane(), "E");
    CHECK(p.rank() == 2);
    CHECK(p.gram == std::vector<std::vector<long>>{{1, 0}, {0, -1}});
    CHECK(p.canonical_class == LatticeVector{-3, 1});
    CHECK(p.chiO == 1);
    auto pp = blow_up_lattice(p, "E2");
    CHECK(pp.gram == std::vector<std::vector<long>>{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
    auto e = blow_up_lattice(elliptic_ruled_product(), "E");
    CHECK(e.canonical_class == LatticeVector{-2, 0, 1});

    SurfaceLattice lat = quadric_surface();
    long K2 = pairing(lat.canonical_class, lat.canonical_class, lat);
    for (int i = 0; i < 5; ++i) {
        lat = blow_up_lattice(lat, "E" + std::to_string(i));
        const long next = pairing(lat.canonical_class, lat.canonical_class, lat);
        CHECK(next == K2 - 1);
        K2 = next;
        CHECK(lat.chiO == 1);
        CHECK_NOTHROW(lat.validate());
    }
}

TEST_CASE("lattice presets satisfy Noether") {
    for (const auto& lat : {projective_plane(), quadric_surface(), elliptic_ruled_product()}) CHECK_NOTHROW(lat.validate());
    SurfaceLattice bad = projective_plane();
    bad.euler = 4;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("ValidationError"), Error);
    SurfaceLattice asym{{{0, 1}, {2, 0}}, {0, 0}, 0, std::nullopt, {}};
    CHECK_THROWS_AS(asym.validate(), Error);
}

TEST_CASE("even resolution of branch singularities") {
    CHECK(even_resolution_multiplicities(named("node")) == std::vector<long>{1});
    CHECK(even_resolution_multiplicities(named("ordinary(4)")) == std::vector<long>{2});
    CHECK(even_resolution_multiplicities(named("tacnode")) == std::vector<long>{1, 1});
    CHECK(even_resolution_multiplicities(named("cusp")) == std::vector<long>{1});
    // odd multiplicity 2j+1: k = j, then 2j+1 nodes where the sheets cross the exceptional curve
    CHECK(even_resolution_multiplicities(named("ordinary(3)")) == ones(4));
    CHECK(even_resolution_multiplicities(named("ordinary(5)")) == std::vector<long>{2, 1, 1, 1, 1, 1});
    CHECK(even_resolution_multiplicities(named("ordinary(6)")) == std::vector<long>{3});
}

TEST_CASE("simple singularities have every k equal to 1") {
    // A_n: y^2 = x^(n+1) needs ceil(n/2) blow-ups
    for (int n = 1; n <= 9; ++n) {
        auto ks = even_resolution_multiplicities(from_germ(Y * Y - X.pow(static_cast<unsigned>(n + 1))));
        CHECK(ks == ones(static_cast<std::size_t>((n + 1) / 2)));
    }
    for (const BiPoly& f : {Y.pow(3) - X.pow(4), Y.pow(3) - Y * X.pow(3), Y.pow(3) - X.pow(5),
                            X * (Y * Y - X.pow(3)), X * (Y * Y - X.pow(4))}) {
        auto ks = even_resolution_multiplicities(from_germ(f));
        CHECK_FALSE(ks.empty());
        for (long k : ks) CHECK(k == 1);
    }
    // x^2 + y^2: a node whose tangents are conjugate over Q(i)
    CHECK(even_resolution_multiplicities(from_germ(X * X + Y * Y)) == std::vector<long>{1});
    // (y^2 - 2x^2)(y - x) is an ordinary triple point with two conjugate sheets
    CHECK(even_resolution_multiplicities(from_germ((Y * Y - X * X * FieldScalar(2)) * (Y - X))) == ones(4));
}

TEST_CASE("non-simple branch points") {
    // y^4 - x^5 (E_12 type): m = 4, strict transform t^4 - x has a point of contact order 4 with E
    auto ks = even_resolution_multiplicities(from_germ(Y.pow(4) - X.pow(5)));
    CHECK(ks.front() == 2);
    CHECK_THROWS_WITH_AS(even_resolution_multiplicities(from_germ(Y * Y * X)), doctest::Contains("NonReducedGerm"),
                         Error);
    CHECK_THROWS_WITH_AS(even_resolution_multiplicities(from_germ(Y + 1)), doctest::Contains("InvalidGerm"), Error);
    ResolutionOptions tight;
    tight.max_depth = 2;
    CHECK_THROWS_WITH_AS(even_resolution_multiplicities(from_germ(Y * Y - X.pow(12)), tight),
                         doctest::Contains("ResolutionDepthExceeded"), Error);
}

TEST_CASE("branch trees") {
    // quadruple point whose strict transform has a tacnode on E
    GermResolution root;
    root.multiplicity = 4;
    root.is_blowup_center = true;
    GermResolution child;
    child.multiplicity = 2;
    child.cluster_degree = 2;
    root.children.push_back(child);
    BranchSingularity s;
    s.tree = root;
    CHECK(even_resolution_multiplicities(s) == std::vector<long>{2, 1, 1});
}

TEST_CASE("double_cover_invariants examples") {
    auto k3 = double_cover_invariants(1, 9, 9, -9, {});
    CHECK(k3.chiO_S == 2);
    CHECK(k3.K_S_sq == 0);
    CHECK(k3.e_S == 24);
    auto octic = double_cover_invariants(1, 9, 16, -12, {2});
    CHECK(octic.chiO_S == 3);
    CHECK(octic.K_S_sq == 0);
    CHECK(octic.e_S == 36);
    auto elliptic = double_cover_invariants(0, 0, 2, -2, {1, 1});
    CHECK(elliptic.chiO_S == 0);
    CHECK(elliptic.K_S_sq == -4);
    CHECK(elliptic.e_S == 4);
    CHECK_THROWS_WITH_AS(double_cover_invariants(1, 9, 9, -8, {}), doctest::Contains("NonIntegralResult"), Error);
    CHECK_THROWS_WITH_AS(double_cover_invariants(1, 9, 9, -9, {0}), doctest::Contains("ValidationError"), Error);
}

TEST_CASE("double covers from lattice data") {
    BranchSpec sextic{{6}, {3}, {}};
    auto k3 = double_cover_from_branch(projective_plane(), sextic);
    CHECK(k3.chiO_S == 2);
    CHECK(k3.e_S == 24);

    BranchSpec octic{{8}, {4}, {named("ordinary(4)")}};
    auto o = double_cover_from_branch(projective_plane(), octic);
    CHECK(o.chiO_S == 3);
    CHECK(o.K_S_sq == 0);

    BranchSpec elliptic{{2, 2}, {1, 1}, {named("node", 2)}};
    auto c = double_cover_from_branch(elliptic_ruled_product(), elliptic);
    CHECK(c.chiO_S == 0);
    CHECK(c.K_S_sq == -4);
    CHECK(c.e_S == 4);

    BranchSpec odd{{2, 1}, {1, 1}, {}};
    CHECK_THROWS_WITH_AS(double_cover_from_branch(elliptic_ruled_product(), odd), doctest::Contains("ValidationError"),
                         Error);
    BranchSpec wrong_rank{{2}, {1}, {}};
    CHECK_THROWS_WITH_AS(double_cover_from_branch(elliptic_ruled_product(), wrong_rank),
                         doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("nodes do not change the smooth-branch invariants") {
    for (long n = 0; n < 6; ++n) {
        auto smooth = double_cover_invariants(1, 9, 16, -12, {});
        auto nodal = double_cover_invariants(1, 9, 16, -12, ones(static_cast<std::size_t>(n)));
        CHECK(smooth.chiO_S == nodal.chiO_S);
        CHECK(smooth.K_S_sq == nodal.K_S_sq);
    }
}

TEST_CASE("Euler number of covers with simple branch points matches the topological count") {
    // With only simple singularities, e(S) = 2 e(W) - e(B_smooth) = 2 e(W) + B.(B + K).
    std::mt19937 rng(4242);
    const std::vector<std::string> simple = {"node", "cusp", "tacnode", "ordinary(3)"};
    for (int trial = 0; trial < 200; ++trial) {
        SurfaceLattice lat = (trial % 3 == 0) ? projective_plane()
                             : (trial % 3 == 1) ? quadric_surface()
                                                : elliptic_ruled_product();
        const int blowups = static_cast<int>(rng() % 3);
        for (int i = 0; i < blowups; ++i) lat = blow_up_lattice(lat, "E" + std::to_string(i));
        LatticeVector L(lat.rank());
        for (auto& c : L) c = static_cast<long>(rng() % 7) - 2;
        LatticeVector B(L);
        for (auto& c : B) c *= 2;
        BranchSpec spec{B, L, {}};
        const int nsing = static_cast<int>(rng() % 4);
        for (int i = 0; i < nsing; ++i) spec.singularities.push_back(named(simple[rng() % simple.size()], 1 + static_cast<long>(rng() % 2)));
        auto c = double_cover_from_branch(lat, spec);
        LatticeVector BK(B);
        for (std::size_t i = 0; i < BK.size(); ++i) BK[i] += lat.canonical_class[i];
        CHECK(c.e_S == 2 * *lat.euler + pairing(B, BK, lat));
        CHECK(c.e_S + c.K_S_sq == 12 * c.chiO_S);
    }
}

TEST_CASE("assemble_fibration") {
    auto cover = double_cover_invariants(0, 0, 2, -2, {1, 1});
    auto m = assemble_fibration(cover, 2, 0, 1, 0, elliptic_cover_fibers());
    CHECK(m.g == 2);
    CHECK(m.b == 0);
    CHECK(m.q == 1);
    CHECK(m.p_g == 0);
    CHECK(m.c1_sq == -4);
    CHECK(m.c2 == 4);
    CHECK(m.fibers.size() == 6);
    auto rep = inequality_audit(m);
    CHECK(rep.consistent());
    CHECK(rep.relative.s == 6);
    CHECK(rep.relative.s1 == 4);
    CHECK(rep.balance.residual == 0);

    CoverInvariants stated{0, -3, 3};
    auto pencil = assemble_fibration(stated, 2, 0, 1, 0, pencil_fibers());
    CHECK(pencil.c1_sq == -3);
    CHECK(pencil.c2 == 3);

    CHECK_THROWS_WITH_AS(assemble_fibration(cover, 2, 0, 2, 0, {}), doctest::Contains("ChiMismatch"), Error);
}
