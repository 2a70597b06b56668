#include <doctest.h>

#include "fiber_builders.hpp"
#include "fibercheck/errors.hpp"

using namespace fibercheck;
using namespace testing_support;

namespace {

std::vector<long> reduced_tuple(const FiberModel& f) {
    auto r = fiber_reduced_invariants(f);
    return {r.ell, r.gF, r.pa_red, r.N_F, r.mu_F, r.e_F};
}

}  // namespace

TEST_CASE("named kinds match the catalog") {
    for (int m = 2; m <= 6; ++m) {
        auto inv = named_kind_invariants("ordinary(" + std::to_string(m) + ")");
        CHECK(inv.mu == (m - 1) * (m - 1));
        CHECK(inv.delta == m * (m - 1) / 2);
        CHECK(inv.branches == m);
    }
    CHECK(named_kind_invariants("node").mu == 1);
    CHECK(named_kind_invariants("cusp").delta == 1);
    CHECK(named_kind_invariants("tacnode").mu == 3);
    CHECK(named_kind_invariants("tacnode").delta == 2);
    CHECK_THROWS_WITH_AS(named_kind_invariants("spike"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(named_kind_invariants("ordinary(1)"), doctest::Contains("ValidationError"), Error);
}

TEST_CASE("fiber_reduced_invariants examples") {
    CHECK(reduced_tuple(smooth_fiber(2)) == std::vector<long>{1, 2, 2, 0, 0, 0});
    CHECK(reduced_tuple(irreducible(2, 1, "node")) == std::vector<long>{1, 1, 2, 0, 1, 1});
    CHECK(reduced_tuple(elliptic_cover_fibers()[0]) == std::vector<long>{2, 1, 2, 0, 2, 2});
}

TEST_CASE("fiber validation errors") {
    FiberModel apart = fiber("apart", 2, {{"A", 1, 1}, {"B", 1, 1}}, {});
    CHECK_THROWS_WITH_AS(fiber_reduced_invariants(apart), doctest::Contains("DisconnectedFiber"), Error);
    FiberModel too_big = irreducible(1, 1, "node");
    CHECK_THROWS_WITH_AS(fiber_reduced_invariants(too_big), doctest::Contains("GenusMismatch"), Error);
    FiberModel reduced_short = irreducible(3, 1, "node");
    CHECK_THROWS_WITH_AS(fiber_reduced_invariants(reduced_short), doctest::Contains("GenusMismatch"), Error);
    FiberModel doubled = irreducible(3, 1, "node");
    doubled.components[0].multiplicity = 2;
    CHECK(fiber_reduced_invariants(doubled).N_F == 1);
    CHECK_THROWS_WITH_AS(fiber_reduced_invariants(fiber("x", 2, {{"A", 1, 1}}, {point({"Z"}, "node")})),
                         doctest::Contains("ParseError"), Error);
    FiberModel dup{"dup", {{"A", 1, 1}, {"A", 1, 1}}, {}, 2};
    CHECK_THROWS_WITH_AS(fiber_reduced_invariants(dup), doctest::Contains("duplicate"), Error);
    // a cusp has one branch, so it cannot join two components
    CHECK_THROWS_WITH_AS(fiber("c", 2, {{"A", 1, 1}, {"B", 0, 1}}, {point({"A", "B"}, "cusp")}),
                         doctest::Contains("branches"), Error);
}

TEST_CASE("partial_resolution_transform examples") {
    auto node = partial_resolution_transform(1, 0, 5, {});
    CHECK(node.mu_bar == 1);
    CHECK(node.N_bar == 0);
    CHECK(node.pa_bar_red == 5);
    auto cusp = partial_resolution_transform(2, 0, 1, {2, 2, 3});
    CHECK(cusp.mu_bar == 3);
    CHECK(cusp.N_bar == 1);
    CHECK(cusp.pa_bar_red == 0);
    auto tac = partial_resolution_transform(3, 0, 7, {2, 3});
    CHECK(tac.mu_bar == 3);
    CHECK(tac.N_bar == 1);
    CHECK(tac.pa_bar_red == 6);
    // (m-1)(m-2) is a product of consecutive integers, so the correction is always even
    for (int m = 2; m < 40; ++m) CHECK(partial_resolution_correction({m}) % 2 == 0);
    CHECK_THROWS_AS(partial_resolution_transform(3, 0, 1, {1, 3}), Error);
}

TEST_CASE("fiber_full_invariants examples") {
    auto cusp = fiber_full_invariants(irreducible(2, 1, "cusp"));
    CHECK(cusp.e_F == 2);
    CHECK(cusp.N_bar == 1);
    CHECK(cusp.alpha == 0);
    CHECK(cusp.mu_bar == 3);
    CHECK(cusp.ell_bar == 4);
    CHECK(cusp.gF + cusp.N_bar + cusp.alpha == 2);

    auto nodal = fiber_full_invariants(irreducible(2, 1, "node"));
    CHECK(nodal.alpha == 1);
    CHECK(nodal.N_bar == 0);

    auto f3 = fiber_full_invariants(elliptic_cover_fibers()[2]);
    CHECK(f3.gF == 2);
    CHECK(f3.alpha == 0);
    CHECK(f3.N_bar == 0);
    CHECK(f3.e_F == 1);
}

TEST_CASE("explicit trees and source precedence") {
    // cusp supplied as its partial resolution tree
    ResolutionNode n3{3, 1, true, TerminalKind::None,
                      {{2, 1, false, TerminalKind::Node, {}}, {2, 1, false, TerminalKind::Node, {}}, {2, 1, false, TerminalKind::Node, {}}}};
    ResolutionNode n2b{2, 1, true, TerminalKind::None, {n3}};
    ResolutionNode root{2, 1, true, TerminalKind::None, {n2b}};
    ExplicitTree tree{root, 1};
    auto inv = tree_invariants(tree);
    CHECK(inv.mu == 2);
    CHECK(inv.delta == 1);
    CHECK(inv.m_sequence == std::vector<int>{2, 2, 3});

    FiberModel f{"tree", {{"C", 1, 1}}, {}, 2};
    SingularPointRecord p;
    p.incident_components = {"C"};
    p.source.tree = tree;
    p.source.kind = "cusp";
    p.source.germ = parse_polynomial("x^2 - y^3");
    f.singular_points.push_back(p);
    resolve_singularities(f);
    CHECK(fiber_full_invariants(f).alpha == 0);

    f.singular_points[0].source.kind = "tacnode";
    CHECK_THROWS_WITH_AS(resolve_singularities(f), doctest::Contains("disagree"), Error);

    ExplicitTree pending{{2, 1, false, TerminalKind::Pending, {}}, 2};
    CHECK_THROWS_AS(tree_invariants(pending), Error);
    ExplicitTree bad_parity{root, 2};
    CHECK_THROWS_AS(tree_invariants(bad_parity), Error);
}

TEST_CASE("branch germs give local intersections") {
    FiberModel f{"two", {{"A", 0, 1}, {"B", 1, 1}}, {}, 2};
    SingularPointRecord p;
    p.incident_components = {"A", "B"};
    p.source.component_germs = {{"A", parse_polynomial("y - x^2")}, {"B", parse_polynomial("y + x^2")}};
    f.singular_points.push_back(p);
    resolve_singularities(f);
    const auto& s = f.singular_points[0].resolved;
    CHECK(s.mu == 3);  // tacnode
    CHECK(s.local_intersections.at({"A", "B"}) == 2);
    auto inv = fiber_full_invariants(f);
    CHECK(inv.pa_red == 2);
    CHECK(inv.N_bar == 1);
}

TEST_CASE("chi_top identity examples") {
    auto smooth = chi_top_identity_check(smooth_fiber(2));
    CHECK(smooth.chi_top == -2);
    CHECK(smooth.residual == 0);
    auto nodal = chi_top_identity_check(irreducible(2, 1, "node"));
    CHECK(nodal.chi_top == -1);
    CHECK(nodal.residual == 0);
    auto two = chi_top_identity_check(elliptic_cover_fibers()[2]);
    CHECK(two.chi_top == -1);
    CHECK(two.residual == 0);
}

TEST_CASE("random fibers satisfy the fiber identities") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const long extra = trial % 3 == 0 ? static_cast<long>(rng() % 3) : 0;
        FiberModel f = random_fiber(rng, extra, trial % 4 == 0);
        auto inv = fiber_full_invariants(f);
        CHECK(inv.e_F == 2 * inv.N_F + inv.mu_F);
        CHECK(inv.e_F == 2 * inv.N_bar + inv.mu_bar - inv.r_F);
        CHECK(f.ambient_genus == inv.gF + inv.N_bar + inv.alpha);
        CHECK(inv.e_F >= 0);
        CHECK((inv.e_F == 0) == (inv.N_F == 0 && inv.mu_F == 0));
        CHECK(0 <= inv.N_F);
        CHECK(inv.N_F <= inv.N_bar);
        CHECK(inv.N_bar <= f.ambient_genus);
        CHECK(inv.alpha >= 0);
        CHECK(chi_top_identity_check(f).residual == 0);
    }
}

TEST_CASE("semistable structure") {
    auto ok = elliptic_cover_fibers()[0];
    CHECK(is_semistable_fiber(ok, fiber_full_invariants(ok)));
    auto cusp = irreducible(2, 1, "cusp");
    CHECK_FALSE(is_semistable_fiber(cusp, fiber_full_invariants(cusp)));
}
