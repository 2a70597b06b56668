#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibercheck/germ.hpp"

namespace fibercheck {

struct ComponentRecord {
    std::string id;
    long geometric_genus = 0;
    long multiplicity = 1;
};

/// Minimal partial resolution supplied combinatorially. The tree alone does
/// not fix the number of branches, so it is declared alongside.
struct ExplicitTree {
    GermResolution root;
    long branches = 0;
};

/// The ways a singular point can be described. When several are present they
/// must agree; the tree takes precedence over the germ, the germ over the kind.
struct SingularitySource {
    std::optional<std::string> kind;   // node | cusp | tacnode | ordinary(m)
    std::optional<BiPoly> germ;
    std::map<std::string, BiPoly> component_germs;  // branch equations labelled by component
    std::optional<ExplicitTree> tree;
};

struct SingularPointRecord {
    std::vector<std::string> incident_components;
    SingularitySource source;
    long count = 1;
    bool is_resolved = false;
    SingularityInvariants resolved;
    std::vector<std::string> warnings;
};

struct FiberModel {
    std::string name;
    std::vector<ComponentRecord> components;
    std::vector<SingularPointRecord> singular_points;
    long ambient_genus = 1;
};

struct ReducedFiberInvariants {
    long ell = 0;
    long gF = 0;
    long pa_red = 0;
    long N_F = 0;
    long mu_F = 0;
    long e_F = 0;
};

struct PartialTransform {
    long mu_bar = 0;
    long N_bar = 0;
    long pa_bar_red = 0;
};

struct FiberInvariants {
    long ell = 0;
    long gF = 0;
    long pa_red = 0;
    long N_F = 0;
    long mu_F = 0;
    long e_F = 0;
    std::vector<int> m_sequence_all;
    long r_F = 0;
    long N_bar = 0;
    long mu_bar = 0;
    long pa_bar_red = 0;
    long ell_bar = 0;
    long alpha = 0;
};

struct ChiTopCheck {
    long chi_top = 0;
    long residual = 0;
};

/// Representative equation of a named kind: node, cusp, tacnode, ordinary(m).
BiPoly canonical_germ(const std::string& kind);

/// Canonical invariants of a named singularity kind.
SingularityInvariants named_kind_invariants(const std::string& kind, const ResolutionOptions& opts = {});

/// Invariants read off a supplied resolution tree.
SingularityInvariants tree_invariants(const ExplicitTree& tree);

/// Fills `resolved` for every singular point from its sources, checking that
/// multiple sources agree and that branch counts cover the incident components.
void resolve_singularities(FiberModel& model, const ResolutionOptions& opts = {});

/// Connectivity of the component / singular point incidence graph.
bool fiber_connected(const FiberModel& model);

ReducedFiberInvariants fiber_reduced_invariants(const FiberModel& model);

PartialTransform partial_resolution_transform(long mu, long N, long pa_red, const std::vector<int>& m_sequence);

FiberInvariants fiber_full_invariants(const FiberModel& model);

ChiTopCheck chi_top_identity_check(const FiberModel& model);

/// All components of multiplicity one, every singular point a node, N_F = 0.
bool is_semistable_fiber(const FiberModel& model, const FiberInvariants& inv);

}  // namespace fibercheck
