#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibercheck/bipoly.hpp"

namespace fibercheck {

struct ResolutionOptions {
    /// Maximum number of nested blow-ups before ResolutionDepthExceeded.
    int max_depth = 64;
    /// Largest truncation degree tried by the Jacobian oracle.
    int oracle_degree_cap = 64;
};

/// A plane-curve germ at the origin. `reduced` asserts the equation has no
/// repeated factor through the origin.
struct Germ {
    BiPoly equation;
    bool reduced = false;
    /// Set when from_polynomial had to drop repeated factors.
    bool reduced_automatically = false;

    /// Validates that f vanishes at the origin and replaces it by its
    /// squarefree part when needed (flagging reduced_automatically).
    static Germ from_polynomial(const BiPoly& f);
};

/// A point of the exceptional curve reached by blowing up the origin, with
/// the transformed curve recentred there. `cluster_degree` > 1 marks a set of
/// conjugate points handled together over an extension field.
struct InfinitelyNearPoint {
    BiPoly curve;
    TangentDirection direction;
    int cluster_degree = 1;
    int chart = 0;  // 0: finite slope, 1: vertical direction
    std::string key;
};

/// Points where the strict transform of f (order m at the origin) meets the
/// exceptional curve, in deterministic order (chart, then factor text).
/// Each returned curve is the strict transform only.
std::vector<InfinitelyNearPoint> exceptional_points(const BiPoly& f, int m);

enum class TerminalKind { None, Smooth, Node, Pending };

std::string_view to_string(TerminalKind kind);

/// Node of the minimal partial resolution tree. `multiplicity` is the
/// multiplicity of the reduced total transform at the point.
struct ResolutionNode {
    int multiplicity = 0;
    int cluster_degree = 1;
    bool is_blowup_center = false;
    TerminalKind terminal = TerminalKind::None;
    std::vector<ResolutionNode> children;
};

using GermResolution = ResolutionNode;

struct SingularityInvariants {
    int m = 0;
    long mu = 0;
    long delta = 0;
    long branches = 1;
    std::vector<int> m_sequence;
    long blowup_count = 0;
    long final_nodes = 0;
    /// Local intersection numbers between labelled branches (unordered pairs, first < second).
    std::map<std::pair<std::string, std::string>, long> local_intersections;
    bool reduced_automatically = false;
};

BiPoly squarefree_reduce(const BiPoly& f);
/// True when no repeated factor of f passes through the origin.
bool is_locally_reduced(const BiPoly& f);

bool is_ordinary_double_point(const Germ& g, const ResolutionOptions& opts = {});
long milnor_recursive(const Germ& g, const ResolutionOptions& opts = {});
long milnor_jacobian_oracle(const Germ& g, const ResolutionOptions& opts = {});
std::pair<long, long> delta_and_branches(const Germ& g, const ResolutionOptions& opts = {});

struct PartialResolution {
    std::vector<int> m_sequence;
    long final_nodes = 0;
    GermResolution tree;
};

PartialResolution minimal_partial_resolution(const Germ& g, const ResolutionOptions& opts = {});

/// m_sequence of an ordinary m-fold point: [m] for m >= 3, [] for m = 2.
std::vector<int> ordinary_point_resolution(int m, const ResolutionOptions& opts = {});

/// m_sequence, blow-up count and node count read off a resolution tree
/// (cluster degrees multiply along paths; centres listed breadth first).
PartialResolution summarize_tree(const GermResolution& tree);

/// Sum of (m_i - 1)(m_i - 2) over a multiplicity sequence.
long partial_resolution_correction(const std::vector<int>& m_sequence);

/// Everything the fiber model needs about one singular point, with the
/// Milnor relation and the local node-count identity asserted.
SingularityInvariants analyze_germ(const Germ& g, const ResolutionOptions& opts = {});

/// Local intersection multiplicity at the origin via Noether's formula
/// (sum of products of multiplicities over shared infinitely near points).
long intersection_multiplicity(const BiPoly& f, const BiPoly& g, const ResolutionOptions& opts = {});

}  // namespace fibercheck
