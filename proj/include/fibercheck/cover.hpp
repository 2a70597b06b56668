#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibercheck/audit.hpp"

namespace fibercheck {

using LatticeVector = std::vector<long>;

/// Declared part of a surface's Neron-Severi lattice, with enough data for
/// double cover arithmetic.
struct SurfaceLattice {
    std::vector<std::vector<long>> gram;
    LatticeVector canonical_class;
    long chiO = 1;
    std::optional<long> euler;  // topological Euler number when known
    std::vector<std::string> basis_labels;

    std::size_t rank() const { return gram.size(); }
    /// Throws ValidationError on a malformed or non-symmetric form, or a failed Noether check.
    void validate() const;
};

long pairing(const LatticeVector& u, const LatticeVector& v, const SurfaceLattice& lat);

SurfaceLattice blow_up_lattice(const SurfaceLattice& lat, const std::string& label);

SurfaceLattice projective_plane();
SurfaceLattice quadric_surface();      // P^1 x P^1
SurfaceLattice elliptic_ruled_product();  // E x P^1, basis (E x pt, pt x P^1)

/// A singular point of the branch curve. Exactly one description is expected;
/// a tree lists the branch multiplicity at every point of the even resolution.
struct BranchSingularity {
    std::optional<std::string> kind;
    std::optional<BiPoly> germ;
    std::optional<GermResolution> tree;
    long count = 1;
};

struct BranchSpec {
    LatticeVector branch_class;
    LatticeVector L_class;
    std::vector<BranchSingularity> singularities;
};

struct CoverInvariants {
    long chiO_S = 0;
    long K_S_sq = 0;
    long e_S = 0;
};

/// k = floor(m/2) at every infinitely near point met by the canonical
/// resolution of the double cover, repeated by cluster degree.
std::vector<long> even_resolution_multiplicities(const BranchSingularity& sing, const ResolutionOptions& opts = {});

CoverInvariants double_cover_invariants(long chiO_W, long KW_sq, long L_sq, long L_dot_K, const std::vector<long>& k_list);

/// Pairs the branch data against the lattice and applies double_cover_invariants.
CoverInvariants double_cover_from_branch(const SurfaceLattice& lat, const BranchSpec& branch,
                                         const ResolutionOptions& opts = {});

FibrationModel assemble_fibration(const CoverInvariants& cover, long g, long b, long q, long p_g,
                                  std::vector<FiberModel> fibers, bool semistable = true);

}  // namespace fibercheck
