#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fibercheck/cover.hpp"

namespace fibercheck {

/// Surface data described as a double cover instead of a surface block.
struct CoverBlock {
    std::optional<std::string> preset;  // "P2", "P1xP1", "ExP1"; otherwise the lattice is explicit
    std::vector<std::string> blowups;   // labels of points blown up on the declared lattice
    SurfaceLattice declared;            // the lattice before blow-ups
    LatticeVector L;
    std::optional<LatticeVector> branch_class;  // defaults to 2L
    std::vector<BranchSingularity> branch_singularities;
    long q = 0;
    long p_g = 0;
    std::optional<long> h11;

    SurfaceLattice lattice() const;
    BranchSpec branch() const;
};

/// A parsed fibration file. The model's c1_sq and c2 are filled from the
/// cover when a cover block is given.
struct FibrationDocument {
    FibrationModel model;
    std::optional<CoverBlock> cover;
    std::optional<CoverInvariants> cover_result;
};

FibrationDocument parse_fibration_json(const nlohmann::json& doc, const ResolutionOptions& opts = {});
FibrationDocument parse_fibration_text(const std::string& text, const ResolutionOptions& opts = {});
FibrationDocument load_fibration_document(const std::filesystem::path& path, const ResolutionOptions& opts = {});
FibrationModel parse_fibration_file(const std::filesystem::path& path, const ResolutionOptions& opts = {});

/// Inverse of parse_fibration_json; parsing the result gives the same document.
nlohmann::json serialize_fibration(const FibrationDocument& doc);

nlohmann::json tree_to_json(const GermResolution& node);

}  // namespace fibercheck
