#pragma once

#include <string>

#include <json.hpp>

#include "fibercheck/errors.hpp"
#include "fibercheck/io.hpp"

namespace fibercheck {

// Every report is first built as a JSON record; the text form is rendered
// from that record, so both always carry the same numbers.

nlohmann::json rational_json(const Rational& r);

nlohmann::json germ_record(const std::string& input, const ResolutionOptions& opts, bool with_tree);
nlohmann::json fiber_invariants_json(const FiberInvariants& inv);
nlohmann::json fibers_record(const FibrationModel& model, const ResolutionOptions& opts);
nlohmann::json audit_record(const AuditReport& report);
nlohmann::json cover_record(const FibrationDocument& doc, const AuditReport& report);

/// Summary row of one corpus entry. `exit_code` follows the audit convention.
struct CorpusEntry {
    std::string file;
    int exit_code = 0;
    std::string error;
    std::optional<AuditReport> report;
};

/// 2 for mathematically inconsistent data, 1 for anything else.
int exit_code_for(const Error& e);

/// Parses and audits one file without throwing library errors.
CorpusEntry audit_file(const std::filesystem::path& path, const AuditOptions& opts);

/// Audits every *.json file of a directory concurrently; entries come back sorted by file name.
std::vector<CorpusEntry> audit_corpus(const std::filesystem::path& dir, const AuditOptions& opts);

nlohmann::json corpus_record(const std::string& directory, const std::vector<CorpusEntry>& entries);

std::string render_germ_text(const nlohmann::json& rec);
std::string render_fibers_text(const nlohmann::json& rec);
std::string render_audit_text(const nlohmann::json& rec);
std::string render_cover_text(const nlohmann::json& rec);
std::string render_corpus_text(const nlohmann::json& rec);

}  // namespace fibercheck
