#include "fibercheck/report.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "fibercheck/errors.hpp"

namespace fibercheck {

using nlohmann::json;

namespace {

std::string cell(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + cell(v[i]);
        return s + "]";
    }
    return v.dump();
}

class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str(const std::string& indent = "  ") const {
        std::vector<std::size_t> w(rows_[0].size(), 0);
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        std::ostringstream out;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            std::string line = indent;
            for (std::size_t i = 0; i < rows_[k].size(); ++i) {
                line += rows_[k][i];
                if (i + 1 < rows_[k].size()) line += std::string(w[i] - rows_[k][i].size() + 2, ' ');
            }
            out << line << '\n';
            if (k == 0) {
                std::size_t total = 0;
                for (std::size_t i = 0; i < w.size(); ++i) total += w[i] + (i + 1 < w.size() ? 2 : 0);
                out << indent << std::string(total, '-') << '\n';
            }
        }
        return out.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string key_values(const json& obj, const std::vector<std::string>& keys, const std::string& indent = "  ") {
    std::size_t w = 0;
    for (const auto& k : keys) w = std::max(w, k.size());
    std::ostringstream out;
    for (const auto& k : keys)
        if (obj.contains(k)) out << indent << k << std::string(w - k.size() + 2, ' ') << cell(obj.at(k)) << '\n';
    return out.str();
}

void list_lines(std::ostringstream& out, const json& rec, const char* key, const char* label) {
    if (!rec.contains(key)) return;
    for (const auto& w : rec.at(key)) out << label << ": " << w.get<std::string>() << '\n';
}

json tree_record(const GermResolution& n) { return tree_to_json(n); }

void render_tree(std::ostringstream& out, const json& n, int depth) {
    out << std::string(static_cast<std::size_t>(2 + 2 * depth), ' ') << "m=" << n.at("m").get<int>();
    if (n.contains("cluster_degree")) out << " x" << n.at("cluster_degree").get<int>();
    if (n.contains("center")) out << " centre";
    if (n.contains("terminal")) out << " " << n.at("terminal").get<std::string>();
    out << '\n';
    if (n.contains("children"))
        for (const auto& c : n.at("children")) render_tree(out, c, depth + 1);
}

const std::vector<std::string> kFiberColumns = {"name", "ell", "gF", "pa_red", "N_F", "mu_F", "e_F", "r_F",
                                                 "N_bar", "mu_bar", "pa_bar_red", "ell_bar", "alpha", "chi_top",
                                                 "m_sequence_all", "semistable"};

std::string fiber_table(const json& fibers) {
    Table t(kFiberColumns);
    std::vector<std::string> problems;
    for (const auto& f : fibers) {
        std::vector<std::string> row;
        for (const auto& k : kFiberColumns) row.push_back(f.contains(k) ? cell(f.at(k)) : "-");
        t.add(row);
        if (f.contains("error")) problems.push_back(f.at("name").get<std::string>() + ": " + f.at("error").get<std::string>());
        if (f.contains("warnings"))
            for (const auto& w : f.at("warnings"))
                problems.push_back(f.at("name").get<std::string>() + ": warning: " + w.get<std::string>());
    }
    std::string s = t.str();
    for (const auto& p : problems) s += "  " + p + "\n";
    return s;
}

}  // namespace

json rational_json(const Rational& r) { return r.get_str(); }

json germ_record(const std::string& input, const ResolutionOptions& opts, bool with_tree) {
    const BiPoly f = parse_polynomial(input);
    const Germ g = Germ::from_polynomial(f);
    const SingularityInvariants inv = analyze_germ(g, opts);
    json rec;
    rec["input"] = input;
    rec["equation"] = g.equation.to_string();
    rec["reduced_automatically"] = g.reduced_automatically;
    json warnings = json::array();
    if (g.reduced_automatically) warnings.push_back("germ is not reduced; reduced to " + g.equation.to_string());
    rec["warnings"] = warnings;
    rec["m"] = inv.m;
    rec["mu"] = inv.mu;
    rec["mu_oracle"] = milnor_jacobian_oracle(g, opts);
    rec["delta"] = inv.delta;
    rec["branches"] = inv.branches;
    rec["m_sequence"] = inv.m_sequence;
    rec["blowup_count"] = inv.blowup_count;
    rec["final_nodes"] = inv.final_nodes;
    rec["type"] = inv.m <= 1 ? "smooth" : (inv.mu == 1 ? "node" : "singular");
    if (with_tree) rec["tree"] = tree_record(minimal_partial_resolution(g, opts).tree);
    return rec;
}

json fiber_invariants_json(const FiberInvariants& inv) {
    return {{"ell", inv.ell},     {"gF", inv.gF},         {"pa_red", inv.pa_red},
            {"N_F", inv.N_F},     {"mu_F", inv.mu_F},     {"e_F", inv.e_F},
            {"m_sequence_all", inv.m_sequence_all},       {"r_F", inv.r_F},
            {"N_bar", inv.N_bar}, {"mu_bar", inv.mu_bar}, {"pa_bar_red", inv.pa_bar_red},
            {"ell_bar", inv.ell_bar}, {"alpha", inv.alpha}};
}

namespace {

json fiber_report_json(const FiberReport& fr) {
    json j = {{"name", fr.name}};
    if (fr.invariants) j.update(fiber_invariants_json(*fr.invariants));
    if (fr.chi_top) {
        j["chi_top"] = fr.chi_top->chi_top;
        j["chi_top_residual"] = fr.chi_top->residual;
    }
    j["semistable"] = fr.semistable;
    if (!fr.error.empty()) j["error"] = fr.error;
    if (!fr.warnings.empty()) j["warnings"] = fr.warnings;
    return j;
}

}  // namespace

json fibers_record(const FibrationModel& model, const ResolutionOptions& opts) {
    json fibers = json::array();
    bool ok = true;
    for (auto f : model.fibers) {
        FiberReport fr;
        fr.name = f.name;
        try {
            resolve_singularities(f, opts);
            for (const auto& p : f.singular_points)
                fr.warnings.insert(fr.warnings.end(), p.warnings.begin(), p.warnings.end());
            FiberInvariants inv = fiber_full_invariants(f);
            fr.invariants = inv;
            fr.chi_top = chi_top_identity_check(f);
            fr.semistable = is_semistable_fiber(f, inv);
            if (fr.chi_top->residual != 0) {
                fr.error = "IdentityViolation: chi_top residual " + std::to_string(fr.chi_top->residual);
                ok = false;
            }
        } catch (const Error& e) {
            if (!e.is_inconsistency()) throw;
            fr.error = e.what();
            ok = false;
        }
        fibers.push_back(fiber_report_json(fr));
    }
    return {{"name", model.name}, {"fiber_genus", model.g}, {"fibers", fibers}, {"consistent", ok}};
}

json audit_record(const AuditReport& r) {
    json rec;
    rec["name"] = r.name;
    rec["surface"] = {{"g", r.g},   {"b", r.b},         {"q", r.q},         {"p_g", r.p_g},
                      {"q_f", r.q_f}, {"chi_O", r.chi_O}, {"c1_sq", r.c1_sq}, {"c2", r.c2}};
    rec["semistable"] = r.semistable;
    rec["trivial"] = r.trivial;
    const auto& rel = r.relative;
    rec["relative"] = {{"chi_f", rel.chi_f}, {"K_f_sq", rel.K_f_sq}, {"e_f", rel.e_f},
                       {"h11", rel.h11},     {"h11_computed", rel.h11_computed},
                       {"s", rel.s},         {"s1", rel.s1},     {"s1_fibers", rel.s1_list}};
    rec["balance"] = {{"lhs", rational_json(r.balance.lhs)},
                      {"rhs", rational_json(r.balance.rhs)},
                      {"residual", rational_json(r.balance.residual)}};
    json fibers = json::array();
    for (const auto& f : r.fibers) fibers.push_back(fiber_report_json(f));
    rec["fibers"] = fibers;
    json rules = json::array();
    for (const auto& e : r.rules) {
        json j = {{"id", e.id}, {"statement", e.statement}, {"applicable", e.applicable}};
        if (e.applicable) {
            j["kind"] = e.identity ? "identity" : (e.strict ? "strict" : "inequality");
            j["lhs"] = rational_json(e.lhs);
            j["rhs"] = rational_json(e.rhs);
            j["margin"] = rational_json(e.margin);
            j["passed"] = e.passed;
        }
        if (!e.note.empty()) j["note"] = e.note;
        rules.push_back(j);
    }
    rec["rules"] = rules;
    if (r.rational_base) {
        const auto& d = *r.rational_base;
        rec["rational_base"] = {{"s1", d.s1},
                                {"s1_bound_holds", d.s1_bound_holds},
                                {"pg_genus", std::string(to_string(d.cond_pg_genus))},
                                {"h11", std::string(to_string(d.cond_h11))},
                                {"q", std::string(to_string(d.cond_q))},
                                {"balance_lhs", rational_json(d.balance.lhs)},
                                {"balance_rhs", rational_json(d.balance.rhs)}};
    } else {
        rec["rational_base"] = nullptr;
    }
    rec["warnings"] = r.warnings;
    rec["errors"] = r.errors;
    rec["consistent"] = r.consistent();
    return rec;
}

json cover_record(const FibrationDocument& doc, const AuditReport& report) {
    json rec;
    if (doc.cover && doc.cover_result) {
        const SurfaceLattice lat = doc.cover->lattice();
        const BranchSpec br = doc.cover->branch();
        std::vector<long> ks;
        for (const auto& s : br.singularities) {
            const auto one = even_resolution_multiplicities(s);
            for (long c = 0; c < s.count; ++c) ks.insert(ks.end(), one.begin(), one.end());
        }
        rec["cover"] = {{"rank", lat.rank()},
                        {"chiO_W", lat.chiO},
                        {"KW_sq", pairing(lat.canonical_class, lat.canonical_class, lat)},
                        {"L_sq", pairing(br.L_class, br.L_class, lat)},
                        {"L_dot_K", pairing(br.L_class, lat.canonical_class, lat)},
                        {"k", ks},
                        {"chiO_S", doc.cover_result->chiO_S},
                        {"K_S_sq", doc.cover_result->K_S_sq},
                        {"e_S", doc.cover_result->e_S}};
    } else {
        rec["cover"] = nullptr;
    }
    rec["audit"] = audit_record(report);
    return rec;
}

int exit_code_for(const Error& e) { return e.is_inconsistency() ? 2 : 1; }

CorpusEntry audit_file(const std::filesystem::path& path, const AuditOptions& opts) {
    CorpusEntry entry;
    entry.file = path.filename().string();
    try {
        const FibrationDocument doc = load_fibration_document(path, opts.resolution);
        entry.report = inequality_audit(doc.model, opts);
        entry.exit_code = entry.report->consistent() ? 0 : 2;
    } catch (const Error& e) {
        entry.exit_code = exit_code_for(e);
        entry.error = e.what();
    } catch (const std::exception& e) {
        entry.exit_code = 1;
        entry.error = e.what();
    }
    return entry;
}

std::vector<CorpusEntry> audit_corpus(const std::filesystem::path& dir, const AuditOptions& opts) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::ParseError, "not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<std::future<CorpusEntry>> jobs;
    for (const auto& f : files) jobs.push_back(std::async(std::launch::async, audit_file, f, opts));
    std::vector<CorpusEntry> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

json corpus_record(const std::string& directory, const std::vector<CorpusEntry>& entries) {
    json files = json::array();
    long passed = 0, failed = 0, errored = 0;
    for (const auto& e : entries) {
        json j = {{"file", e.file}, {"exit_code", e.exit_code}};
        j["status"] = e.exit_code == 0 ? "pass" : (e.exit_code == 2 ? "inconsistent" : "error");
        if (e.exit_code == 0) ++passed;
        else if (e.exit_code == 2) ++failed;
        else ++errored;
        if (!e.error.empty()) j["error"] = e.error;
        if (e.report) {
            j["name"] = e.report->name;
            j["residual"] = rational_json(e.report->balance.residual);
            json margins = json::object();
            for (const auto& r : e.report->rules)
                if (r.applicable && !r.identity) margins[r.id] = rational_json(r.margin);
            j["margins"] = margins;
            json failures = json::array();
            for (const auto& r : e.report->rules)
                if (r.applicable && !r.passed) failures.push_back(r.id);
            for (const auto& err : e.report->errors) failures.push_back(err);
            for (const auto& f : e.report->fibers)
                if (!f.error.empty()) failures.push_back(f.name + ": " + f.error);
            j["failures"] = failures;
        }
        files.push_back(j);
    }
    return {{"directory", directory},
            {"files", files},
            {"passed", passed},
            {"inconsistent", failed},
            {"errors", errored}};
}

std::string render_germ_text(const json& rec) {
    std::ostringstream out;
    out << "germ " << rec.at("input").get<std::string>() << '\n';
    list_lines(out, rec, "warnings", "warning");
    out << key_values(rec, {"equation", "type", "m", "mu", "mu_oracle", "delta", "branches", "m_sequence",
                            "blowup_count", "final_nodes"});
    if (rec.contains("tree")) {
        out << "partial resolution tree\n";
        render_tree(out, rec.at("tree"), 0);
    }
    return out.str();
}

std::string render_fibers_text(const json& rec) {
    std::ostringstream out;
    out << "fibers of " << rec.at("name").get<std::string>() << " (genus " << rec.at("fiber_genus").get<long>()
        << ")\n";
    out << fiber_table(rec.at("fibers"));
    out << "consistent: " << cell(rec.at("consistent")) << '\n';
    return out.str();
}

std::string render_audit_text(const json& rec) {
    std::ostringstream out;
    out << "audit " << rec.at("name").get<std::string>() << '\n';
    for (const auto& e : rec.at("errors")) out << "error: " << e.get<std::string>() << '\n';
    out << "surface\n" << key_values(rec.at("surface"), {"g", "b", "q", "p_g", "q_f", "chi_O", "c1_sq", "c2"});
    out << "  semistable  " << cell(rec.at("semistable")) << "\n  trivial     " << cell(rec.at("trivial")) << '\n';
    out << "relative invariants\n"
        << key_values(rec.at("relative"), {"chi_f", "K_f_sq", "e_f", "h11", "h11_computed", "s", "s1", "s1_fibers"});
    out << "h11 balance\n" << key_values(rec.at("balance"), {"lhs", "rhs", "residual"});
    if (!rec.at("fibers").empty()) out << "fibers\n" << fiber_table(rec.at("fibers"));
    out << "rules\n";
    Table t({"id", "kind", "lhs", "rhs", "margin", "status"});
    std::vector<std::string> notes;
    for (const auto& r : rec.at("rules")) {
        const std::string id = r.at("id").get<std::string>();
        if (!r.at("applicable").get<bool>()) {
            t.add({id, "-", "-", "-", "-", "n/a"});
        } else {
            t.add({id, cell(r.at("kind")), cell(r.at("lhs")), cell(r.at("rhs")), cell(r.at("margin")),
                   r.at("passed").get<bool>() ? "ok" : "FAIL"});
        }
        if (r.contains("note")) notes.push_back(id + ": " + r.at("note").get<std::string>());
    }
    out << t.str();
    for (const auto& n : notes) out << "  note " << n << '\n';
    if (!rec.at("rational_base").is_null())
        out << "rational base diagnosis\n"
            << key_values(rec.at("rational_base"),
                          {"s1", "s1_bound_holds", "pg_genus", "h11", "q", "balance_lhs", "balance_rhs"});
    list_lines(out, rec, "warnings", "warning");
    out << "consistent: " << cell(rec.at("consistent")) << '\n';
    return out.str();
}

std::string render_cover_text(const json& rec) {
    std::ostringstream out;
    if (!rec.at("cover").is_null())
        out << "double cover\n"
            << key_values(rec.at("cover"),
                          {"rank", "chiO_W", "KW_sq", "L_sq", "L_dot_K", "k", "chiO_S", "K_S_sq", "e_S"});
    out << render_audit_text(rec.at("audit"));
    return out.str();
}

std::string render_corpus_text(const json& rec) {
    std::ostringstream out;
    out << "corpus " << rec.at("directory").get<std::string>() << '\n';
    const std::vector<std::string> cols = {"h11-bound", "arakelov-s1", "arakelov-s", "arakelov-weak", "slope"};
    std::vector<std::string> header = {"file", "status", "residual"};
    header.insert(header.end(), cols.begin(), cols.end());
    Table t(header);
    std::vector<std::string> problems;
    for (const auto& f : rec.at("files")) {
        std::vector<std::string> row = {cell(f.at("file")), cell(f.at("status")),
                                        f.contains("residual") ? cell(f.at("residual")) : "-"};
        for (const auto& c : cols)
            row.push_back(f.contains("margins") && f.at("margins").contains(c) ? cell(f.at("margins").at(c)) : "-");
        t.add(row);
        const std::string name = f.at("file").get<std::string>();
        if (f.contains("error")) problems.push_back(name + ": " + f.at("error").get<std::string>());
        if (f.contains("failures"))
            for (const auto& x : f.at("failures")) problems.push_back(name + ": failed " + x.get<std::string>());
    }
    if (!rec.at("files").empty()) out << t.str();
    for (const auto& p : problems) out << "  " << p << '\n';
    out << "passed " << rec.at("passed").get<long>() << ", inconsistent " << rec.at("inconsistent").get<long>()
        << ", errors " << rec.at("errors").get<long>() << '\n';
    return out.str();
}

}  // namespace fibercheck
