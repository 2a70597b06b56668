#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "fibercheck/report.hpp"

using namespace fibercheck;
using nlohmann::json;

namespace {

struct Flags {
    std::string format = "text";
    bool strict_extras = false;
    int max_depth = 0;
};

ResolutionOptions resolution(const Flags& f) {
    ResolutionOptions o;
    if (const char* env = std::getenv("FIBERCHECK_MAX_DEPTH")) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(env, &used);
            if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
            o.max_depth = v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, std::string("FIBERCHECK_MAX_DEPTH must be a positive integer, got '") +
                                                   env + "'");
        }
    }
    if (f.max_depth > 0) o.max_depth = f.max_depth;
    return o;
}

AuditOptions audit_options(const Flags& f) {
    AuditOptions o;
    o.strict_extras = f.strict_extras;
    o.resolution = resolution(f);
    return o;
}

void emit(const Flags& f, const json& rec, std::string (*text)(const json&)) {
    if (f.format == "json") std::cout << rec.dump(2) << '\n';
    else std::cout << text(rec);
}

int run_germ(const Flags& f, const std::string& poly, bool tree) {
    emit(f, germ_record(poly, resolution(f), tree), render_germ_text);
    return 0;
}

int run_fiber(const Flags& f, const std::string& path) {
    const auto opts = resolution(f);
    const FibrationDocument doc = load_fibration_document(path, opts);
    const json rec = fibers_record(doc.model, opts);
    emit(f, rec, render_fibers_text);
    return rec.at("consistent").get<bool>() ? 0 : 2;
}

int run_audit(const Flags& f, const std::string& path) {
    const auto opts = audit_options(f);
    const FibrationDocument doc = load_fibration_document(path, opts.resolution);
    const AuditReport rep = inequality_audit(doc.model, opts);
    emit(f, audit_record(rep), render_audit_text);
    return rep.consistent() ? 0 : 2;
}

int run_cover(const Flags& f, const std::string& path) {
    const auto opts = audit_options(f);
    const FibrationDocument doc = load_fibration_document(path, opts.resolution);
    if (!doc.cover) throw Error(ErrorCode::ParseError, path + " has no cover block");
    const AuditReport rep = inequality_audit(doc.model, opts);
    emit(f, cover_record(doc, rep), render_cover_text);
    return rep.consistent() ? 0 : 2;
}

int run_corpus(const Flags& f, const std::string& dir) {
    const auto entries = audit_corpus(dir, audit_options(f));
    emit(f, corpus_record(dir, entries), render_corpus_text);
    int code = 0;
    for (const auto& e : entries) code = std::max(code, e.exit_code);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fibercheck: exact invariants of fibred surfaces and their singular fibers"};
    app.require_subcommand(1);
    Flags flags;
    auto add_common = [&flags](CLI::App* sub) {
        sub->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--max-depth", flags.max_depth, "blow-up depth cap (overrides FIBERCHECK_MAX_DEPTH)")
            ->check(CLI::PositiveNumber);
    };

    std::string poly, path;
    auto* germ = app.add_subcommand("germ", "invariants of a plane curve germ at the origin");
    germ->add_option("polynomial", poly, "germ equation, e.g. \"y^2-x^3\"")->required();
    add_common(germ);
    auto* resolve = app.add_subcommand("resolve", "germ invariants with the minimal partial resolution tree");
    resolve->add_option("polynomial", poly, "germ equation")->required();
    add_common(resolve);
    auto* fiber = app.add_subcommand("fiber", "invariants of every fiber in a fibration file");
    fiber->add_option("file", path, "fibration file")->required();
    add_common(fiber);
    auto* audit = app.add_subcommand("audit", "identity and inequality audit of a fibration file");
    audit->add_option("file", path, "fibration file")->required();
    audit->add_flag("--strict-extras", flags.strict_extras, "also check the slope and canonical class bounds");
    add_common(audit);
    auto* cover = app.add_subcommand("cover", "double cover invariants and the audit of the resulting fibration");
    cover->add_option("file", path, "fibration file with a cover block")->required();
    cover->add_flag("--strict-extras", flags.strict_extras, "also check the slope and canonical class bounds");
    add_common(cover);
    auto* corpus = app.add_subcommand("corpus", "audit every .json file of a directory");
    corpus->add_option("directory", path, "directory of fibration files")->required();
    corpus->add_flag("--strict-extras", flags.strict_extras, "also check the slope and canonical class bounds");
    add_common(corpus);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*germ) return run_germ(flags, poly, false);
        if (*resolve) return run_germ(flags, poly, true);
        if (*fiber) return run_fiber(flags, path);
        if (*audit) return run_audit(flags, path);
        if (*cover) return run_cover(flags, path);
        if (*corpus) return run_corpus(flags, path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
