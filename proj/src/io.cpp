#include "fibercheck/io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fibercheck/errors.hpp"

namespace fibercheck {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at " + path);
}

// Object view that rejects unknown keys up front.
class Obj {
public:
    Obj(const json& j, std::string path, std::initializer_list<const char*> keys) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) parse_fail(path_, "expected an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : j.items())
            if (!allowed.count(k)) parse_fail(path_, "unknown key '" + k + "'");
    }

    bool has(const char* key) const { return j_.contains(key); }
    const json& at(const char* key) const {
        if (!j_.contains(key)) parse_fail(path_, "missing key '" + std::string(key) + "'");
        return j_.at(key);
    }
    std::string path(const char* key) const { return path_ + "." + key; }
    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
};

long as_long(const json& j, const std::string& path) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(std::numeric_limits<long>::max()))
            parse_fail(path, "integer out of range");
        return j.get<long>();
    }
    if (j.is_number_float()) parse_fail(path, "floating point numbers are not allowed; use an integer or \"a/b\"");
    if (j.is_string()) {
        Rational r;
        const std::string s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("+-0123456789/ ") != std::string::npos || r.set_str(s, 10) != 0 ||
            r.get_den() == 0)
            parse_fail(path, "'" + s + "' is not an exact rational");
        r.canonicalize();
        if (r.get_den() != 1)
            parse_fail(path, "value " + s + " must be an integer");
        if (!r.get_num().fits_slong_p()) parse_fail(path, "integer out of range");
        return r.get_num().get_si();
    }
    parse_fail(path, "expected an integer");
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) parse_fail(path, "expected true or false");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path, "expected a string");
    return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array");
    return j;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

BiPoly as_poly(const json& j, const std::string& path) {
    const std::string text = as_string(j, path);
    try {
        return parse_polynomial(text);
    } catch (const Error& e) {
        parse_fail(path, std::string("bad polynomial: ") + e.what());
    }
}

LatticeVector as_vector(const json& j, const std::string& path) {
    LatticeVector v;
    std::size_t i = 0;
    for (const auto& x : as_array(j, path)) v.push_back(as_long(x, idx(path, i++)));
    return v;
}

std::string check_kind(const json& j, const std::string& path) {
    std::string kind = as_string(j, path);
    try {
        canonical_germ(kind);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) parse_fail(path, e.what());
        throw;
    }
    return kind;
}

GermResolution parse_tree_node(const json& j, const std::string& path) {
    Obj o(j, path, {"m", "cluster_degree", "center", "terminal", "children"});
    GermResolution n;
    const long m = as_long(o.at("m"), o.path("m"));
    if (m < 0 || m > std::numeric_limits<int>::max()) parse_fail(o.path("m"), "multiplicity out of range");
    n.multiplicity = static_cast<int>(m);
    if (o.has("cluster_degree")) {
        const long c = as_long(o.at("cluster_degree"), o.path("cluster_degree"));
        if (c > std::numeric_limits<int>::max() || c < std::numeric_limits<int>::min())
            parse_fail(o.path("cluster_degree"), "out of range");
        n.cluster_degree = static_cast<int>(c);
    }
    if (o.has("center")) n.is_blowup_center = as_bool(o.at("center"), o.path("center"));
    if (o.has("terminal")) {
        const std::string t = as_string(o.at("terminal"), o.path("terminal"));
        if (t == "smooth") n.terminal = TerminalKind::Smooth;
        else if (t == "node") n.terminal = TerminalKind::Node;
        else if (t == "pending") n.terminal = TerminalKind::Pending;
        else parse_fail(o.path("terminal"), "terminal must be smooth, node or pending");
    }
    if (o.has("children")) {
        std::size_t i = 0;
        for (const auto& c : as_array(o.at("children"), o.path("children")))
            n.children.push_back(parse_tree_node(c, idx(o.path("children"), i++)));
    }
    return n;
}

SingularPointRecord parse_singularity(const json& j, const std::string& path) {
    Obj o(j, path, {"at", "kind", "germ", "tree", "branch_germs", "count"});
    SingularPointRecord p;
    std::size_t i = 0;
    for (const auto& c : as_array(o.at("at"), o.path("at"))) p.incident_components.push_back(as_string(c, idx(o.path("at"), i++)));
    if (p.incident_components.empty()) parse_fail(o.path("at"), "a singular point must lie on some component");
    if (o.has("kind")) p.source.kind = check_kind(o.at("kind"), o.path("kind"));
    if (o.has("germ")) p.source.germ = as_poly(o.at("germ"), o.path("germ"));
    if (o.has("tree")) {
        Obj t(o.at("tree"), o.path("tree"), {"branches", "root"});
        ExplicitTree tree;
        tree.branches = as_long(t.at("branches"), t.path("branches"));
        tree.root = parse_tree_node(t.at("root"), t.path("root"));
        p.source.tree = tree;
    }
    if (o.has("branch_germs")) {
        const json& bg = o.at("branch_germs");
        if (!bg.is_object()) parse_fail(o.path("branch_germs"), "expected an object of component id to polynomial");
        for (const auto& [id, poly] : bg.items())
            p.source.component_germs[id] = as_poly(poly, o.path("branch_germs") + "." + id);
    }
    if (!p.source.kind && !p.source.germ && !p.source.tree && p.source.component_germs.empty())
        parse_fail(path, "singular point needs kind, germ, tree or branch_germs");
    if (o.has("count")) p.count = as_long(o.at("count"), o.path("count"));
    return p;
}

FiberModel parse_fiber(const json& j, const std::string& path, long g, std::size_t index) {
    Obj o(j, path, {"name", "components", "singularities"});
    FiberModel f;
    f.name = o.has("name") ? as_string(o.at("name"), o.path("name")) : "F" + std::to_string(index + 1);
    f.ambient_genus = g;
    std::size_t i = 0;
    for (const auto& c : as_array(o.at("components"), o.path("components"))) {
        const std::string cp = idx(o.path("components"), i++);
        Obj co(c, cp, {"id", "geometric_genus", "multiplicity"});
        ComponentRecord rec;
        rec.id = as_string(co.at("id"), co.path("id"));
        rec.geometric_genus = as_long(co.at("geometric_genus"), co.path("geometric_genus"));
        if (co.has("multiplicity")) rec.multiplicity = as_long(co.at("multiplicity"), co.path("multiplicity"));
        f.components.push_back(rec);
    }
    std::set<std::string> ids;
    for (const auto& c : f.components)
        if (!ids.insert(c.id).second) parse_fail(o.path("components"), "duplicate component id '" + c.id + "'");
    if (o.has("singularities")) {
        i = 0;
        for (const auto& s : as_array(o.at("singularities"), o.path("singularities"))) {
            const std::string sp = idx(o.path("singularities"), i++);
            auto rec = parse_singularity(s, sp);
            for (const auto& id : rec.incident_components)
                if (!ids.count(id)) parse_fail(sp + ".at", "unknown component id '" + id + "'");
            f.singular_points.push_back(std::move(rec));
        }
    }
    return f;
}

BranchSingularity parse_branch_singularity(const json& j, const std::string& path) {
    Obj o(j, path, {"kind", "germ", "tree", "count"});
    BranchSingularity s;
    if (o.has("kind")) s.kind = check_kind(o.at("kind"), o.path("kind"));
    if (o.has("germ")) s.germ = as_poly(o.at("germ"), o.path("germ"));
    if (o.has("tree")) s.tree = parse_tree_node(o.at("tree"), o.path("tree"));
    if (int(s.kind.has_value()) + int(s.germ.has_value()) + int(s.tree.has_value()) != 1) parse_fail(path, "branch singularity needs exactly one of kind, germ, tree");
    if (o.has("count")) s.count = as_long(o.at("count"), o.path("count"));
    return s;
}

CoverBlock parse_cover(const json& j, const std::string& path) {
    Obj o(j, path, {"lattice", "K", "chiO", "euler", "labels", "blowups", "L", "branch", "branch_singularities", "q",
                    "p_g", "h11"});
    CoverBlock c;
    const json& lat = o.at("lattice");
    if (lat.is_string()) {
        const std::string name = lat.get<std::string>();
        if (name == "P2") c.declared = projective_plane();
        else if (name == "P1xP1") c.declared = quadric_surface();
        else if (name == "ExP1") c.declared = elliptic_ruled_product();
        else parse_fail(o.path("lattice"), "unknown lattice preset '" + name + "' (P2, P1xP1, ExP1)");
        c.preset = name;
        for (const char* k : {"K", "chiO", "euler", "labels"})
            if (o.has(k)) parse_fail(o.path(k), "not allowed together with a lattice preset");
    } else {
        std::size_t i = 0;
        for (const auto& row : as_array(lat, o.path("lattice"))) c.declared.gram.push_back(as_vector(row, idx(o.path("lattice"), i++)));
        c.declared.canonical_class = as_vector(o.at("K"), o.path("K"));
        c.declared.chiO = as_long(o.at("chiO"), o.path("chiO"));
        if (o.has("euler")) c.declared.euler = as_long(o.at("euler"), o.path("euler"));
        if (o.has("labels")) {
            i = 0;
            for (const auto& l : as_array(o.at("labels"), o.path("labels")))
                c.declared.basis_labels.push_back(as_string(l, idx(o.path("labels"), i++)));
        }
    }
    if (o.has("blowups")) {
        std::size_t i = 0;
        for (const auto& l : as_array(o.at("blowups"), o.path("blowups"))) c.blowups.push_back(as_string(l, idx(o.path("blowups"), i++)));
    }
    c.L = as_vector(o.at("L"), o.path("L"));
    if (o.has("branch")) c.branch_class = as_vector(o.at("branch"), o.path("branch"));
    if (o.has("branch_singularities")) {
        std::size_t i = 0;
        for (const auto& s : as_array(o.at("branch_singularities"), o.path("branch_singularities")))
            c.branch_singularities.push_back(parse_branch_singularity(s, idx(o.path("branch_singularities"), i++)));
    }
    c.q = as_long(o.at("q"), o.path("q"));
    c.p_g = as_long(o.at("p_g"), o.path("p_g"));
    if (o.has("h11")) c.h11 = as_long(o.at("h11"), o.path("h11"));
    return c;
}

json vector_json(const LatticeVector& v) {
    json a = json::array();
    for (long x : v) a.push_back(x);
    return a;
}

}  // namespace

SurfaceLattice CoverBlock::lattice() const {
    SurfaceLattice lat = declared;
    for (const auto& label : blowups) lat = blow_up_lattice(lat, label);
    return lat;
}

BranchSpec CoverBlock::branch() const {
    BranchSpec b;
    b.L_class = L;
    if (branch_class) {
        b.branch_class = *branch_class;
    } else {
        for (long x : L) b.branch_class.push_back(2 * x);
    }
    b.singularities = branch_singularities;
    return b;
}

FibrationDocument parse_fibration_json(const json& j, const ResolutionOptions& opts) {
    Obj o(j, "$", {"name", "fiber_genus", "base_genus", "surface", "cover", "semistable", "trivial", "fibers"});
    FibrationDocument doc;
    FibrationModel& m = doc.model;
    if (o.has("name")) m.name = as_string(o.at("name"), o.path("name"));
    m.g = as_long(o.at("fiber_genus"), o.path("fiber_genus"));
    m.b = as_long(o.at("base_genus"), o.path("base_genus"));
    if (o.has("semistable")) m.semistable = as_bool(o.at("semistable"), o.path("semistable"));
    if (o.has("trivial")) m.trivial = as_bool(o.at("trivial"), o.path("trivial"));
    if (o.has("fibers")) {
        std::size_t i = 0;
        for (const auto& f : as_array(o.at("fibers"), o.path("fibers"))) {
            m.fibers.push_back(parse_fiber(f, idx(o.path("fibers"), i), m.g, i));
            ++i;
        }
    }
    if (o.has("surface") == o.has("cover")) parse_fail("$", "exactly one of 'surface' and 'cover' is required");
    if (o.has("surface")) {
        Obj s(o.at("surface"), o.path("surface"), {"q", "p_g", "c1_sq", "c2", "h11"});
        m.q = as_long(s.at("q"), s.path("q"));
        m.p_g = as_long(s.at("p_g"), s.path("p_g"));
        if (s.has("c1_sq")) m.c1_sq = as_long(s.at("c1_sq"), s.path("c1_sq"));
        if (s.has("c2")) m.c2 = as_long(s.at("c2"), s.path("c2"));
        if (s.has("h11")) m.h11 = as_long(s.at("h11"), s.path("h11"));
    } else {
        doc.cover = parse_cover(o.at("cover"), o.path("cover"));
        const CoverInvariants ci = double_cover_from_branch(doc.cover->lattice(), doc.cover->branch(), opts);
        doc.cover_result = ci;
        FibrationModel assembled =
            assemble_fibration(ci, m.g, m.b, doc.cover->q, doc.cover->p_g, std::move(m.fibers), m.semistable);
        assembled.name = m.name;
        assembled.trivial = m.trivial;
        assembled.h11 = doc.cover->h11;
        m = std::move(assembled);
    }
    return doc;
}

FibrationDocument parse_fibration_text(const std::string& text, const ResolutionOptions& opts) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return parse_fibration_json(j, opts);
}

FibrationDocument load_fibration_document(const std::filesystem::path& path, const ResolutionOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        FibrationDocument doc = parse_fibration_text(ss.str(), opts);
        if (doc.model.name.empty()) doc.model.name = path.stem().string();
        return doc;
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
    }
}

FibrationModel parse_fibration_file(const std::filesystem::path& path, const ResolutionOptions& opts) {
    return load_fibration_document(path, opts).model;
}

json tree_to_json(const GermResolution& n) {
    json j = {{"m", n.multiplicity}};
    if (n.cluster_degree != 1) j["cluster_degree"] = n.cluster_degree;
    if (n.is_blowup_center) j["center"] = true;
    if (n.terminal != TerminalKind::None) j["terminal"] = std::string(to_string(n.terminal));
    if (!n.children.empty()) {
        json c = json::array();
        for (const auto& ch : n.children) c.push_back(tree_to_json(ch));
        j["children"] = c;
    }
    return j;
}

json serialize_fibration(const FibrationDocument& doc) {
    const FibrationModel& m = doc.model;
    json j;
    j["name"] = m.name;
    j["fiber_genus"] = m.g;
    j["base_genus"] = m.b;
    if (doc.cover) {
        const CoverBlock& c = *doc.cover;
        json cj;
        if (c.preset) {
            cj["lattice"] = *c.preset;
        } else {
            json gram = json::array();
            for (const auto& row : c.declared.gram) gram.push_back(vector_json(row));
            cj["lattice"] = gram;
            cj["K"] = vector_json(c.declared.canonical_class);
            cj["chiO"] = c.declared.chiO;
            if (c.declared.euler) cj["euler"] = *c.declared.euler;
            if (!c.declared.basis_labels.empty()) cj["labels"] = c.declared.basis_labels;
        }
        if (!c.blowups.empty()) cj["blowups"] = c.blowups;
        cj["L"] = vector_json(c.L);
        if (c.branch_class) cj["branch"] = vector_json(*c.branch_class);
        json sings = json::array();
        for (const auto& s : c.branch_singularities) {
            json sj;
            if (s.kind) sj["kind"] = *s.kind;
            if (s.germ) sj["germ"] = s.germ->to_string();
            if (s.tree) sj["tree"] = tree_to_json(*s.tree);
            sj["count"] = s.count;
            sings.push_back(sj);
        }
        cj["branch_singularities"] = sings;
        cj["q"] = c.q;
        cj["p_g"] = c.p_g;
        if (c.h11) cj["h11"] = *c.h11;
        j["cover"] = cj;
    } else {
        json s = {{"q", m.q}, {"p_g", m.p_g}};
        if (m.c1_sq) s["c1_sq"] = *m.c1_sq;
        if (m.c2) s["c2"] = *m.c2;
        if (m.h11) s["h11"] = *m.h11;
        j["surface"] = s;
    }
    j["semistable"] = m.semistable;
    j["trivial"] = m.trivial;
    json fibers = json::array();
    for (const auto& f : m.fibers) {
        json fj;
        fj["name"] = f.name;
        json comps = json::array();
        for (const auto& c : f.components)
            comps.push_back({{"id", c.id}, {"geometric_genus", c.geometric_genus}, {"multiplicity", c.multiplicity}});
        fj["components"] = comps;
        json sings = json::array();
        for (const auto& p : f.singular_points) {
            json pj;
            pj["at"] = p.incident_components;
            if (p.source.kind) pj["kind"] = *p.source.kind;
            if (p.source.germ) pj["germ"] = p.source.germ->to_string();
            if (p.source.tree) pj["tree"] = {{"branches", p.source.tree->branches}, {"root", tree_to_json(p.source.tree->root)}};
            if (!p.source.component_germs.empty()) {
                json bg;
                for (const auto& [id, poly] : p.source.component_germs) bg[id] = poly.to_string();
                pj["branch_germs"] = bg;
            }
            pj["count"] = p.count;
            sings.push_back(pj);
        }
        fj["singularities"] = sings;
        fibers.push_back(fj);
    }
    j["fibers"] = fibers;
    return j;
}

}  // namespace fibercheck
