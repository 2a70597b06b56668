#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <set>

#include "fibercheck/report.hpp"

using namespace fibercheck;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures = FIBERCHECK_FIXTURE_DIR;

json fixture_json(const std::string& name) {
    std::ifstream in(kFixtures / name);
    return json::parse(in);
}

FibrationDocument parse_with(const std::string& name, const std::function<void(json&)>& edit) {
    json j = fixture_json(name);
    edit(j);
    return parse_fibration_json(j);
}

std::multiset<std::string> numbers_in(const std::string& s) {
    std::multiset<std::string> out;
    static const std::regex num("-?[0-9]+(/[0-9]+)?");
    for (auto it = std::sregex_iterator(s.begin(), s.end(), num); it != std::sregex_iterator(); ++it) out.insert(it->str());
    return out;
}

}  // namespace

TEST_CASE("shipped fixtures parse") {
    auto m = parse_fibration_file(kFixtures / "elliptic-double-cover.json");
    CHECK(m.g == 2);
    CHECK(m.b == 0);
    CHECK(m.fibers.size() == 6);
    CHECK(m.c1_sq == -4);
    CHECK(m.h11 == 6);

    auto doc = load_fibration_document(kFixtures / "elliptic-double-cover-branch.json");
    REQUIRE(doc.cover_result);
    CHECK(doc.cover_result->chiO_S == 0);
    CHECK(doc.cover_result->K_S_sq == -4);
    CHECK(doc.cover_result->e_S == 4);
    CHECK(doc.model.c1_sq == -4);
    CHECK(doc.model.c2 == 4);
    CHECK(doc.model.q == 1);
}

TEST_CASE("round trip of every fixture") {
    for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        const auto first = load_fibration_document(entry.path());
        const json once = serialize_fibration(first);
        const auto second = parse_fibration_json(once);
        CHECK(serialize_fibration(second) == once);
        CHECK(second.model.fibers.size() == first.model.fibers.size());
        CHECK(second.model.c1_sq == first.model.c1_sq);
        CHECK(second.model.c2 == first.model.c2);
    }
}

TEST_CASE("round trip keeps germs, trees and branch germs") {
    const std::string text = R"({
      "name": "sources", "fiber_genus": 2, "base_genus": 0,
      "surface": {"q": 0, "p_g": 0},
      "fibers": [{"name": "T", "components": [{"id": "A", "geometric_genus": 0}, {"id": "B", "geometric_genus": 1}],
        "singularities": [
          {"at": ["A", "B"], "branch_germs": {"A": "y - x^2", "B": "y + x^2"}, "kind": "tacnode"},
          {"at": ["A"], "germ": "y^2 - x^3", "tree": {"branches": 1, "root": {"m": 2, "center": true,
             "children": [{"m": 2, "center": true, "children": [{"m": 3, "center": true,
               "children": [{"m": 1, "terminal": "smooth"}, {"m": 2, "terminal": "node"}, {"m": 2, "terminal": "node"}, {"m": 2, "terminal": "node"}]}]}]}}}
        ]}]
    })";
    auto doc = parse_fibration_text(text);
    auto again = parse_fibration_json(serialize_fibration(doc));
    CHECK(serialize_fibration(again) == serialize_fibration(doc));
    auto f = again.model.fibers[0];
    resolve_singularities(f);
    CHECK(f.singular_points[0].resolved.local_intersections.at({"A", "B"}) == 2);
    CHECK(f.singular_points[1].resolved.m_sequence == std::vector<int>{2, 2, 3});
}

TEST_CASE("malformed files are rejected with the offending key") {
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json", [](json& j) { j["genuss"] = 2; }),
                         doctest::Contains("unknown key 'genuss'"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json", [](json& j) { j["surface"]["c2"] = 4.0; }),
                         doctest::Contains("$.surface.c2"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json", [](json& j) { j["surface"]["h11"] = "13/2"; }),
                         doctest::Contains("must be an integer"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json", [](json& j) { j["surface"].erase("q"); }),
                         doctest::Contains("missing key 'q'"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json",
                                    [](json& j) { j["fibers"][2]["singularities"][0]["at"][1] = "C9"; }),
                         doctest::Contains("$.fibers[2].singularities[0].at"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json",
                                    [](json& j) { j["fibers"][0]["singularities"][0]["kind"] = "swallowtail"; }),
                         doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json",
                                    [](json& j) { j["fibers"][0]["singularities"][0]["germ"] = "y^2 x"; }),
                         doctest::Contains("bad polynomial"), Error);
    CHECK_THROWS_WITH_AS(parse_fibration_text("{ not json"), doctest::Contains("invalid JSON"), Error);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover.json", [](json& j) { j["cover"] = json::object(); }),
                         doctest::Contains("exactly one of 'surface' and 'cover'"), Error);
    try {
        parse_with("elliptic-double-cover.json", [](json& j) { j["genuss"] = 2; });
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK_FALSE(e.is_inconsistency());
    }
}

TEST_CASE("exact rationals are accepted when integral") {
    auto doc = parse_with("elliptic-double-cover.json", [](json& j) { j["surface"]["h11"] = "12/2"; });
    CHECK(doc.model.h11 == 6);
}

TEST_CASE("q below b is reported by the audit") {
    auto doc = parse_with("elliptic-double-cover.json", [](json& j) { j["base_genus"] = 2; });
    auto rep = inequality_audit(doc.model);
    REQUIRE_FALSE(rep.errors.empty());
    CHECK(rep.errors[0].find("q >= b required") != std::string::npos);
}

TEST_CASE("cover blocks") {
    auto wrong_q = [](json& j) { j["cover"]["q"] = 2; };
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover-branch.json", wrong_q), doctest::Contains("ChiMismatch"),
                         Error);
    auto explicit_lattice = parse_with("elliptic-double-cover-branch.json", [](json& j) {
        j["cover"]["lattice"] = json::array({json::array({0, 1}), json::array({1, 0})});
        j["cover"]["K"] = json::array({-2, 0});
        j["cover"]["chiO"] = 0;
        j["cover"]["euler"] = 0;
    });
    CHECK(explicit_lattice.cover_result->K_S_sq == -4);
    CHECK_THROWS_WITH_AS(parse_with("elliptic-double-cover-branch.json", [](json& j) { j["cover"]["K"] = json::array({1}); }),
                         doctest::Contains("not allowed together with a lattice preset"), Error);
    auto blown = parse_with("elliptic-double-cover-branch.json", [](json& j) {
        j["cover"]["blowups"] = json::array({"E"});
        j["cover"]["L"] = json::array({1, 1, 0});
        j["cover"]["branch"] = json::array({2, 2, 0});
    });
    CHECK(blown.cover_result->K_S_sq == -4 - 2);
    CHECK(blown.cover_result->chiO_S == 0);
}

TEST_CASE("text and JSON reports carry the same numbers") {
    for (const std::string name : {"elliptic-double-cover.json", "genus2-pencil.json", "cusp-fiber.json"}) {
        auto doc = load_fibration_document(kFixtures / name);
        AuditOptions opts;
        opts.strict_extras = true;
        auto rec = audit_record(inequality_audit(doc.model, opts));
        const std::string text = render_audit_text(rec);
        std::multiset<std::string> from_json;
        std::function<void(const json&)> collect = [&](const json& v) {
            if (v.is_object() || v.is_array()) {
                for (const auto& x : v) collect(x);
            } else if (v.is_number_integer()) {
                from_json.insert(v.dump());
            } else if (v.is_string() && std::regex_match(v.get<std::string>(), std::regex("-?[0-9]+(/[0-9]+)?"))) {
                from_json.insert(v.get<std::string>());
            }
        };
        for (const char* key : {"surface", "relative", "balance"}) collect(rec.at(key));
        for (const auto& r : rec.at("rules"))
            for (const char* key : {"lhs", "rhs", "margin"})
                if (r.contains(key)) collect(r.at(key));
        const auto in_text = numbers_in(text);
        for (const auto& n : from_json) CHECK(in_text.count(n) >= from_json.count(n));
        CHECK(render_audit_text(rec) == text);
        CHECK(audit_record(inequality_audit(doc.model, opts)).dump() == rec.dump());
    }
}

TEST_CASE("corpus audit orders by file name") {
    AuditOptions opts;
    auto entries = audit_corpus(kFixtures, opts);
    REQUIRE(entries.size() >= 5);
    for (std::size_t i = 1; i < entries.size(); ++i) CHECK(entries[i - 1].file < entries[i].file);
    for (const auto& e : entries) CHECK(e.exit_code == 0);
    auto rec = corpus_record("fixtures", entries);
    for (const auto& f : rec.at("files"))
        if (f.at("file") == "elliptic-double-cover.json" || f.at("file") == "genus2-pencil.json")
            CHECK(f.at("margins").at("arakelov-s1") == "0");
}
