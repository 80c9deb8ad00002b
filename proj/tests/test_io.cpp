#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fincat/fincat.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fincat;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json reserialize(const json& j) {
    std::string kind = file_kind(j);
    if (kind == "category") return category_to_json(category_from_json(j));
    if (kind == "setfunctor") return setfunctor_to_json(setfunctor_from_json(j));
    if (kind == "functor") return functor_to_json(functor_from_json(j));
    if (kind == "weighted-diagram") return weighted_diagram_to_json(weighted_diagram_from_json(j));
    if (kind == "profunctor") return profunctor_to_json(profunctor_from_json(j));
    if (kind == "monoidal") return monoidal_to_json(monoidal_from_json(j));
    FAIL("unknown kind ", kind);
    return j;
}

} // namespace

TEST_CASE("every fixture is a canonical-form fixed point of parse/serialize") {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(FINCAT_FIXTURES)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().filename().string());
        std::string raw = slurp(entry.path());
        json j = parse_file(entry.path().string());
        CHECK(serialize(reserialize(j)) == raw);
        ++seen;
    }
    CHECK(seen >= 20);
}

TEST_CASE("category fixture parses to the expected structure") {
    FinCategory arr = category_from_json(parse_file(std::string(FINCAT_FIXTURES) + "/arr.cat.json"));
    CHECK(arr.objects.size() == 2);
    CHECK(arr.morphisms.size() == 3);
    require_valid(arr);
}

TEST_CASE("parse errors carry positioned codes") {
    json bad = category_to_json(cat_arr());
    bad["composition"].push_back(json::array({"a", "a", "ghost"}));
    CHECK_THROWS_WITH_AS(static_cast<void>(category_from_json(bad)), "UnresolvedReference: ghost", Error);

    json mistyped = category_to_json(cat_arr());
    mistyped["morphisms"].push_back(json{{"name", "b"}, {"dom", "0"}, {"cod", "nowhere"}});
    CHECK_THROWS_AS(static_cast<void>(category_from_json(mistyped)), Error);

    json broken = category_to_json(cat_idem());
    broken["composition"] = json::array(); // drops e.e = e
    try {
        static_cast<void>(category_from_json(broken));
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.code == "ValidationFailed");
    }
}

TEST_CASE("malformed JSON raises a syntax error") {
    std::filesystem::path p = std::filesystem::temp_directory_path() / "fincat_bad.json";
    std::ofstream(p) << "{ \"kind\": ";
    try {
        static_cast<void>(parse_file(p.string()));
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(e.code == "SyntaxError");
    }
    std::filesystem::remove(p);
}

TEST_CASE("DOT emission: dashed virtual arrows, stable output") {
    FinCategory arr = cat_arr();
    SetFunctor f = hom_functor(arr, "0", Variance::Covariant);
    std::string dot = emit_dot(extend(arr, f).category);
    std::size_t dashed = 0;
    for (std::size_t pos = 0; (pos = dot.find("style=dashed", pos)) != std::string::npos; ++pos) ++dashed;
    CHECK(dashed == 2); // one per element of F
    CHECK(dot.find("\"__E\" [shape=point]") != std::string::npos);

    std::string none = emit_dot(extend(arr, empty_functor(arr, Variance::Covariant)).category);
    CHECK(none.find("style=dashed") == std::string::npos);

    // byte-identical across runs and across re-parses
    CHECK(dot == emit_dot(extend(arr, f).category));
    json round = category_to_json(extend(arr, f).category);
    CHECK(dot == emit_dot(category_from_json(round)));
}

TEST_CASE("collage DOT renders heteromorphisms dashed") {
    std::string dot = emit_dot(collage(hom_profunctor(cat_arr())).category);
    std::size_t dashed = 0;
    for (std::size_t pos = 0; (pos = dot.find("style=dashed", pos)) != std::string::npos; ++pos) ++dashed;
    CHECK(dashed == 3); // |hom(0,0)| + |hom(0,1)| + |hom(1,1)|
}

TEST_CASE("profunctor and monoidal fixtures survive semantic round-trips") {
    Profunctor p = profunctor_from_json(parse_file(std::string(FINCAT_FIXTURES) + "/arr-hom.prof.json"));
    CHECK(profunctors_isomorphic(p, hom_profunctor(cat_arr())));
    StrictMonoidalStructure m = monoidal_from_json(parse_file(std::string(FINCAT_FIXTURES) + "/z3disc.mon.json"));
    CHECK(m.tobj("A", "B") == "I");
    WeightedDiagram wd = weighted_diagram_from_json(parse_file(std::string(FINCAT_FIXTURES) + "/arr-yoneda0.wd.json"));
    std::optional<CLimit> l = weighted_limit_in_C(wd);
    REQUIRE(l.has_value());
    CHECK(l->object == "0");
}
