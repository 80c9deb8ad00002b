#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fincat/catalog.hpp>
#include <fincat/elements.hpp>

using namespace fincat;

namespace {

SetFunctor discrete_diagram(const FinCategory& c, std::map<std::string, std::vector<std::string>> sets) {
    SetFunctor d;
    d.base = c;
    d.variance = Variance::Covariant;
    for (auto& [o, elts] : sets) d.sets[o] = FinSet("D@" + o, std::move(elts));
    for (const auto& o : c.objects) d.actions[c.id(o)] = FinFunction::identity(d.at(o));
    return d;
}

} // namespace

TEST_CASE("category of elements: objects and arrows are counted by the weight") {
    FinCategory arr = cat_arr();
    SetFunctor w = hom_functor(arr, "0", Variance::Covariant);
    ElementsCategory el = category_of_elements(w);
    CHECK(el.base.objects.size() == 2); // (0,id_0) and (1,a)
    CHECK(el.base.morphisms.size() == 3);
    CHECK(validate_category(el.base).ok);
    el.projection.validate();

    // contravariant weight on the same category
    SetFunctor wc = hom_functor(arr, "1", Variance::Contravariant);
    ElementsCategory elc = category_of_elements(wc);
    CHECK(elc.base.objects.size() == 2); // (0,a) and (1,id_1)
    CHECK(validate_category(elc.base).ok);

    for (const auto& c : catalog_categories()) {
        Rng rng(5);
        SetFunctor f = random_set_functor(c, rng, Variance::Covariant, 3);
        ElementsCategory e = category_of_elements(f);
        CAPTURE(c.name);
        CHECK(e.base.objects.size() == f.total_size());
        std::size_t expect = 0;
        for (const auto& m : c.morphisms) expect += f.at(m.dom).size();
        CHECK(e.base.morphisms.size() == expect);
    }
}

TEST_CASE("limits of set diagrams: products and equalizers") {
    // product over the discrete pair
    FinCategory pair = cat_pair();
    SetFunctor d = discrete_diagram(pair, {{"a", {"x", "y"}}, {"b", {"u", "v", "w"}}});
    CHECK(limit_set(d).carrier.size() == 6);
    CHECK(colimit_set(d).carrier.size() == 5);

    // equalizer / coequalizer over the parallel pair
    FinCategory pp = cat_parpair();
    SetFunctor e;
    e.base = pp;
    e.variance = Variance::Covariant;
    e.sets["0"] = FinSet("D0", {"x", "y"});
    e.sets["1"] = FinSet("D1", {"u", "v"});
    e.actions["id_0"] = FinFunction::identity(e.sets["0"]);
    e.actions["id_1"] = FinFunction::identity(e.sets["1"]);
    e.actions["a"] = FinFunction(e.sets["0"], e.sets["1"], {{"x", "u"}, {"y", "v"}});
    e.actions["b"] = FinFunction(e.sets["0"], e.sets["1"], {{"x", "u"}, {"y", "u"}});
    e.validate();
    SetLimit lim = limit_set(e);
    CHECK(lim.carrier.size() == 1); // only x agrees under both arrows
    CHECK(lim.legs.at("0")(lim.carrier.elements[0]) == "x");
    CHECK(colimit_set(e).carrier.size() == 1); // v ~ y ~ u ~ x collapses all

    // limit legs form a cone: D(m) . leg_dom = leg_cod
    for (const auto& m : e.base.morphisms)
        CHECK(FinFunction::compose(e.action(m.name), lim.legs.at(m.dom)) == lim.legs.at(m.cod));
}

TEST_CASE("limit over the empty category is a point, colimit is empty") {
    FinCategory none;
    none.name = "Zero";
    SetFunctor d;
    d.base = none;
    d.variance = Variance::Covariant;
    CHECK(limit_set(d).carrier.size() == 1);
    CHECK(colimit_set(d).carrier.size() == 0);
}

TEST_CASE("representable weights pick out the diagram value") {
    // lim^{hom(x,-)} D = D(x) and colim^{hom(-,x)} D = D(x)
    for (const auto& c : catalog_categories()) {
        Rng rng(13);
        CAPTURE(c.name);
        SetFunctor d = random_set_functor(c, rng, Variance::Covariant, 3);
        for (const auto& x : c.objects) {
            WeightedSetLimit wl = weighted_limit_set(d, hom_functor(c, x, Variance::Covariant));
            CHECK(wl.via_elements.carrier.size() == d.at(x).size());
            CHECK(wl.via_end.size() == d.at(x).size());
            WeightedSetLimit wc = weighted_colimit_set(d, hom_functor(c, x, Variance::Contravariant));
            CHECK(wc.via_elements.carrier.size() == d.at(x).size());
            CHECK(wc.via_end.size() == d.at(x).size());
        }
    }
}

TEST_CASE("terminal weight recovers the ordinary limit and colimit") {
    for (std::uint64_t seed = 31; seed <= 40; ++seed) {
        FinCategory c = random_category(seed);
        Rng rng(seed);
        SetFunctor d = random_set_functor(c, rng, Variance::Covariant, 3);
        SetFunctor unit_cov = constant_functor(c, FinSet("pt", {"*"}), Variance::Covariant);
        SetFunctor unit_con = constant_functor(c, FinSet("pt", {"*"}), Variance::Contravariant);
        CAPTURE(seed);
        CHECK(weighted_limit_set(d, unit_cov).via_elements.carrier.size() == limit_set(d).carrier.size());
        CHECK(weighted_colimit_set(d, unit_con).via_elements.carrier.size() == colimit_set(d).carrier.size());
    }
}

TEST_CASE("weighted limits in a category: representable weights give Yoneda") {
    for (const auto& c : catalog_categories()) {
        CAPTURE(c.name);
        FunctorData idf = FunctorData::identity(c);
        for (const auto& x : c.objects) {
            WeightedDiagram wd{idf, hom_functor(c, x, Variance::Covariant)};
            std::optional<CLimit> lim = weighted_limit_in_C(wd);
            REQUIRE(lim.has_value());
            CHECK(lim->object == x);
            // the universal cone leg at (J, g: x->J) is g itself
            for (const auto& [key, leg] : lim->universal.legs) CHECK(leg == key.second);

            WeightedDiagram wdc{idf, hom_functor(c, x, Variance::Contravariant)};
            std::optional<CLimit> colim = weighted_colimit_in_C(wdc);
            REQUIRE(colim.has_value());
            CHECK(colim->object == x);
            for (const auto& [key, leg] : colim->universal.legs) CHECK(leg == key.second);
        }
    }
}

TEST_CASE("conical limits in a category: products exist or fail honestly") {
    // product of 0 and 1 in the arrow category is 0
    FinCategory arr = cat_arr();
    FinCategory pair = cat_pair();
    FunctorData d;
    d.source = pair;
    d.target = arr;
    d.obj_map = {{"a", "0"}, {"b", "1"}};
    d.mor_map = {{"id_a", "id_0"}, {"id_b", "id_1"}};
    d.validate();
    WeightedDiagram wd{d, constant_functor(pair, FinSet("pt", {"*"}), Variance::Covariant)};
    std::optional<CLimit> lim = weighted_limit_in_C(wd);
    REQUIRE(lim.has_value());
    CHECK(lim->object == "0");
    CHECK(lim->universal.legs.at({"a", "*"}) == "id_0");
    CHECK(lim->universal.legs.at({"b", "*"}) == "a");

    // coproduct of 0 and 1 in the arrow category is 1
    std::optional<CLimit> colim =
        weighted_colimit_in_C({d, constant_functor(pair, FinSet("pt", {"*"}), Variance::Contravariant)});
    REQUIRE(colim.has_value());
    CHECK(colim->object == "1");

    // the discrete pair has no products at all
    FunctorData idp = FunctorData::identity(pair);
    CHECK_FALSE(weighted_limit_in_C({idp, constant_functor(pair, FinSet("pt", {"*"}), Variance::Covariant)}).has_value());
}

TEST_CASE("equalizers of a parallel pair inside SplitIdem") {
    // e and id_x in SplitIdem are equalized by i: s -> x
    FinCategory si = cat_splitidem();
    FinCategory pp = cat_parpair();
    FunctorData d;
    d.source = pp;
    d.target = si;
    d.obj_map = {{"0", "x"}, {"1", "x"}};
    d.mor_map = {{"id_0", "id_x"}, {"id_1", "id_x"}, {"a", "e"}, {"b", "id_x"}};
    d.validate();
    WeightedDiagram wd{d, constant_functor(pp, FinSet("pt", {"*"}), Variance::Covariant)};
    std::optional<CLimit> lim = weighted_limit_in_C(wd);
    REQUIRE(lim.has_value());
    CHECK(lim->object == "s");
    CHECK(lim->universal.legs.at({"0", "*"}) == "i");

    // the same pair has no equalizer in the bare idempotent category
    FinCategory idem = cat_idem();
    FunctorData d2;
    d2.source = pp;
    d2.target = idem;
    d2.obj_map = {{"0", "x"}, {"1", "x"}};
    d2.mor_map = {{"id_0", "id_x"}, {"id_1", "id_x"}, {"a", "e"}, {"b", "id_x"}};
    d2.validate();
    CHECK_FALSE(weighted_limit_in_C({d2, constant_functor(pp, FinSet("pt", {"*"}), Variance::Covariant)}).has_value());
}

TEST_CASE("pushing the weight forward along the diagram preserves the limit") {
    // J = Arr, D: J -> C, G on C, W on J; random Cs and functors
    FinCategory arr = cat_arr();
    SetFunctor w = hom_functor(arr, "0", Variance::Covariant);

    // identity diagram first
    Rng rng(47);
    SetFunctor g0 = random_set_functor(arr, rng, Variance::Covariant, 3);
    DecomposeReport r0 = limit_decompose_check(FunctorData::identity(arr), g0, w);
    CHECK(r0.agree);

    // a non-identity diagram into SplitIdem
    FinCategory si = cat_splitidem();
    FunctorData d;
    d.source = arr;
    d.target = si;
    d.obj_map = {{"0", "s"}, {"1", "x"}};
    d.mor_map = {{"id_0", "id_s"}, {"id_1", "id_x"}, {"a", "i"}};
    d.validate();
    for (int round = 0; round < 3; ++round) {
        SetFunctor g = random_set_functor(si, rng, Variance::Covariant, 3);
        SetFunctor w2 = random_set_functor(arr, rng, Variance::Covariant, 3);
        CAPTURE(round);
        CHECK(limit_decompose_check(d, g, w).agree);
        CHECK(limit_decompose_check(d, g, w2).agree);
    }
}
