#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fincat/catalog.hpp>
#include <fincat/cauchy.hpp>

using namespace fincat;

TEST_CASE("split_idempotent finds splittings exactly when they exist") {
    FinCategory si = cat_splitidem();
    std::optional<Splitting> s = split_idempotent({si, "x", "e"});
    REQUIRE(s.has_value());
    CHECK(s->through == "s");
    CHECK(s->section == "i");
    CHECK(s->retraction == "p");

    // identities split through themselves
    std::optional<Splitting> sid = split_idempotent({si, "x", "id_x"});
    REQUIRE(sid.has_value());
    CHECK(sid->through == "x");
    CHECK(sid->section == "id_x");

    // the bare idempotent does not split
    CHECK_FALSE(split_idempotent({cat_idem(), "x", "e"}).has_value());
}

TEST_CASE("is_cauchy_complete distinguishes the catalog") {
    CHECK(is_cauchy_complete(cat_one()).complete);
    CHECK(is_cauchy_complete(cat_splitidem()).complete);
    CompletenessReport r = is_cauchy_complete(cat_idem());
    CHECK_FALSE(r.complete);
    REQUIRE(r.non_split.size() == 1);
    CHECK(r.non_split[0].morphism == "e");
}

TEST_CASE("Karoubi envelope: objects, homs, identity, inclusion") {
    KaroubiCategory kone = karoubi_envelope(cat_one());
    CHECK(kone.category.objects.size() == 1);
    CHECK(are_equivalent(kone.category, cat_one()));

    KaroubiCategory k = karoubi_envelope(cat_idem());
    CHECK(k.category.objects.size() == 2);
    std::string oid = k.object_name("x", "id_x");
    std::string oe = k.object_name("x", "e");
    CHECK(k.category.hom(oid, oid).size() == 2);
    CHECK(k.category.hom(oid, oe).size() == 1);
    CHECK(k.category.hom(oe, oid).size() == 1);
    CHECK(k.category.hom(oe, oe).size() == 1);
    // the identity of (x,e) is e
    CHECK(k.underlying.at(k.category.id(oe)) == "e");
    CHECK(karoubi_inclusion(k).is_fully_faithful());

    // envelopes are Cauchy complete, across the whole catalog
    for (const auto& c : catalog_categories()) {
        CAPTURE(c.name);
        CHECK(is_cauchy_complete(karoubi_envelope(c).category).complete);
    }
    // and K(Idem) is equivalent to SplitIdem
    CHECK(are_equivalent(k.category, cat_splitidem()));
}

TEST_CASE("Cauchy points from idempotents") {
    FinCategory idem = cat_idem();
    CauchyPoint pt = cauchy_point_from_idempotent({idem, "x", "e"});
    CHECK(pt.F.at("x").elements == std::vector<std::string>{"e"});
    CHECK(pt.P.at("x").elements == std::vector<std::string>{"e"});
    CHECK(pt.i == "(x,e,e)");
    CHECK(pt.pf.carrier.size() == 1);

    // the identity idempotent gives the representables
    FinCategory arr = cat_arr();
    CauchyPoint ptid = cauchy_point_at_object(arr, "0");
    for (const auto& a : arr.objects) {
        CHECK(ptid.F.at(a).elements == arr.hom("0", a));
        CHECK(ptid.P.at(a).elements == arr.hom(a, "0"));
    }

    // for the split idempotent, the left invariants are represented by s
    FinCategory si = cat_splitidem();
    std::optional<Representation> rep = find_representation(invariant_left(si, {si, "x", "e"}));
    REQUIRE(rep.has_value());
    CHECK(rep->object == "s");
}

TEST_CASE("the extension category of a Cauchy point") {
    FinCategory idem = cat_idem();
    CauchyPoint pt = cauchy_point_from_idempotent({idem, "x", "e"});
    CauchyExtension ext = cauchy_extension(pt);
    CHECK(ext.category.morphisms.size() == 5);
    CHECK(ext.category.hom(kExtraObject, kExtraObject).size() == 1);
    CHECK(find_isomorphism(ext.category, cat_splitidem()).has_value());

    // identity point on One: the extension is equivalent (not isomorphic) to One
    FinCategory one = cat_one();
    CauchyExtension eone = cauchy_extension(cauchy_point_at_object(one, "o"));
    CHECK(eone.category.objects.size() == 2);
    CHECK(are_equivalent(eone.category, one));
    CHECK_FALSE(find_isomorphism(eone.category, one).has_value());
}

TEST_CASE("realize_cauchy_point agrees with representability") {
    FinCategory si = cat_splitidem();
    std::optional<std::string> r = realize_cauchy_point(cauchy_point_from_idempotent({si, "x", "e"}));
    REQUIRE(r.has_value());
    CHECK(*r == "s");

    CHECK_FALSE(realize_cauchy_point(cauchy_point_from_idempotent({cat_idem(), "x", "e"})).has_value());

    FinCategory arr = cat_arr();
    for (const auto& x : arr.objects) {
        std::optional<std::string> rx = realize_cauchy_point(cauchy_point_at_object(arr, x));
        REQUIRE(rx.has_value());
        CHECK(*rx == x);
    }
}

TEST_CASE("retracts of representables") {
    FinCategory idem = cat_idem();
    SetFunctor invr = invariant_right(idem, {idem, "x", "e"});
    std::optional<RepresentableRetract> r = retract_of_representable(invr);
    REQUIRE(r.has_value());
    CHECK(r->object == "x");
    CHECK(r->induced.morphism == "e");

    // representables are retracts of themselves
    for (const auto& c : catalog_categories())
        for (const auto& x : c.objects) {
            CAPTURE(c.name);
            std::optional<RepresentableRetract> rr = retract_of_representable(hom_functor(c, x, Variance::Covariant));
            REQUIRE(rr.has_value());
        }

    // nothing maps from a representable into the empty functor
    CHECK_FALSE(retract_of_representable(empty_functor(idem, Variance::Covariant)).has_value());

    CHECK(is_absolute_weight(hom_functor(cat_arr(), "0", Variance::Covariant)));
    CHECK(is_absolute_weight(invr));
    CHECK_FALSE(is_absolute_weight(constant_functor(cat_one(), FinSet("two", {"u", "v"}), Variance::Covariant)));
}

TEST_CASE("morphisms of Cauchy points and their translations") {
    FinCategory idem = cat_idem();
    CauchyPoint pt = cauchy_point_from_idempotent({idem, "x", "e"});
    CauchyMorphisms mm = cauchy_morphisms(pt, pt);
    CHECK(mm.classes.carrier.size() == 1);
    CHECK(mm.classes.carrier.elements[0] == pt.i); // the identity morphism

    // against the identity point at x
    CauchyPoint ptid = cauchy_point_at_object(idem, "x");
    CauchyMorphisms m2 = cauchy_morphisms(pt, ptid);
    CHECK(m2.classes.carrier.size() == 1);

    // composition respects identities
    std::string back = compose_cauchy_morphisms(pt, pt, pt, mm, mm, mm, pt.i, pt.i);
    CHECK(back == pt.i);

    // points over disconnected objects have no morphisms between them
    FinCategory disc = cat_z2disc();
    CauchyMorphisms none = cauchy_morphisms(cauchy_point_at_object(disc, "A"), cauchy_point_at_object(disc, "I"));
    CHECK(none.classes.carrier.size() == 0);
}

TEST_CASE("Phi is fully faithful from the Karoubi envelope") {
    for (const auto& c : {cat_one(), cat_idem(), cat_splitidem(), cat_arr(), cat_z2()}) {
        CAPTURE(c.name);
        PhiReport r = phi_equivalence_check(c);
        CHECK(r.fully_faithful);
        CHECK(r.hom_pairs == r.objects * r.objects);
    }
}

TEST_CASE("extension consistency with the Karoubi envelope") {
    // C' of the point of e is equivalent to the full subcategory of K(C) on
    // the identity idempotents plus (X,e)
    for (const auto& [cname, x, e] : {std::tuple<std::string, std::string, std::string>{"Idem", "x", "e"},
                                      {"SplitIdem", "x", "e"},
                                      {"Arr", "0", "id_0"}}) {
        FinCategory c = cname == "Idem" ? cat_idem() : cname == "SplitIdem" ? cat_splitidem() : cat_arr();
        CAPTURE(cname);
        CauchyExtension ext = cauchy_extension(cauchy_point_from_idempotent({c, x, e}));
        KaroubiCategory k = karoubi_envelope(c);
        std::vector<std::string> objs;
        for (const auto& o : c.objects) objs.push_back(k.object_name(o, c.id(o)));
        objs.push_back(k.object_name(x, e));
        FinCategory sub = full_subcategory(k.category, objs, "sub");
        CHECK(are_equivalent(ext.category, sub));
    }
}

TEST_CASE("universal retraction: the splitting cone of a split idempotent") {
    FinCategory si = cat_splitidem();
    FinCategory pp = cat_parpair();
    FunctorData d;
    d.source = pp;
    d.target = si;
    d.obj_map = {{"0", "x"}, {"1", "x"}};
    d.mor_map = {{"id_0", "id_x"}, {"id_1", "id_x"}, {"a", "e"}, {"b", "id_x"}};
    d.validate();
    WeightedDiagram wd{d, constant_functor(pp, FinSet("pt", {"*"}), Variance::Covariant)};
    WeightedCone cone;
    cone.tip = "s";
    cone.legs[{"0", "*"}] = "i";
    cone.legs[{"1", "*"}] = "i";
    std::optional<EventualRetraction> r = universal_retraction(wd, cone);
    REQUIRE(r.has_value());
    CHECK(r->retraction == "p");
    CHECK(r->universal);

    // a universal retraction certifies a terminal cone, preserved by every
    // functor out of the category
    CHECK(cone_is_terminal(wd, cone));
    for (const auto& target : {cat_idem(), cat_one(), cat_splitidem()}) {
        CAPTURE(target.name);
        for (const auto& f : all_functors(si, target)) {
            WeightedDiagram pushed{compose_functors(f, d), wd.weight};
            WeightedCone pcone;
            pcone.tip = f.obj(cone.tip);
            for (const auto& [key, leg] : cone.legs) pcone.legs[key] = f.mor(leg);
            CHECK(cone_is_terminal(pushed, pcone));
        }
    }
}

TEST_CASE("universal retraction: identity cone and a non-absolute product") {
    // identity cone over a one-object diagram
    FinCategory one = cat_one();
    FinCategory idem = cat_idem();
    FunctorData d;
    d.source = one;
    d.target = idem;
    d.obj_map = {{"o", "x"}};
    d.mor_map = {{"id_o", "id_x"}};
    d.validate();
    WeightedDiagram wd{d, constant_functor(one, FinSet("pt", {"*"}), Variance::Covariant)};
    WeightedCone cone;
    cone.tip = "x";
    cone.legs[{"o", "*"}] = "id_x";
    std::optional<EventualRetraction> r = universal_retraction(wd, cone);
    REQUIRE(r.has_value());
    CHECK(r->retraction == "id_x");

    // a genuine binary product of two 2-element sets is not absolute
    FinCategory fs = finset_category_on({2, 4}, false);
    FinCategory pair = cat_pair();
    FunctorData dp;
    dp.source = pair;
    dp.target = fs;
    dp.obj_map = {{"a", "n2"}, {"b", "n2"}};
    dp.mor_map = {{"id_a", "id_n2"}, {"id_b", "id_n2"}};
    dp.validate();
    WeightedDiagram wdp{dp, constant_functor(pair, FinSet("pt", {"*"}), Variance::Covariant)};
    WeightedCone prod;
    prod.tip = "n4";
    prod.legs[{"a", "*"}] = "f:n4:n2:(0,0,1,1)";
    prod.legs[{"b", "*"}] = "f:n4:n2:(0,1,0,1)";
    REQUIRE(cone_is_natural(wdp, prod, false));
    CHECK_FALSE(universal_retraction(wdp, prod).has_value());
}
