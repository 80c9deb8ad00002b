// regenerates the fixtures/ directory in canonical serialized form
#include <fincat/fincat.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace fincat;

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const json& doc) {
        std::ofstream out(dir / name);
        out << serialize(doc);
    };

    for (const auto& c : catalog_categories()) {
        std::string slug = c.name;
        for (auto& ch : slug) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        write(slug + ".cat.json", category_to_json(c));
    }

    FinCategory arr = cat_arr();
    FinCategory one = cat_one();
    FinCategory idem = cat_idem();
    write("arr-hom0.sf.json", setfunctor_to_json(hom_functor(arr, "0", Variance::Covariant)));
    write("arr-hom1-contra.sf.json", setfunctor_to_json(hom_functor(arr, "1", Variance::Contravariant)));
    write("arr-empty.sf.json", setfunctor_to_json(empty_functor(arr, Variance::Covariant)));
    write("idem-invr.sf.json", setfunctor_to_json(invariant_right(idem, {idem, "x", "e"})));

    FunctorData pt0;
    pt0.source = one;
    pt0.target = arr;
    pt0.obj_map = {{"o", "0"}};
    pt0.mor_map = {{"id_o", "id_0"}};
    pt0.validate();
    write("one-to-arr0.fun.json", functor_to_json(pt0));
    FunctorData two;
    two.source = one;
    two.target = one;
    two.obj_map = {{"o", "o"}};
    two.mor_map = {{"id_o", "id_o"}};
    two.validate();
    write("one-id.fun.json", functor_to_json(two));

    // weighted limit of the identity diagram on Arr with the representable weight at 0
    FunctorData ident;
    ident.source = arr;
    ident.target = arr;
    for (const auto& o : arr.objects) ident.obj_map[o] = o;
    for (const auto& m : arr.morphisms) ident.mor_map[m.name] = m.name;
    ident.validate();
    write("arr-yoneda0.wd.json",
          weighted_diagram_to_json({ident, hom_functor(arr, "0", Variance::Covariant)}));

    write("arr-yoneda1-op.wd.json",
          weighted_diagram_to_json({ident, hom_functor(arr, "1", Variance::Contravariant)}));
    write("z2disc-homI.sf.json",
          setfunctor_to_json(hom_functor(cat_z2disc(), "I", Variance::Covariant)));

    write("arr-hom.prof.json", profunctor_to_json(hom_profunctor(arr)));
    write("arr-to-one.prof.json",
          profunctor_to_json(functor_as_profunctor(hom_functor(arr, "0", Variance::Covariant), one)));

    write("one.mon.json", monoidal_to_json(monoidal_one()));
    write("z2disc.mon.json", monoidal_to_json(monoidal_z2disc()));
    write("z3disc.mon.json", monoidal_to_json(monoidal_z3disc()));
    write("poset2-min.mon.json", monoidal_to_json(monoidal_poset2_min()));

    std::cout << "fixtures written to " << dir << "\n";
    return 0;
}
