#pragma once

#include "core.hpp"

#include <random>

namespace fincat {

// ---------------------------------------------------------------------------
// Convenience builder: identities and unit compositions are filled in.
// ---------------------------------------------------------------------------

struct CategoryBuilder {
    FinCategory c;

    explicit CategoryBuilder(std::string name) { c.name = std::move(name); }

    CategoryBuilder& object(const std::string& o) {
        c.objects.push_back(o);
        std::string id = "id_" + o;
        c.morphisms.push_back({id, o, o});
        c.identity[o] = id;
        return *this;
    }

    CategoryBuilder& mor(const std::string& name, const std::string& dom, const std::string& cod) {
        c.morphisms.push_back({name, dom, cod});
        return *this;
    }

    CategoryBuilder& comp(const std::string& g, const std::string& f, const std::string& gf) {
        c.comp[{g, f}] = gf;
        return *this;
    }

    FinCategory build() {
        c.canonicalize();
        for (const auto& f : c.morphisms) {
            c.comp[{c.identity.at(f.cod), f.name}] = f.name;
            c.comp[{f.name, c.identity.at(f.dom)}] = f.name;
        }
        require_valid(c);
        return c;
    }
};

// ---------------------------------------------------------------------------
// Fixture categories
// ---------------------------------------------------------------------------

inline FinCategory cat_one() { return CategoryBuilder("One").object("o").build(); }

inline FinCategory cat_pair() { return CategoryBuilder("Pair").object("a").object("b").build(); }

inline FinCategory cat_arr() {
    return CategoryBuilder("Arr").object("0").object("1").mor("a", "0", "1").build();
}

inline FinCategory cat_parpair() {
    return CategoryBuilder("ParPair").object("0").object("1").mor("a", "0", "1").mor("b", "0", "1").build();
}

inline FinCategory cat_idem() {
    return CategoryBuilder("Idem").object("x").mor("e", "x", "x").comp("e", "e", "e").build();
}

inline FinCategory cat_splitidem() {
    return CategoryBuilder("SplitIdem")
        .object("s")
        .object("x")
        .mor("e", "x", "x")
        .mor("p", "x", "s")
        .mor("i", "s", "x")
        .comp("e", "e", "e")
        .comp("p", "i", "id_s")
        .comp("i", "p", "e")
        .comp("p", "e", "p")
        .comp("e", "i", "i")
        .build();
}

inline FinCategory cat_poset2() {
    return CategoryBuilder("Poset2").object("p0").object("p1").mor("le", "p0", "p1").build();
}

inline FinCategory cat_z2() {
    return CategoryBuilder("Z2").object("g").mor("s", "g", "g").comp("s", "s", "id_g").build();
}

inline FinCategory cat_z3() {
    return CategoryBuilder("Z3")
        .object("g")
        .mor("r", "g", "g")
        .mor("rr", "g", "g")
        .comp("r", "r", "rr")
        .comp("r", "rr", "id_g")
        .comp("rr", "r", "id_g")
        .comp("rr", "rr", "r")
        .build();
}

inline FinCategory cat_z2disc() { return CategoryBuilder("Z2disc").object("A").object("I").build(); }

inline FinCategory cat_z3disc() {
    return CategoryBuilder("Z3disc").object("A").object("B").object("I").build();
}

// A skeleton of finite sets with all functions between them. Morphisms are
// named f:<dom>:<cod>:<image tuple>. Validation can be skipped for large
// fragments: the composition table is function composition, so the axioms
// hold by construction.
inline FinCategory finset_category_on(const std::vector<std::size_t>& sizes, bool check = true) {
    FinCategory c;
    c.name = "FinSet";
    auto oname = [](std::size_t n) { return "n" + std::to_string(n); };
    struct Fn {
        std::size_t dom, cod;
        std::vector<std::size_t> graph;
    };
    std::vector<Fn> fns;
    auto fname = [&](const Fn& f) {
        std::vector<std::string> imgs;
        for (std::size_t v : f.graph) imgs.push_back(std::to_string(v));
        bool is_id = f.dom == f.cod;
        for (std::size_t k = 0; k < f.graph.size(); ++k)
            if (f.graph[k] != k) is_id = false;
        if (is_id) return "id_" + oname(f.dom);
        return "f:" + oname(f.dom) + ":" + oname(f.cod) + ":" + tup(imgs);
    };
    for (std::size_t n : sizes) c.objects.push_back(oname(n));
    for (std::size_t m : sizes)
        for (std::size_t n : sizes) {
            if (m > 0 && n == 0) continue; // no functions into the empty set
            std::vector<std::size_t> graph(m, 0);
            do {
                fns.push_back({m, n, graph});
            } while (advance_odometer(graph, [&](std::size_t) { return n; }));
        }
    for (const auto& f : fns) {
        std::string nm = fname(f);
        c.morphisms.push_back({nm, oname(f.dom), oname(f.cod)});
        if (nm.rfind("id_", 0) == 0) c.identity[oname(f.dom)] = nm;
    }
    for (const auto& g : fns)
        for (const auto& f : fns) {
            if (f.cod != g.dom) continue;
            Fn gf{f.dom, g.cod, {}};
            for (std::size_t v : f.graph) gf.graph.push_back(g.graph[v]);
            c.comp[{fname(g), fname(f)}] = fname(gf);
        }
    c.canonicalize();
    if (check) require_valid(c);
    return c;
}

// the fragment on all sizes 0..max_size
inline FinCategory finset_category(std::size_t max_size = 2) {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 0; n <= max_size; ++n) sizes.push_back(n);
    return finset_category_on(sizes);
}

// interprets an object of the finite-sets skeleton as an actual FinSet
inline FinSet finset_carrier(const std::string& obj) {
    std::size_t n = std::stoul(obj.substr(1));
    std::vector<std::string> elts;
    for (std::size_t i = 0; i < n; ++i) elts.push_back(std::to_string(i));
    return FinSet(obj, std::move(elts));
}

inline std::vector<FinCategory> catalog_categories() {
    return {cat_one(),   cat_pair(),   cat_arr(), cat_parpair(), cat_idem(),   cat_splitidem(),
            cat_poset2(), cat_z2(),     cat_z3(),  cat_z2disc(),  cat_z3disc()};
}

// ---------------------------------------------------------------------------
// Set-functor constructions used for fixtures and random inputs
// ---------------------------------------------------------------------------

inline SetFunctor constant_functor(const FinCategory& c, const FinSet& s, Variance v) {
    SetFunctor f;
    f.base = c;
    f.variance = v;
    for (const auto& o : c.objects) f.sets[o] = s;
    for (const auto& m : c.morphisms) f.actions[m.name] = FinFunction::identity(s);
    return f;
}

inline SetFunctor empty_functor(const FinCategory& c, Variance v) {
    return constant_functor(c, FinSet("empty", {}), v);
}

// disjoint union of representables at the given objects; elements tagged i.<mor>
inline SetFunctor coproduct_of_representables(const FinCategory& c, const std::vector<std::string>& reps, Variance v) {
    std::vector<SetFunctor> parts;
    for (const auto& r : reps) parts.push_back(hom_functor(c, r, v));
    SetFunctor f;
    f.base = c;
    f.variance = v;
    for (const auto& o : c.objects) {
        std::vector<std::string> elts;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (const auto& x : parts[i].at(o).elements) elts.push_back(std::to_string(i) + "." + x);
        f.sets[o] = FinSet("copr@" + o, std::move(elts));
    }
    for (const auto& m : c.morphisms) {
        const std::string& d = v == Variance::Covariant ? m.dom : m.cod;
        const std::string& cd = v == Variance::Covariant ? m.cod : m.dom;
        std::map<std::string, std::string> mp;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (const auto& x : parts[i].at(d).elements)
                mp[std::to_string(i) + "." + x] = std::to_string(i) + "." + parts[i].action(m.name)(x);
        f.actions[m.name] = FinFunction(f.sets.at(d), f.sets.at(cd), std::move(mp));
    }
    return f;
}

inline SetFunctor product_functor(const SetFunctor& a, const SetFunctor& b) {
    SetFunctor f;
    f.base = a.base;
    f.variance = a.variance;
    for (const auto& o : a.base.objects) {
        std::vector<std::string> elts;
        for (const auto& x : a.at(o).elements)
            for (const auto& y : b.at(o).elements) elts.push_back(tup({x, y}));
        f.sets[o] = FinSet("prod@" + o, std::move(elts));
    }
    for (const auto& m : a.base.morphisms) {
        const std::string& d = a.variance == Variance::Covariant ? m.dom : m.cod;
        const std::string& cd = a.variance == Variance::Covariant ? m.cod : m.dom;
        std::map<std::string, std::string> mp;
        for (const auto& x : a.at(d).elements)
            for (const auto& y : b.at(d).elements)
                mp[tup({x, y})] = tup({a.action(m.name)(x), b.action(m.name)(y)});
        f.actions[m.name] = FinFunction(f.sets.at(d), f.sets.at(cd), std::move(mp));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Seeded random inputs (platform-stable: raw mt19937_64 output, no
// distribution classes)
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::size_t rand_below(Rng& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

// Random valid category: a closure of random finite functions between small
// carriers. Composition is function composition, so the axioms hold by
// construction; names are assigned canonically after closure.
inline FinCategory random_category(std::uint64_t seed, std::size_t max_objects = 4, std::size_t max_morphisms = 12) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::size_t nobj = 1 + rand_below(rng, max_objects);
        std::vector<std::size_t> carrier(nobj);
        for (auto& s : carrier) s = 1 + rand_below(rng, 2);

        struct Fn {
            std::size_t dom, cod;
            std::vector<std::size_t> graph;
            bool operator<(const Fn& o) const { return std::tie(dom, cod, graph) < std::tie(o.dom, o.cod, o.graph); }
        };
        std::set<Fn> fns;
        for (std::size_t i = 0; i < nobj; ++i) {
            Fn idf{i, i, {}};
            for (std::size_t k = 0; k < carrier[i]; ++k) idf.graph.push_back(k);
            fns.insert(idf);
        }
        std::size_t gens = 1 + rand_below(rng, 4);
        for (std::size_t g = 0; g < gens; ++g) {
            Fn f;
            f.dom = rand_below(rng, nobj);
            f.cod = rand_below(rng, nobj);
            for (std::size_t k = 0; k < carrier[f.dom]; ++k) f.graph.push_back(rand_below(rng, carrier[f.cod]));
            fns.insert(f);
        }
        // close under composition
        bool grew = true, too_big = false;
        while (grew && !too_big) {
            grew = false;
            std::vector<Fn> cur(fns.begin(), fns.end());
            for (const auto& g : cur) {
                for (const auto& f : cur) {
                    if (f.cod != g.dom) continue;
                    Fn gf{f.dom, g.cod, {}};
                    for (std::size_t k = 0; k < carrier[f.dom]; ++k) gf.graph.push_back(g.graph[f.graph[k]]);
                    if (fns.insert(gf).second) grew = true;
                    if (fns.size() > max_morphisms) { too_big = true; break; }
                }
                if (too_big) break;
            }
        }
        if (too_big) continue;

        FinCategory c;
        c.name = "rand" + std::to_string(seed);
        std::map<std::size_t, std::string> oname;
        for (std::size_t i = 0; i < nobj; ++i) {
            oname[i] = "o" + std::to_string(i);
            c.objects.push_back(oname[i]);
        }
        std::map<Fn, std::string> mname;
        std::size_t next = 0;
        for (const auto& f : fns) {
            bool is_id = f.dom == f.cod;
            if (is_id)
                for (std::size_t k = 0; k < f.graph.size(); ++k)
                    if (f.graph[k] != k) is_id = false;
            std::string nm = is_id ? "id_" + oname[f.dom] : "m" + std::to_string(next++);
            mname[f] = nm;
            c.morphisms.push_back({nm, oname[f.dom], oname[f.cod]});
            if (is_id) c.identity[oname[f.dom]] = nm;
        }
        for (const auto& g : fns)
            for (const auto& f : fns) {
                if (f.cod != g.dom) continue;
                Fn gf{f.dom, g.cod, {}};
                for (std::size_t k = 0; k < carrier[f.dom]; ++k) gf.graph.push_back(g.graph[f.graph[k]]);
                c.comp[{mname.at(g), mname.at(f)}] = mname.at(gf);
            }
        c.canonicalize();
        require_valid(c);
        return c;
    }
    throw Error("Internal", "random_category: no small closure found for seed " + std::to_string(seed));
}

// Random functorial set functor built from representables, coproducts,
// products, and constants; per-object sizes bounded by max_size.
inline SetFunctor random_set_functor(const FinCategory& c, Rng& rng, Variance v, std::size_t max_size = 4) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        SetFunctor f;
        switch (rand_below(rng, 4)) {
        case 0: { // constant set (possibly empty)
            std::size_t n = rand_below(rng, 3);
            std::vector<std::string> elts;
            for (std::size_t i = 0; i < n; ++i) elts.push_back("c" + std::to_string(i));
            f = constant_functor(c, FinSet("const", std::move(elts)), v);
            break;
        }
        case 1: { // single representable
            f = coproduct_of_representables(c, {c.objects[rand_below(rng, c.objects.size())]}, v);
            break;
        }
        case 2: { // coproduct of two representables
            f = coproduct_of_representables(c,
                                            {c.objects[rand_below(rng, c.objects.size())],
                                             c.objects[rand_below(rng, c.objects.size())]},
                                            v);
            break;
        }
        default: { // product of a representable with a representable
            SetFunctor a = coproduct_of_representables(c, {c.objects[rand_below(rng, c.objects.size())]}, v);
            SetFunctor b = coproduct_of_representables(c, {c.objects[rand_below(rng, c.objects.size())]}, v);
            f = product_functor(a, b);
            break;
        }
        }
        bool small = true;
        for (const auto& o : c.objects)
            if (f.at(o).size() > max_size) small = false;
        if (small) return f;
    }
    return constant_functor(c, FinSet("const", {"c0"}), v);
}

} // namespace fincat
