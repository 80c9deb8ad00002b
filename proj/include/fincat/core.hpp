#pragma once

#include "common.hpp"

#include <optional>

namespace fincat {

// ---------------------------------------------------------------------------
// Finite sets and functions
// ---------------------------------------------------------------------------

struct FinSet {
    std::string label;
    std::vector<std::string> elements; // sorted, pairwise distinct

    FinSet() = default;
    FinSet(std::string lbl, std::vector<std::string> elts) : label(std::move(lbl)), elements(std::move(elts)) {
        canonicalize();
    }

    void canonicalize() {
        std::sort(elements.begin(), elements.end());
        auto dup = std::adjacent_find(elements.begin(), elements.end());
        if (dup != elements.end()) throw Error("ValidationFailed", "FinSet " + label + ": duplicate element " + *dup);
    }

    std::size_t size() const { return elements.size(); }
    bool contains(const std::string& x) const {
        return std::binary_search(elements.begin(), elements.end(), x);
    }
    bool operator==(const FinSet& o) const { return elements == o.elements; }
};

struct FinFunction {
    FinSet dom, cod;
    std::map<std::string, std::string> map;

    FinFunction() = default;
    FinFunction(FinSet d, FinSet c, std::map<std::string, std::string> m)
        : dom(std::move(d)), cod(std::move(c)), map(std::move(m)) {
        validate();
    }

    void validate() const {
        for (const auto& x : dom.elements) {
            auto it = map.find(x);
            if (it == map.end()) throw Error("ValidationFailed", "FinFunction: no image for " + x);
            if (!cod.contains(it->second))
                throw Error("ValidationFailed", "FinFunction: image " + it->second + " of " + x + " not in codomain");
        }
        if (map.size() != dom.elements.size()) throw Error("ValidationFailed", "FinFunction: map defined outside domain");
    }

    const std::string& operator()(const std::string& x) const {
        auto it = map.find(x);
        if (it == map.end()) throw Error("Internal", "FinFunction applied outside domain: " + x);
        return it->second;
    }

    bool is_bijective() const {
        if (dom.size() != cod.size()) return false;
        std::set<std::string> img;
        for (const auto& [_, y] : map) img.insert(y);
        return img.size() == cod.size();
    }

    bool operator==(const FinFunction& o) const {
        return dom == o.dom && cod == o.cod && map == o.map;
    }

    static FinFunction identity(const FinSet& s) {
        std::map<std::string, std::string> m;
        for (const auto& x : s.elements) m[x] = x;
        return FinFunction(s, s, std::move(m));
    }

    // g after f
    static FinFunction compose(const FinFunction& g, const FinFunction& f) {
        if (!(f.cod == g.dom)) throw Error("Internal", "FinFunction compose: domain mismatch");
        std::map<std::string, std::string> m;
        for (const auto& x : f.dom.elements) m[x] = g(f(x));
        return FinFunction(f.dom, g.cod, std::move(m));
    }
};

// ---------------------------------------------------------------------------
// Finite categories
// ---------------------------------------------------------------------------

struct Morphism {
    std::string name, dom, cod;
    bool operator==(const Morphism& o) const { return name == o.name && dom == o.dom && cod == o.cod; }
};

struct FinCategory {
    std::string name;
    std::vector<std::string> objects;          // sorted
    std::vector<Morphism> morphisms;           // sorted by name
    std::map<std::string, std::string> identity; // object -> morphism name
    std::map<std::pair<std::string, std::string>, std::string> comp; // (g, f) -> g∘f

    void canonicalize() {
        std::sort(objects.begin(), objects.end());
        std::sort(morphisms.begin(), morphisms.end(), [](const Morphism& a, const Morphism& b) { return a.name < b.name; });
    }

    bool has_object(const std::string& o) const {
        return std::binary_search(objects.begin(), objects.end(), o);
    }

    const Morphism* find_mor(const std::string& n) const {
        auto it = std::lower_bound(morphisms.begin(), morphisms.end(), n,
                                   [](const Morphism& m, const std::string& s) { return m.name < s; });
        if (it == morphisms.end() || it->name != n) return nullptr;
        return &*it;
    }

    const Morphism& mor(const std::string& n) const {
        const Morphism* m = find_mor(n);
        if (!m) throw Error("UnresolvedReference", "unknown morphism " + n);
        return *m;
    }

    const std::string& id(const std::string& o) const {
        auto it = identity.find(o);
        if (it == identity.end()) throw Error("UnresolvedReference", "no identity for object " + o);
        return it->second;
    }

    // g∘f, with f applied first
    const std::string& compose(const std::string& g, const std::string& f) const {
        auto it = comp.find({g, f});
        if (it == comp.end()) throw Error("Internal", "composition undefined: " + g + " after " + f);
        return it->second;
    }

    std::vector<std::string> hom(const std::string& a, const std::string& b) const {
        std::vector<std::string> out;
        for (const auto& m : morphisms)
            if (m.dom == a && m.cod == b) out.push_back(m.name);
        return out; // sorted because morphisms are
    }

    FinSet hom_set(const std::string& a, const std::string& b) const {
        return FinSet("hom(" + a + "," + b + ")", hom(a, b));
    }
};

// ---------------------------------------------------------------------------
// Category validation
// ---------------------------------------------------------------------------

struct ValidationReport {
    bool ok = true;
    std::string law;     // MissingIdentity | BrokenUnit | BrokenAssociativity | NonClosedComposition
    std::string witness; // offending morphism names
};

inline ValidationReport validate_category(const FinCategory& c) {
    auto fail = [](std::string law, std::string witness) {
        return ValidationReport{false, std::move(law), std::move(witness)};
    };

    std::set<std::string> names;
    for (const auto& m : c.morphisms) {
        if (!names.insert(m.name).second) return fail("NonClosedComposition", "duplicate morphism name " + m.name);
        if (!c.has_object(m.dom) || !c.has_object(m.cod))
            return fail("NonClosedComposition", m.name + " has unknown endpoint");
    }
    for (const auto& o : c.objects) {
        auto it = c.identity.find(o);
        if (it == c.identity.end()) return fail("MissingIdentity", o);
        const Morphism* m = c.find_mor(it->second);
        if (!m || m->dom != o || m->cod != o) return fail("MissingIdentity", o);
    }

    // comp defined exactly on composable pairs, closed, with correct endpoints
    for (const auto& [pair, gf] : c.comp) {
        const Morphism* g = c.find_mor(pair.first);
        const Morphism* f = c.find_mor(pair.second);
        const Morphism* r = c.find_mor(gf);
        if (!g || !f || !r) return fail("NonClosedComposition", pair.first + "∘" + pair.second);
        if (f->cod != g->dom) return fail("NonClosedComposition", pair.first + "∘" + pair.second + " not composable");
        if (r->dom != f->dom || r->cod != g->cod)
            return fail("NonClosedComposition", pair.first + "∘" + pair.second + " = " + gf + " has wrong endpoints");
    }
    for (const auto& g : c.morphisms)
        for (const auto& f : c.morphisms)
            if (f.cod == g.dom && !c.comp.count({g.name, f.name}))
                return fail("NonClosedComposition", g.name + "∘" + f.name + " undefined");

    for (const auto& f : c.morphisms) {
        if (c.compose(c.id(f.cod), f.name) != f.name) return fail("BrokenUnit", f.name);
        if (c.compose(f.name, c.id(f.dom)) != f.name) return fail("BrokenUnit", f.name);
    }
    for (const auto& h : c.morphisms)
        for (const auto& g : c.morphisms) {
            if (g.cod != h.dom) continue;
            for (const auto& f : c.morphisms) {
                if (f.cod != g.dom) continue;
                if (c.compose(h.name, c.compose(g.name, f.name)) != c.compose(c.compose(h.name, g.name), f.name))
                    return fail("BrokenAssociativity", h.name + "," + g.name + "," + f.name);
            }
        }
    return {};
}

inline void require_valid(const FinCategory& c) {
    ValidationReport r = validate_category(c);
    if (!r.ok) throw Error("ValidationFailed", c.name + ": " + r.law + " (" + r.witness + ")");
}

inline FinCategory opposite(const FinCategory& c) {
    FinCategory op = c;
    op.name = c.name + "^op";
    for (auto& m : op.morphisms) std::swap(m.dom, m.cod);
    op.comp.clear();
    for (const auto& [pair, gf] : c.comp) op.comp[{pair.second, pair.first}] = gf;
    return op;
}

// ---------------------------------------------------------------------------
// Functors between categories
// ---------------------------------------------------------------------------

struct FunctorData {
    FinCategory source, target;
    std::map<std::string, std::string> obj_map;
    std::map<std::string, std::string> mor_map;

    void validate() const {
        for (const auto& o : source.objects)
            if (!obj_map.count(o) || !target.has_object(obj_map.at(o)))
                throw Error("ValidationFailed", "functor: bad object image of " + o);
        for (const auto& m : source.morphisms) {
            auto it = mor_map.find(m.name);
            if (it == mor_map.end()) throw Error("ValidationFailed", "functor: no image for " + m.name);
            const Morphism& im = target.mor(it->second);
            if (im.dom != obj_map.at(m.dom) || im.cod != obj_map.at(m.cod))
                throw Error("ValidationFailed", "functor: image of " + m.name + " has wrong endpoints");
        }
        for (const auto& o : source.objects)
            if (mor_map.at(source.id(o)) != target.id(obj_map.at(o)))
                throw Error("ValidationFailed", "functor: identity of " + o + " not preserved");
        for (const auto& g : source.morphisms)
            for (const auto& f : source.morphisms) {
                if (f.cod != g.dom) continue;
                if (mor_map.at(source.compose(g.name, f.name)) != target.compose(mor_map.at(g.name), mor_map.at(f.name)))
                    throw Error("ValidationFailed", "functor: composition not preserved at " + g.name + "∘" + f.name);
            }
    }

    const std::string& obj(const std::string& o) const { return obj_map.at(o); }
    const std::string& mor(const std::string& m) const { return mor_map.at(m); }

    static FunctorData identity(const FinCategory& c) {
        FunctorData f;
        f.source = c;
        f.target = c;
        for (const auto& o : c.objects) f.obj_map[o] = o;
        for (const auto& m : c.morphisms) f.mor_map[m.name] = m.name;
        return f;
    }

    bool is_fully_faithful() const {
        for (const auto& a : source.objects)
            for (const auto& b : source.objects) {
                std::vector<std::string> dom_hom = source.hom(a, b);
                std::vector<std::string> cod_hom = target.hom(obj_map.at(a), obj_map.at(b));
                std::set<std::string> image;
                for (const auto& m : dom_hom) image.insert(mor_map.at(m));
                if (image.size() != dom_hom.size() || image.size() != cod_hom.size()) return false;
            }
        return true;
    }
};

// Composition of functors: g after f.
inline FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
    FunctorData out;
    out.source = f.source;
    out.target = g.target;
    for (const auto& [o, fo] : f.obj_map) out.obj_map[o] = g.obj_map.at(fo);
    for (const auto& [m, fm] : f.mor_map) out.mor_map[m] = g.mor_map.at(fm);
    return out;
}

// ---------------------------------------------------------------------------
// Set functors / presheaves
// ---------------------------------------------------------------------------

enum class Variance { Covariant, Contravariant };

struct SetFunctor {
    FinCategory base;
    Variance variance = Variance::Covariant;
    std::map<std::string, FinSet> sets;          // object -> carrier
    std::map<std::string, FinFunction> actions;  // morphism -> function

    const FinSet& at(const std::string& o) const {
        auto it = sets.find(o);
        if (it == sets.end()) throw Error("UnresolvedReference", "set functor: no carrier at " + o);
        return it->second;
    }

    const FinFunction& action(const std::string& m) const {
        auto it = actions.find(m);
        if (it == actions.end()) throw Error("UnresolvedReference", "set functor: no action for " + m);
        return it->second;
    }

    void validate() const {
        for (const auto& o : base.objects) at(o);
        for (const auto& m : base.morphisms) {
            const FinFunction& a = action(m.name);
            const std::string& d = variance == Variance::Covariant ? m.dom : m.cod;
            const std::string& c = variance == Variance::Covariant ? m.cod : m.dom;
            if (!(a.dom == at(d)) || !(a.cod == at(c)))
                throw Error("ValidationFailed", "set functor: action of " + m.name + " has wrong endpoints");
            a.validate();
        }
        for (const auto& o : base.objects)
            if (!(action(base.id(o)) == FinFunction::identity(at(o))))
                throw Error("ValidationFailed", "set functor: identity action broken at " + o);
        for (const auto& g : base.morphisms)
            for (const auto& f : base.morphisms) {
                if (f.cod != g.dom) continue;
                const std::string& gf = base.compose(g.name, f.name);
                FinFunction expect = variance == Variance::Covariant
                                         ? FinFunction::compose(action(g.name), action(f.name))
                                         : FinFunction::compose(action(f.name), action(g.name));
                if (!(action(gf) == expect))
                    throw Error("ValidationFailed", "set functor: functoriality broken at " + g.name + "∘" + f.name);
            }
    }

    std::uint64_t total_size() const {
        std::uint64_t n = 0;
        for (const auto& [_, s] : sets) n += s.size();
        return n;
    }
};

// A contravariant functor on C is the same data as a covariant functor on
// C^op; this view lets dual constructions share one implementation.
inline SetFunctor flip_variance(const SetFunctor& s) {
    SetFunctor out = s;
    out.base = opposite(s.base);
    out.variance = s.variance == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
    return out;
}

inline SetFunctor hom_functor(const FinCategory& c, const std::string& x, Variance v) {
    if (!c.has_object(x)) throw Error("UnknownObject", x);
    SetFunctor s;
    s.base = c;
    s.variance = v;
    for (const auto& a : c.objects)
        s.sets[a] = v == Variance::Covariant ? c.hom_set(x, a) : c.hom_set(a, x);
    for (const auto& m : c.morphisms) {
        std::map<std::string, std::string> mp;
        if (v == Variance::Covariant) {
            for (const auto& f : s.sets.at(m.dom).elements) mp[f] = c.compose(m.name, f);
            s.actions[m.name] = FinFunction(s.sets.at(m.dom), s.sets.at(m.cod), std::move(mp));
        } else {
            for (const auto& f : s.sets.at(m.cod).elements) mp[f] = c.compose(f, m.name);
            s.actions[m.name] = FinFunction(s.sets.at(m.cod), s.sets.at(m.dom), std::move(mp));
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Natural transformations between set functors
// ---------------------------------------------------------------------------

struct NatTransformation {
    SetFunctor source, target; // same base, same variance
    std::map<std::string, FinFunction> components;

    const FinFunction& at(const std::string& o) const { return components.at(o); }

    bool natural() const {
        for (const auto& m : source.base.morphisms) {
            const std::string& d = source.variance == Variance::Covariant ? m.dom : m.cod;
            const std::string& c = source.variance == Variance::Covariant ? m.cod : m.dom;
            FinFunction lhs = FinFunction::compose(target.action(m.name), components.at(d));
            FinFunction rhs = FinFunction::compose(components.at(c), source.action(m.name));
            if (!(lhs == rhs)) return false;
        }
        return true;
    }

    bool is_iso() const {
        for (const auto& [_, f] : components)
            if (!f.is_bijective()) return false;
        return true;
    }

    // canonical encoding: per object (sorted), the image tuple
    std::string encode() const {
        std::vector<std::string> parts;
        for (const auto& o : source.base.objects) {
            std::vector<std::string> imgs;
            for (const auto& x : source.at(o).elements) imgs.push_back(components.at(o)(x));
            parts.push_back(o + ":" + tup(imgs));
        }
        return tup(parts);
    }
};

inline NatTransformation compose_nats(const NatTransformation& b, const NatTransformation& a) {
    NatTransformation out;
    out.source = a.source;
    out.target = b.target;
    for (const auto& o : a.source.base.objects)
        out.components.emplace(o, FinFunction::compose(b.components.at(o), a.components.at(o)));
    return out;
}

inline NatTransformation identity_nat(const SetFunctor& f) {
    NatTransformation out;
    out.source = f;
    out.target = f;
    for (const auto& o : f.base.objects) out.components.emplace(o, FinFunction::identity(f.at(o)));
    return out;
}

// Enumerates all families of functions F(A) -> G(A); naturality filter.
// Canonical order: lexicographic in the per-object image tuples.
inline std::vector<NatTransformation> nat_transformations_direct(const SetFunctor& f, const SetFunctor& g,
                                                                 std::uint64_t cap = kDefaultCap) {
    if (!(f.base.objects == g.base.objects) || f.variance != g.variance)
        throw Error("BaseMismatch", "nat_transformations_direct: functors not comparable");

    const std::vector<std::string>& objs = f.base.objects;

    // per object, all candidate component functions, in canonical order
    std::vector<std::vector<FinFunction>> choices;
    std::uint64_t count = 1;
    for (const auto& o : objs) {
        const FinSet& dom = f.at(o);
        const FinSet& cod = g.at(o);
        if (dom.size() > 0 && cod.size() == 0) return {}; // no functions at all
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < dom.size(); ++i) n = sat_mul(n, cod.size());
        count = sat_mul(count, n);
        guard_size(count, cap, "nat_transformations_direct");

        std::vector<FinFunction> fs;
        std::vector<std::size_t> idx(dom.size(), 0);
        do {
            std::map<std::string, std::string> m;
            for (std::size_t i = 0; i < dom.size(); ++i) m[dom.elements[i]] = cod.elements[idx[i]];
            fs.push_back(FinFunction(dom, cod, std::move(m)));
        } while (advance_odometer(idx, [&](std::size_t) { return cod.size(); }));
        choices.push_back(std::move(fs));
    }

    std::vector<NatTransformation> out;
    std::vector<std::size_t> pick(objs.size(), 0);
    do {
        NatTransformation nt;
        nt.source = f;
        nt.target = g;
        for (std::size_t i = 0; i < objs.size(); ++i) nt.components.emplace(objs[i], choices[i][pick[i]]);
        if (nt.natural()) out.push_back(std::move(nt));
    } while (advance_odometer(pick, [&](std::size_t i) { return choices[i].size(); }));
    return out;
}

// ---------------------------------------------------------------------------
// Virtual-arrow extension: C plus an extra object fed by a set functor
// ---------------------------------------------------------------------------

inline constexpr const char* kExtraObject = "__E";

// Virtual morphisms are named __v:<element>, falling back to
// __v:<object>:<element> when element names repeat across objects.
inline std::map<std::pair<std::string, std::string>, std::string>
virtual_names(const SetFunctor& s) {
    std::map<std::string, int> seen;
    for (const auto& o : s.base.objects)
        for (const auto& x : s.at(o).elements) seen[x]++;
    bool qualify = false;
    for (const auto& [_, n] : seen)
        if (n > 1) qualify = true;
    std::map<std::pair<std::string, std::string>, std::string> out;
    for (const auto& o : s.base.objects)
        for (const auto& x : s.at(o).elements)
            out[{o, x}] = qualify ? "__v:" + o + ":" + x : "__v:" + x;
    return out;
}

struct ExtendedCategory {
    FinCategory category;
    std::string extra = kExtraObject;
    std::map<std::pair<std::string, std::string>, std::string> virtual_name; // (object, element) -> morphism
};

inline ExtendedCategory extend(const FinCategory& c, const SetFunctor& s) {
    if (c.has_object(kExtraObject)) throw Error("ValidationFailed", "extend: base already contains " + std::string(kExtraObject));
    ExtendedCategory out;
    out.virtual_name = virtual_names(s);

    FinCategory& e = out.category;
    e.name = c.name + (s.variance == Variance::Covariant ? "+F" : "+P");
    e.objects = c.objects;
    e.objects.push_back(kExtraObject);
    e.morphisms = c.morphisms;
    e.identity = c.identity;
    e.comp = c.comp;

    const std::string idE = "__id:__E";
    e.identity[kExtraObject] = idE;
    e.morphisms.push_back({idE, kExtraObject, kExtraObject});
    e.comp[{idE, idE}] = idE;

    for (const auto& o : s.base.objects)
        for (const auto& x : s.at(o).elements) {
            const std::string& v = out.virtual_name.at({o, x});
            if (s.variance == Variance::Covariant)
                e.morphisms.push_back({v, kExtraObject, o}); // element of F(o) is a virtual arrow E -> o
            else
                e.morphisms.push_back({v, o, kExtraObject}); // element of P(o) is a virtual arrow o -> E
        }

    for (const auto& o : s.base.objects)
        for (const auto& x : s.at(o).elements) {
            const std::string& v = out.virtual_name.at({o, x});
            if (s.variance == Variance::Covariant) {
                e.comp[{v, idE}] = v;
                for (const auto& m : c.morphisms)
                    if (m.dom == o) e.comp[{m.name, v}] = out.virtual_name.at({m.cod, s.action(m.name)(x)});
            } else {
                e.comp[{idE, v}] = v;
                for (const auto& m : c.morphisms)
                    if (m.cod == o) e.comp[{v, m.name}] = out.virtual_name.at({m.dom, s.action(m.name)(x)});
            }
        }

    e.canonicalize();
    require_valid(e);
    return out;
}

// ---------------------------------------------------------------------------
// Natural transformations between functors into a category
// (components are morphisms of the target, not finite functions)
// ---------------------------------------------------------------------------

struct CatNat {
    FunctorData source, target; // same source and target categories
    std::map<std::string, std::string> components; // source-object -> target-morphism

    bool natural() const {
        const FinCategory& c = source.target;
        for (const auto& o : source.source.objects) {
            const Morphism& m = c.mor(components.at(o));
            if (m.dom != source.obj(o) || m.cod != target.obj(o)) return false;
        }
        for (const auto& m : source.source.morphisms)
            if (c.compose(components.at(m.cod), source.mor(m.name)) !=
                c.compose(target.mor(m.name), components.at(m.dom)))
                return false;
        return true;
    }
};

// All natural transformations between two parallel functors into a finite
// category, by exhaustive search over component tuples.
inline std::vector<CatNat> cat_nats(const FunctorData& f, const FunctorData& g, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = f.target;
    const std::vector<std::string>& objs = f.source.objects;
    std::vector<std::vector<std::string>> choices;
    std::uint64_t count = 1;
    for (const auto& o : objs) {
        choices.push_back(c.hom(f.obj(o), g.obj(o)));
        if (choices.back().empty()) return {};
        count = sat_mul(count, choices.back().size());
        guard_size(count, cap, "cat_nats");
    }
    std::vector<CatNat> out;
    std::vector<std::size_t> pick(objs.size(), 0);
    do {
        CatNat nt;
        nt.source = f;
        nt.target = g;
        for (std::size_t i = 0; i < objs.size(); ++i) nt.components[objs[i]] = choices[i][pick[i]];
        if (nt.natural()) out.push_back(std::move(nt));
    } while (advance_odometer(pick, [&](std::size_t i) { return choices[i].size(); }));
    return out;
}

} // namespace fincat
