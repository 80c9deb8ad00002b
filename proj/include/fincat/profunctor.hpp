#pragma once

#include "cauchy.hpp"

namespace fincat {

// ---------------------------------------------------------------------------
// Profunctors C -|-> D: bifunctors D^op x C -> Set
// ---------------------------------------------------------------------------

struct Profunctor {
    FinCategory source; // C
    FinCategory target; // D
    std::map<std::pair<std::string, std::string>, FinSet> sets; // (D-object, C-object) -> heteromorphisms
    // for m: d -> d' in D: Phi(d',c) -> Phi(d,c)
    std::map<std::pair<std::string, std::string>, FinFunction> left;  // (D-morphism, C-object)
    // for m: c -> c' in C: Phi(d,c) -> Phi(d,c')
    std::map<std::pair<std::string, std::string>, FinFunction> right; // (D-object, C-morphism)

    const FinSet& at(const std::string& d, const std::string& c) const { return sets.at({d, c}); }
    const FinFunction& lact(const std::string& m, const std::string& c) const { return left.at({m, c}); }
    const FinFunction& ract(const std::string& d, const std::string& m) const { return right.at({d, m}); }

    void validate() const {
        for (const auto& d : target.objects)
            for (const auto& c : source.objects) at(d, c);
        for (const auto& m : target.morphisms)
            for (const auto& c : source.objects) {
                const FinFunction& l = lact(m.name, c);
                if (!(l.dom == at(m.cod, c)) || !(l.cod == at(m.dom, c)))
                    throw Error("ValidationFailed", "profunctor: left action of " + m.name + " mistyped");
            }
        for (const auto& m : source.morphisms)
            for (const auto& d : target.objects) {
                const FinFunction& r = ract(d, m.name);
                if (!(r.dom == at(d, m.dom)) || !(r.cod == at(d, m.cod)))
                    throw Error("ValidationFailed", "profunctor: right action of " + m.name + " mistyped");
            }
        for (const auto& d : target.objects)
            for (const auto& c : source.objects) {
                if (!(lact(target.id(d), c) == FinFunction::identity(at(d, c))))
                    throw Error("ValidationFailed", "profunctor: left identity action broken");
                if (!(ract(d, source.id(c)) == FinFunction::identity(at(d, c))))
                    throw Error("ValidationFailed", "profunctor: right identity action broken");
            }
        for (const auto& g : target.morphisms)
            for (const auto& f : target.morphisms) {
                if (f.cod != g.dom) continue;
                for (const auto& c : source.objects)
                    if (!(lact(target.compose(g.name, f.name), c) ==
                          FinFunction::compose(lact(f.name, c), lact(g.name, c))))
                        throw Error("ValidationFailed", "profunctor: left functoriality broken");
            }
        for (const auto& g : source.morphisms)
            for (const auto& f : source.morphisms) {
                if (f.cod != g.dom) continue;
                for (const auto& d : target.objects)
                    if (!(ract(d, source.compose(g.name, f.name)) ==
                          FinFunction::compose(ract(d, g.name), ract(d, f.name))))
                        throw Error("ValidationFailed", "profunctor: right functoriality broken");
            }
        for (const auto& m : target.morphisms)
            for (const auto& n : source.morphisms) {
                FinFunction a = FinFunction::compose(ract(m.dom, n.name), lact(m.name, n.dom));
                FinFunction b = FinFunction::compose(lact(m.name, n.cod), ract(m.cod, n.name));
                if (!(a == b)) throw Error("ValidationFailed", "profunctor: interchange broken");
            }
    }
};

// the identity profunctor: heteromorphisms d -> c are the arrows of C itself
inline Profunctor hom_profunctor(const FinCategory& c) {
    Profunctor p;
    p.source = c;
    p.target = c;
    for (const auto& d : c.objects)
        for (const auto& cc : c.objects) p.sets[{d, cc}] = c.hom_set(d, cc);
    for (const auto& m : c.morphisms)
        for (const auto& cc : c.objects) {
            std::map<std::string, std::string> lm;
            for (const auto& h : p.sets.at({m.cod, cc}).elements) lm[h] = c.compose(h, m.name);
            p.left[{m.name, cc}] = FinFunction(p.sets.at({m.cod, cc}), p.sets.at({m.dom, cc}), std::move(lm));
        }
    for (const auto& m : c.morphisms)
        for (const auto& d : c.objects) {
            std::map<std::string, std::string> rm;
            for (const auto& h : p.sets.at({d, m.dom}).elements) rm[h] = c.compose(m.name, h);
            p.right[{d, m.name}] = FinFunction(p.sets.at({d, m.dom}), p.sets.at({d, m.cod}), std::move(rm));
        }
    return p;
}

inline Profunctor empty_profunctor(const FinCategory& c, const FinCategory& d) {
    Profunctor p;
    p.source = c;
    p.target = d;
    FinSet none("empty", {});
    FinFunction idn = FinFunction::identity(none);
    for (const auto& dd : d.objects)
        for (const auto& cc : c.objects) p.sets[{dd, cc}] = none;
    for (const auto& m : d.morphisms)
        for (const auto& cc : c.objects) p.left[{m.name, cc}] = idn;
    for (const auto& m : c.morphisms)
        for (const auto& dd : d.objects) p.right[{dd, m.name}] = idn;
    return p;
}

// a covariant set functor F on C, seen as a profunctor C -|-> 1
inline Profunctor functor_as_profunctor(const SetFunctor& f, const FinCategory& one) {
    if (f.variance != Variance::Covariant) throw Error("BaseMismatch", "functor_as_profunctor: expected covariant");
    const std::string& star = one.objects.at(0);
    Profunctor p;
    p.source = f.base;
    p.target = one;
    for (const auto& c : f.base.objects) p.sets[{star, c}] = f.at(c);
    for (const auto& c : f.base.objects) p.left[{one.id(star), c}] = FinFunction::identity(f.at(c));
    for (const auto& m : f.base.morphisms) p.right[{star, m.name}] = f.action(m.name);
    return p;
}

// a presheaf P on C, seen as a profunctor 1 -|-> C
inline Profunctor presheaf_as_profunctor(const SetFunctor& pf, const FinCategory& one) {
    if (pf.variance != Variance::Contravariant)
        throw Error("BaseMismatch", "presheaf_as_profunctor: expected contravariant");
    const std::string& star = one.objects.at(0);
    Profunctor p;
    p.source = one;
    p.target = pf.base;
    for (const auto& d : pf.base.objects) p.sets[{d, star}] = pf.at(d);
    for (const auto& m : pf.base.morphisms) p.left[{m.name, star}] = pf.action(m.name);
    for (const auto& d : pf.base.objects) p.right[{d, one.id(star)}] = FinFunction::identity(pf.at(d));
    return p;
}

// a profunctor is a covariant set functor on D^op x C; lets all set-functor
// machinery (isomorphism search in particular) apply to profunctors
inline FinCategory product_category(const FinCategory& a, const FinCategory& b) {
    FinCategory p;
    p.name = a.name + "x" + b.name;
    for (const auto& x : a.objects)
        for (const auto& y : b.objects) p.objects.push_back(tup({x, y}));
    for (const auto& f : a.morphisms)
        for (const auto& g : b.morphisms)
            p.morphisms.push_back({tup({f.name, g.name}), tup({f.dom, g.dom}), tup({f.cod, g.cod})});
    for (const auto& x : a.objects)
        for (const auto& y : b.objects) p.identity[tup({x, y})] = tup({a.id(x), b.id(y)});
    for (const auto& f2 : a.morphisms)
        for (const auto& f1 : a.morphisms) {
            if (f1.cod != f2.dom) continue;
            for (const auto& g2 : b.morphisms)
                for (const auto& g1 : b.morphisms) {
                    if (g1.cod != g2.dom) continue;
                    p.comp[{tup({f2.name, g2.name}), tup({f1.name, g1.name})}] =
                        tup({a.compose(f2.name, f1.name), b.compose(g2.name, g1.name)});
                }
        }
    p.canonicalize();
    require_valid(p);
    return p;
}

inline SetFunctor profunctor_as_functor(const Profunctor& p) {
    SetFunctor s;
    s.base = product_category(opposite(p.target), p.source);
    s.variance = Variance::Covariant;
    for (const auto& d : p.target.objects)
        for (const auto& c : p.source.objects) s.sets[tup({d, c})] = p.at(d, c);
    for (const auto& m : p.target.morphisms)
        for (const auto& n : p.source.morphisms)
            // (m^op, n): (m.cod, n.dom) -> (m.dom, n.cod) acts by both sides
            s.actions[tup({m.name, n.name})] =
                FinFunction::compose(p.ract(m.dom, n.name), p.lact(m.name, n.dom));
    return s;
}

// ---------------------------------------------------------------------------
// Collage: glue the two categories along the heteromorphisms
// ---------------------------------------------------------------------------

struct Collage {
    FinCategory category;
    std::map<std::string, std::string> d_object, c_object; // original -> collage name
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>> hetero; // (d,c) -> elt -> name
};

inline Collage collage(const Profunctor& p, std::uint64_t cap = kDefaultCap) {
    Collage out;
    FinCategory& k = out.category;
    k.name = "collage";
    for (const auto& d : p.target.objects) {
        out.d_object[d] = "d:" + d;
        k.objects.push_back("d:" + d);
    }
    for (const auto& c : p.source.objects) {
        out.c_object[c] = "c:" + c;
        k.objects.push_back("c:" + c);
    }
    std::uint64_t n = 0;
    for (const auto& m : p.target.morphisms) {
        k.morphisms.push_back({"d:" + m.name, "d:" + m.dom, "d:" + m.cod});
        guard_size(++n, cap, "collage");
    }
    for (const auto& m : p.source.morphisms) {
        k.morphisms.push_back({"c:" + m.name, "c:" + m.dom, "c:" + m.cod});
        guard_size(++n, cap, "collage");
    }
    for (const auto& d : p.target.objects)
        for (const auto& c : p.source.objects)
            for (const auto& x : p.at(d, c).elements) {
                std::string nm = "h:" + d + ":" + c + ":" + x;
                out.hetero[{d, c}][x] = nm;
                k.morphisms.push_back({nm, "d:" + d, "c:" + c});
                guard_size(++n, cap, "collage");
            }
    for (const auto& o : p.target.objects) k.identity["d:" + o] = "d:" + p.target.id(o);
    for (const auto& o : p.source.objects) k.identity["c:" + o] = "c:" + p.source.id(o);

    for (const auto& [pr, gf] : p.target.comp) k.comp[{"d:" + pr.first, "d:" + pr.second}] = "d:" + gf;
    for (const auto& [pr, gf] : p.source.comp) k.comp[{"c:" + pr.first, "c:" + pr.second}] = "c:" + gf;
    for (const auto& m : p.target.morphisms)
        for (const auto& c : p.source.objects)
            for (const auto& x : p.at(m.cod, c).elements)
                k.comp[{out.hetero.at({m.cod, c}).at(x), "d:" + m.name}] =
                    out.hetero.at({m.dom, c}).at(p.lact(m.name, c)(x));
    for (const auto& m : p.source.morphisms)
        for (const auto& d : p.target.objects)
            for (const auto& x : p.at(d, m.dom).elements)
                k.comp[{"c:" + m.name, out.hetero.at({d, m.dom}).at(x)}] =
                    out.hetero.at({d, m.cod}).at(p.ract(d, m.name)(x));
    k.canonicalize();
    require_valid(k);
    return out;
}

// ---------------------------------------------------------------------------
// Composition of profunctors via the coend over the middle category
// ---------------------------------------------------------------------------

// phi: C -|-> D, psi: D -|-> E; result C -|-> E with classes of paths e -> d -> c
inline Profunctor compose_profunctors(const Profunctor& phi, const Profunctor& psi, std::uint64_t cap = kDefaultCap) {
    if (!(phi.target.objects == psi.source.objects))
        throw Error("BaseMismatch", "compose_profunctors: middle categories differ");
    const FinCategory& dmid = phi.target;
    Profunctor out;
    out.source = phi.source;
    out.target = psi.target;

    // per (e,c): pairing over D of P(d) = Phi(d,c) against F(d) = Psi(e,d)
    std::map<std::pair<std::string, std::string>, PairingResult> cell;
    for (const auto& e : psi.target.objects)
        for (const auto& c : phi.source.objects) {
            SetFunctor pf; // contravariant on D
            pf.base = dmid;
            pf.variance = Variance::Contravariant;
            for (const auto& d : dmid.objects) pf.sets[d] = phi.at(d, c);
            for (const auto& m : dmid.morphisms) pf.actions[m.name] = phi.lact(m.name, c);
            SetFunctor ff; // covariant on D
            ff.base = dmid;
            ff.variance = Variance::Covariant;
            for (const auto& d : dmid.objects) ff.sets[d] = psi.at(e, d);
            for (const auto& m : dmid.morphisms) ff.actions[m.name] = psi.ract(e, m.name);
            PairingResult pr = pairing(pf, ff, cap);
            out.sets[{e, c}] = pr.carrier;
            cell.emplace(std::make_pair(e, c), std::move(pr));
        }

    // actions, computed on canonical representatives and verified well-defined
    auto act = [&](const PairingResult& from, const PairingResult& to,
                   auto&& on_triple) {
        std::map<std::string, std::string> mp;
        for (const auto& [cls, members] : from.classes) {
            std::string image;
            for (const auto& mem : members) {
                auto [d, ph, ps] = CauchyPoint::split_triple(mem);
                std::string img = on_triple(d, ph, ps, to);
                if (image.empty()) image = img;
                else if (image != img)
                    throw Error("Internal", "compose_profunctors: action not well-defined on " + cls);
            }
            mp[cls] = image;
        }
        return mp;
    };
    for (const auto& m : psi.target.morphisms) // m: e -> e', contravariant side
        for (const auto& c : phi.source.objects) {
            const PairingResult& from = cell.at({m.cod, c});
            const PairingResult& to = cell.at({m.dom, c});
            auto mp = act(from, to, [&](const std::string& d, const std::string& ph, const std::string& ps,
                                        const PairingResult& t) {
                return t.class_of(d, ph, psi.lact(m.name, d)(ps));
            });
            out.left[{m.name, c}] = FinFunction(out.sets.at({m.cod, c}), out.sets.at({m.dom, c}), std::move(mp));
        }
    for (const auto& m : phi.source.morphisms) // m: c -> c', covariant side
        for (const auto& e : psi.target.objects) {
            const PairingResult& from = cell.at({e, m.dom});
            const PairingResult& to = cell.at({e, m.cod});
            auto mp = act(from, to, [&](const std::string& d, const std::string& ph, const std::string& ps,
                                        const PairingResult& t) {
                return t.class_of(d, phi.ract(d, m.name)(ph), ps);
            });
            out.right[{e, m.name}] = FinFunction(out.sets.at({e, m.dom}), out.sets.at({e, m.cod}), std::move(mp));
        }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Natural isomorphism search
// ---------------------------------------------------------------------------

inline std::vector<FinFunction> bijections(const FinSet& a, const FinSet& b) {
    std::vector<FinFunction> out;
    if (a.size() != b.size()) return out;
    std::vector<std::string> perm = b.elements;
    std::sort(perm.begin(), perm.end());
    do {
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < a.size(); ++i) m[a.elements[i]] = perm[i];
        out.push_back(FinFunction(a, b, std::move(m)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline std::vector<NatTransformation> natural_isos(const SetFunctor& f, const SetFunctor& g,
                                                   std::uint64_t cap = kDefaultCap) {
    if (!(f.base.objects == g.base.objects) || f.variance != g.variance)
        throw Error("BaseMismatch", "natural_isos: functors not comparable");
    const std::vector<std::string>& objs = f.base.objects;
    std::vector<std::vector<FinFunction>> choices;
    std::uint64_t count = 1;
    for (const auto& o : objs) {
        choices.push_back(bijections(f.at(o), g.at(o)));
        if (choices.back().empty()) return {};
        count = sat_mul(count, choices.back().size());
        guard_size(count, cap, "natural_isos");
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

inline std::optional<NatTransformation> natural_iso_search(const SetFunctor& f, const SetFunctor& g,
                                                           std::uint64_t cap = kDefaultCap) {
    std::vector<NatTransformation> all = natural_isos(f, g, cap);
    if (all.empty()) return std::nullopt;
    return all.front(); // enumeration order is canonical
}

inline bool profunctors_isomorphic(const Profunctor& a, const Profunctor& b, std::uint64_t cap = kDefaultCap) {
    return natural_iso_search(profunctor_as_functor(a), profunctor_as_functor(b), cap).has_value();
}

// ---------------------------------------------------------------------------
// Strict monoidal structures and Day convolution
// ---------------------------------------------------------------------------

struct StrictMonoidalStructure {
    FinCategory base;
    std::map<std::pair<std::string, std::string>, std::string> tensor_obj;
    std::map<std::pair<std::string, std::string>, std::string> tensor_mor;
    std::string unit;

    const std::string& tobj(const std::string& a, const std::string& b) const { return tensor_obj.at({a, b}); }
    const std::string& tmor(const std::string& f, const std::string& g) const { return tensor_mor.at({f, g}); }

    void validate() const {
        const FinCategory& c = base;
        if (!c.has_object(unit)) throw Error("ValidationFailed", "monoidal: unit is not an object");
        for (const auto& f : c.morphisms)
            for (const auto& g : c.morphisms) {
                const Morphism& t = c.mor(tmor(f.name, g.name));
                if (t.dom != tobj(f.dom, g.dom) || t.cod != tobj(f.cod, g.cod))
                    throw Error("ValidationFailed", "monoidal: tensor of morphisms mistyped");
            }
        for (const auto& a : c.objects)
            for (const auto& b : c.objects)
                if (tmor(c.id(a), c.id(b)) != c.id(tobj(a, b)))
                    throw Error("ValidationFailed", "monoidal: tensor does not preserve identities");
        for (const auto& f2 : c.morphisms)
            for (const auto& f1 : c.morphisms) {
                if (f1.cod != f2.dom) continue;
                for (const auto& g2 : c.morphisms)
                    for (const auto& g1 : c.morphisms) {
                        if (g1.cod != g2.dom) continue;
                        if (tmor(c.compose(f2.name, f1.name), c.compose(g2.name, g1.name)) !=
                            c.compose(tmor(f2.name, g2.name), tmor(f1.name, g1.name)))
                            throw Error("ValidationFailed", "monoidal: interchange with composition broken");
                    }
            }
        for (const auto& a : c.objects) {
            if (tobj(unit, a) != a || tobj(a, unit) != a)
                throw Error("ValidationFailed", "monoidal: unit law broken on objects");
            for (const auto& b : c.objects)
                for (const auto& x : c.objects)
                    if (tobj(tobj(a, b), x) != tobj(a, tobj(b, x)))
                        throw Error("ValidationFailed", "monoidal: associativity broken on objects");
        }
        for (const auto& f : c.morphisms) {
            if (tmor(c.id(unit), f.name) != f.name || tmor(f.name, c.id(unit)) != f.name)
                throw Error("ValidationFailed", "monoidal: unit law broken on morphisms");
            for (const auto& g : c.morphisms)
                for (const auto& h : c.morphisms)
                    if (tmor(tmor(f.name, g.name), h.name) != tmor(f.name, tmor(g.name, h.name)))
                        throw Error("ValidationFailed", "monoidal: associativity broken on morphisms");
        }
    }
};

// a discrete group/monoid as a strict monoidal category: objects multiply
inline StrictMonoidalStructure discrete_monoidal(const FinCategory& c,
                                                 std::map<std::pair<std::string, std::string>, std::string> table,
                                                 std::string unit) {
    StrictMonoidalStructure m;
    m.base = c;
    m.tensor_obj = std::move(table);
    m.unit = std::move(unit);
    for (const auto& a : c.objects)
        for (const auto& b : c.objects) m.tensor_mor[{c.id(a), c.id(b)}] = c.id(m.tobj(a, b));
    m.validate();
    return m;
}

// a poset with binary meets as a strict monoidal category: unique arrows
inline StrictMonoidalStructure poset_monoidal(const FinCategory& c,
                                              std::map<std::pair<std::string, std::string>, std::string> table,
                                              std::string unit) {
    StrictMonoidalStructure m;
    m.base = c;
    m.tensor_obj = std::move(table);
    m.unit = std::move(unit);
    for (const auto& f : c.morphisms)
        for (const auto& g : c.morphisms) {
            std::vector<std::string> hom = c.hom(m.tobj(f.dom, g.dom), m.tobj(f.cod, g.cod));
            if (hom.size() != 1) throw Error("ValidationFailed", "poset_monoidal: hom not a singleton");
            m.tensor_mor[{f.name, g.name}] = hom[0];
        }
    m.validate();
    return m;
}

inline StrictMonoidalStructure monoidal_one() {
    FinCategory one = cat_one();
    return discrete_monoidal(one, {{{"o", "o"}, "o"}}, "o");
}

inline StrictMonoidalStructure monoidal_z2disc() {
    FinCategory c = cat_z2disc();
    return discrete_monoidal(
        c, {{{"I", "I"}, "I"}, {{"I", "A"}, "A"}, {{"A", "I"}, "A"}, {{"A", "A"}, "I"}}, "I");
}

inline StrictMonoidalStructure monoidal_z3disc() {
    FinCategory c = cat_z3disc();
    std::map<std::pair<std::string, std::string>, std::string> t;
    // A = 1, B = 2 in Z/3
    auto name = [](int k) { return k == 0 ? "I" : k == 1 ? "A" : "B"; };
    auto val = [](const std::string& o) { return o == "I" ? 0 : o == "A" ? 1 : 2; };
    for (const auto& a : c.objects)
        for (const auto& b : c.objects) t[{a, b}] = name((val(a) + val(b)) % 3);
    return discrete_monoidal(c, std::move(t), "I");
}

inline StrictMonoidalStructure monoidal_poset2_min() {
    FinCategory c = cat_poset2();
    return poset_monoidal(
        c, {{{"p0", "p0"}, "p0"}, {{"p0", "p1"}, "p0"}, {{"p1", "p0"}, "p0"}, {{"p1", "p1"}, "p1"}}, "p1");
}

// Day convolution of two covariant set functors
inline SetFunctor day_convolve(const SetFunctor& f, const SetFunctor& g, const StrictMonoidalStructure& m,
                               std::uint64_t cap = kDefaultCap) {
    if (f.variance != Variance::Covariant || g.variance != Variance::Covariant)
        throw Error("BaseMismatch", "day_convolve: expected covariant functors");
    const FinCategory& c = m.base;
    if (!(f.base.objects == c.objects) || !(g.base.objects == c.objects))
        throw Error("BaseMismatch", "day_convolve: functors not on the monoidal base");

    FinCategory cc = product_category(c, c);
    // FG((X,Y)) = F(X) x G(Y), covariant on C x C
    SetFunctor fg;
    fg.base = cc;
    fg.variance = Variance::Covariant;
    for (const auto& x : c.objects)
        for (const auto& y : c.objects) {
            std::vector<std::string> elts;
            for (const auto& a : f.at(x).elements)
                for (const auto& b : g.at(y).elements) elts.push_back(tup({a, b}));
            fg.sets[tup({x, y})] = FinSet("FG", std::move(elts));
        }
    for (const auto& mf : c.morphisms)
        for (const auto& mg : c.morphisms) {
            std::map<std::string, std::string> mp;
            for (const auto& a : f.at(mf.dom).elements)
                for (const auto& b : g.at(mg.dom).elements)
                    mp[tup({a, b})] = tup({f.action(mf.name)(a), g.action(mg.name)(b)});
            fg.actions[tup({mf.name, mg.name})] =
                FinFunction(fg.sets.at(tup({mf.dom, mg.dom})), fg.sets.at(tup({mf.cod, mg.cod})), std::move(mp));
        }

    SetFunctor out;
    out.base = c;
    out.variance = Variance::Covariant;
    std::map<std::string, PairingResult> cells;
    for (const auto& z : c.objects) {
        // H((X,Y)) = C(X tensor Y, Z), contravariant on C x C
        SetFunctor h;
        h.base = cc;
        h.variance = Variance::Contravariant;
        for (const auto& x : c.objects)
            for (const auto& y : c.objects) h.sets[tup({x, y})] = c.hom_set(m.tobj(x, y), z);
        for (const auto& mf : c.morphisms)
            for (const auto& mg : c.morphisms) {
                std::map<std::string, std::string> mp;
                for (const auto& k : h.sets.at(tup({mf.cod, mg.cod})).elements)
                    mp[k] = c.compose(k, m.tmor(mf.name, mg.name));
                h.actions[tup({mf.name, mg.name})] =
                    FinFunction(h.sets.at(tup({mf.cod, mg.cod})), h.sets.at(tup({mf.dom, mg.dom})), std::move(mp));
            }
        PairingResult pr = pairing(h, fg, cap);
        out.sets[z] = pr.carrier;
        cells.emplace(z, std::move(pr));
    }
    for (const auto& n : c.morphisms) {
        const PairingResult& from = cells.at(n.dom);
        const PairingResult& to = cells.at(n.cod);
        std::map<std::string, std::string> mp;
        for (const auto& [cls, members] : from.classes) {
            std::string image;
            for (const auto& mem : members) {
                auto [xy, k, ab] = CauchyPoint::split_triple(mem);
                std::string img = to.class_of(xy, c.compose(n.name, k), ab);
                if (image.empty()) image = img;
                else if (image != img) throw Error("Internal", "day_convolve: action not well-defined");
            }
            mp[cls] = image;
        }
        out.actions[n.name] = FinFunction(out.sets.at(n.dom), out.sets.at(n.cod), std::move(mp));
    }
    out.validate();
    return out;
}

struct StrongMonoidalReport {
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> pairs_checked;
    std::vector<std::pair<std::string, std::string>> failures;
};

inline StrongMonoidalReport check_yoneda_strong_monoidal(const StrictMonoidalStructure& m,
                                                         std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = m.base;
    StrongMonoidalReport out;
    for (const auto& a : c.objects)
        for (const auto& b : c.objects) {
            SetFunctor lhs = day_convolve(hom_functor(c, a, Variance::Covariant),
                                          hom_functor(c, b, Variance::Covariant), m, cap);
            SetFunctor rhs = hom_functor(c, m.tobj(a, b), Variance::Covariant);
            out.pairs_checked.push_back({a, b});
            if (!natural_iso_search(lhs, rhs, cap)) {
                out.pass = false;
                out.failures.push_back({a, b});
            }
        }
    return out;
}

} // namespace fincat
