#pragma once

#include "core.hpp"

#include <array>
#include <tuple>

namespace fincat {

// ---------------------------------------------------------------------------
// Bifunctors C^op x C -> Set
// ---------------------------------------------------------------------------

struct Bifunctor {
    FinCategory base;
    std::map<std::pair<std::string, std::string>, FinSet> sets; // (contra, cov)
    // f: A -> A'  gives  B(A',K) -> B(A,K)
    std::map<std::pair<std::string, std::string>, FinFunction> left;  // (morphism, second object)
    // g: B -> B'  gives  B(K,B) -> B(K,B')
    std::map<std::pair<std::string, std::string>, FinFunction> right; // (first object, morphism)

    const FinSet& at(const std::string& a, const std::string& b) const { return sets.at({a, b}); }
    const FinFunction& lact(const std::string& f, const std::string& k) const { return left.at({f, k}); }
    const FinFunction& ract(const std::string& k, const std::string& g) const { return right.at({k, g}); }

    void validate() const {
        const FinCategory& c = base;
        for (const auto& a : c.objects)
            for (const auto& b : c.objects) at(a, b);
        for (const auto& m : c.morphisms)
            for (const auto& k : c.objects) {
                const FinFunction& l = lact(m.name, k);
                if (!(l.dom == at(m.cod, k)) || !(l.cod == at(m.dom, k)))
                    throw Error("ValidationFailed", "bifunctor: left action of " + m.name + " mistyped");
                const FinFunction& r = ract(k, m.name);
                if (!(r.dom == at(k, m.dom)) || !(r.cod == at(k, m.cod)))
                    throw Error("ValidationFailed", "bifunctor: right action of " + m.name + " mistyped");
            }
        for (const auto& o : c.objects)
            for (const auto& k : c.objects) {
                if (!(lact(c.id(o), k) == FinFunction::identity(at(o, k))))
                    throw Error("ValidationFailed", "bifunctor: left identity action broken at " + o);
                if (!(ract(k, c.id(o)) == FinFunction::identity(at(k, o))))
                    throw Error("ValidationFailed", "bifunctor: right identity action broken at " + o);
            }
        for (const auto& g : c.morphisms)
            for (const auto& f : c.morphisms) {
                if (f.cod != g.dom) continue;
                const std::string& gf = c.compose(g.name, f.name);
                for (const auto& k : c.objects) {
                    if (!(lact(gf, k) == FinFunction::compose(lact(f.name, k), lact(g.name, k))))
                        throw Error("ValidationFailed", "bifunctor: left functoriality broken at " + gf);
                    if (!(ract(k, gf) == FinFunction::compose(ract(k, g.name), ract(k, f.name))))
                        throw Error("ValidationFailed", "bifunctor: right functoriality broken at " + gf);
                }
            }
        // interchange
        for (const auto& f : c.morphisms)
            for (const auto& g : c.morphisms) {
                FinFunction a = FinFunction::compose(ract(f.dom, g.name), lact(f.name, g.dom));
                FinFunction b = FinFunction::compose(lact(f.name, g.cod), ract(f.cod, g.name));
                if (!(a == b)) throw Error("ValidationFailed", "bifunctor: interchange broken at (" + f.name + "," + g.name + ")");
            }
    }
};

inline Bifunctor hom_bifunctor(const FinCategory& c) {
    Bifunctor b;
    b.base = c;
    for (const auto& a : c.objects)
        for (const auto& k : c.objects) b.sets[{a, k}] = c.hom_set(a, k);
    for (const auto& m : c.morphisms)
        for (const auto& k : c.objects) {
            std::map<std::string, std::string> lm;
            for (const auto& h : b.sets.at({m.cod, k}).elements) lm[h] = c.compose(h, m.name);
            b.left[{m.name, k}] = FinFunction(b.sets.at({m.cod, k}), b.sets.at({m.dom, k}), std::move(lm));
            std::map<std::string, std::string> rm;
            for (const auto& h : b.sets.at({k, m.dom}).elements) rm[h] = c.compose(m.name, h);
            b.right[{k, m.name}] = FinFunction(b.sets.at({k, m.dom}), b.sets.at({k, m.cod}), std::move(rm));
        }
    return b;
}

// ---------------------------------------------------------------------------
// Ends: terminal wedges computed as compatible diagonal tuples
// ---------------------------------------------------------------------------

struct Wedge {
    FinSet tip;
    std::map<std::string, FinFunction> legs; // object -> tip -> B(J,J)
};

struct EndResult {
    FinSet carrier; // tuple names
    std::map<std::string, std::map<std::string, std::string>> tuples; // tuple name -> (object -> element)
    std::map<std::string, FinFunction> legs; // projections

    Wedge wedge() const { return Wedge{carrier, legs}; }
};

inline EndResult end_of(const Bifunctor& b, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = b.base;
    // order objects by increasing diagonal size: small domains first prunes best
    std::vector<std::string> order = c.objects;
    std::stable_sort(order.begin(), order.end(),
                     [&](const std::string& x, const std::string& y) { return b.at(x, x).size() < b.at(y, y).size(); });

    // constraints between pairs of objects, precomputed per non-identity morphism
    struct Constraint {
        std::string from, to; // object J (source side) and K
        const FinFunction* on_from; // B(J,g): B(J,J) -> B(J,K)
        const FinFunction* on_to;   // B(g,K): B(K,K) -> B(J,K)
    };
    std::vector<Constraint> cons;
    for (const auto& m : c.morphisms) {
        if (m.name == c.id(m.dom)) continue;
        cons.push_back({m.dom, m.cod, &b.ract(m.dom, m.name), &b.lact(m.name, m.cod)});
    }

    EndResult out;
    std::map<std::string, std::string> assign;
    std::vector<std::string> names;
    std::uint64_t visited = 0;

    auto consistent = [&](const std::string& just) {
        for (const auto& k : cons) {
            if (k.from != just && k.to != just) continue;
            auto i1 = assign.find(k.from), i2 = assign.find(k.to);
            if (i1 == assign.end() || i2 == assign.end()) continue;
            if ((*k.on_from)(i1->second) != (*k.on_to)(i2->second)) return false;
        }
        return true;
    };

    std::vector<std::map<std::string, std::string>> found;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        guard_size(++visited, cap, "end_of");
        if (depth == order.size()) {
            found.push_back(assign);
            return;
        }
        const std::string& j = order[depth];
        for (const auto& x : b.at(j, j).elements) {
            assign[j] = x;
            if (consistent(j)) self(self, depth + 1);
            assign.erase(j);
        }
    };
    rec(rec, 0);

    for (const auto& t : found) {
        std::vector<std::string> parts;
        for (const auto& o : c.objects) parts.push_back(t.at(o));
        std::string name = tup(parts);
        out.tuples[name] = t;
    }
    std::vector<std::string> names_sorted;
    for (const auto& [n, _] : out.tuples) names_sorted.push_back(n);
    out.carrier = FinSet("end", names_sorted);
    for (const auto& o : c.objects) {
        std::map<std::string, std::string> proj;
        for (const auto& [n, t] : out.tuples) proj[n] = t.at(o);
        out.legs[o] = FinFunction(out.carrier, b.at(o, o), std::move(proj));
    }
    return out;
}

// Checks the wedge identity B(J,g) . z_J = B(g,K) . z_K for every morphism.
inline bool is_wedge(const Bifunctor& b, const Wedge& w) {
    for (const auto& m : b.base.morphisms) {
        FinFunction lhs = FinFunction::compose(b.ract(m.dom, m.name), w.legs.at(m.dom));
        FinFunction rhs = FinFunction::compose(b.lact(m.name, m.cod), w.legs.at(m.cod));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Coends: initial co-wedges computed as a union-find quotient
// ---------------------------------------------------------------------------

struct CoendResult {
    FinSet carrier; // class names (= least member)
    std::map<std::string, std::vector<std::string>> classes; // class -> sorted members "(J,x)"
    std::map<std::string, std::string> member_class;          // member -> class

    const std::string& class_of(const std::string& obj, const std::string& elt) const {
        auto it = member_class.find(tup({obj, elt}));
        if (it == member_class.end()) throw Error("Internal", "coend: unknown member (" + obj + "," + elt + ")");
        return it->second;
    }
};

inline CoendResult coend_of(const Bifunctor& b, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = b.base;
    UnionFind uf;
    std::uint64_t n = 0;
    for (const auto& j : c.objects) {
        n += b.at(j, j).size();
        guard_size(n, cap, "coend_of");
        for (const auto& x : b.at(j, j).elements) uf.add(tup({j, x}));
    }
    // for g: J -> K and x in B(K,J): B(g,J)(x) ~ B(K,g)(x)
    for (const auto& m : c.morphisms)
        for (const auto& x : b.at(m.cod, m.dom).elements)
            uf.unite(tup({m.dom, b.lact(m.name, m.dom)(x)}), tup({m.cod, b.ract(m.cod, m.name)(x)}));

    CoendResult out;
    out.classes = uf.classes();
    std::vector<std::string> names;
    for (const auto& [root, members] : out.classes) {
        names.push_back(root);
        for (const auto& mem : members) out.member_class[mem] = root;
    }
    out.carrier = FinSet("coend", names);
    return out;
}

// ---------------------------------------------------------------------------
// Pairing <P,F> = coend over A of P(A) x F(A); classes of triples [A,p,f]
// ---------------------------------------------------------------------------

struct PairingResult {
    FinSet carrier; // class names (= least triple "(A,p,f)")
    std::map<std::string, std::vector<std::string>> classes;
    std::map<std::string, std::string> member_class;
    // decoded triples: class name -> (A, p, f) of the canonical representative
    std::map<std::string, std::array<std::string, 3>> canonical;

    const std::string& class_of(const std::string& a, const std::string& p, const std::string& f) const {
        auto it = member_class.find(tup({a, p, f}));
        if (it == member_class.end()) throw Error("Internal", "pairing: unknown triple (" + a + "," + p + "," + f + ")");
        return it->second;
    }
};

inline PairingResult pairing(const SetFunctor& p, const SetFunctor& f, std::uint64_t cap = kDefaultCap) {
    if (p.variance != Variance::Contravariant || f.variance != Variance::Covariant)
        throw Error("BaseMismatch", "pairing: expected a presheaf and a set functor");
    if (p.base.objects != f.base.objects) throw Error("BaseMismatch", "pairing: different bases");
    const FinCategory& c = f.base;

    UnionFind uf;
    std::uint64_t n = 0;
    for (const auto& a : c.objects) {
        n += sat_mul(p.at(a).size(), f.at(a).size());
        guard_size(n, cap, "pairing");
        for (const auto& pe : p.at(a).elements)
            for (const auto& fe : f.at(a).elements) uf.add(tup({a, pe, fe}));
    }
    // [A, g^*q, x] ~ [B, q, g_*x] for g: A -> B, q in P(B), x in F(A)
    for (const auto& m : c.morphisms)
        for (const auto& q : p.at(m.cod).elements)
            for (const auto& x : f.at(m.dom).elements)
                uf.unite(tup({m.dom, p.action(m.name)(q), x}), tup({m.cod, q, f.action(m.name)(x)}));

    PairingResult out;
    out.classes = uf.classes();
    std::vector<std::string> names;
    for (const auto& [root, members] : out.classes) {
        names.push_back(root);
        for (const auto& mem : members) out.member_class[mem] = root;
    }
    out.carrier = FinSet("pairing", names);
    for (const auto& a : c.objects)
        for (const auto& pe : p.at(a).elements)
            for (const auto& fe : f.at(a).elements) {
                std::string t = tup({a, pe, fe});
                if (out.member_class.at(t) == t) out.canonical[t] = {a, pe, fe};
            }
    return out;
}

// ---------------------------------------------------------------------------
// Natural transformations as an end of function-sets
// ---------------------------------------------------------------------------

// encode a finite function as its image tuple (in sorted domain order)
inline std::string encode_function(const FinFunction& f) {
    std::vector<std::string> imgs;
    for (const auto& x : f.dom.elements) imgs.push_back(f(x));
    return tup(imgs);
}

inline FinSet function_set(const FinSet& dom, const FinSet& cod, std::uint64_t cap = kDefaultCap) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < dom.size(); ++i) n = sat_mul(n, cod.size());
    guard_size(n, cap, "function_set");
    std::vector<std::string> elts;
    if (dom.size() > 0 && cod.size() == 0) return FinSet("fun", {});
    std::vector<std::size_t> idx(dom.size(), 0);
    do {
        std::vector<std::string> imgs;
        for (std::size_t i = 0; i < dom.size(); ++i) imgs.push_back(cod.elements[idx[i]]);
        elts.push_back(tup(imgs));
    } while (advance_odometer(idx, [&](std::size_t) { return cod.size(); }));
    return FinSet("fun", std::move(elts));
}

inline FinFunction decode_function(const FinSet& dom, const FinSet& cod, const std::string& code) {
    // code is "(y1,...,yn)" with images in sorted-domain order
    std::map<std::string, std::string> m;
    std::string body = code.substr(1, code.size() - 2);
    std::vector<std::string> imgs;
    std::string cur;
    int depth = 0;
    for (char ch : body) {
        if (ch == '(' ) depth++;
        if (ch == ')') depth--;
        if (ch == ',' && depth == 0) {
            imgs.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    if (!cur.empty() || !dom.elements.empty()) imgs.push_back(cur);
    if (imgs.size() == 1 && imgs[0].empty() && dom.elements.empty()) imgs.clear();
    if (imgs.size() != dom.size()) throw Error("Internal", "decode_function: arity mismatch for " + code);
    for (std::size_t i = 0; i < dom.size(); ++i) m[dom.elements[i]] = imgs[i];
    return FinFunction(dom, cod, std::move(m));
}

// The bifunctor (C,C') |-> Set(F C, G C'); its end is Nat(F,G).
inline Bifunctor nat_bifunctor(const SetFunctor& f0, const SetFunctor& g0, std::uint64_t cap = kDefaultCap) {
    // contravariant pairs are covariant pairs over the opposite base
    SetFunctor f = f0.variance == Variance::Contravariant ? flip_variance(f0) : f0;
    SetFunctor g = g0.variance == Variance::Contravariant ? flip_variance(g0) : g0;
    const FinCategory& c = f.base;
    Bifunctor b;
    b.base = c;
    for (const auto& a : c.objects)
        for (const auto& k : c.objects) b.sets[{a, k}] = function_set(f.at(a), g.at(k), cap);
    for (const auto& m : c.morphisms)
        for (const auto& k : c.objects) {
            // left: precompose with F(m): Set(F cod, G k) -> Set(F dom, G k)
            std::map<std::string, std::string> lm;
            for (const auto& code : b.sets.at({m.cod, k}).elements) {
                FinFunction phi = decode_function(f.at(m.cod), g.at(k), code);
                lm[code] = encode_function(FinFunction::compose(phi, f.action(m.name)));
            }
            b.left[{m.name, k}] = FinFunction(b.sets.at({m.cod, k}), b.sets.at({m.dom, k}), std::move(lm));
            // right: postcompose with G(m): Set(F k, G dom) -> Set(F k, G cod)
            std::map<std::string, std::string> rm;
            for (const auto& code : b.sets.at({k, m.dom}).elements) {
                FinFunction phi = decode_function(f.at(k), g.at(m.dom), code);
                rm[code] = encode_function(FinFunction::compose(g.action(m.name), phi));
            }
            b.right[{k, m.name}] = FinFunction(b.sets.at({k, m.dom}), b.sets.at({k, m.cod}), std::move(rm));
        }
    return b;
}

struct NatEndResult {
    FinSet carrier;
    std::vector<NatTransformation> decoded; // in carrier order
};

inline NatEndResult nat_transformations_end(const SetFunctor& f, const SetFunctor& g, std::uint64_t cap = kDefaultCap) {
    if (f.base.objects != g.base.objects || f.variance != g.variance)
        throw Error("BaseMismatch", "nat_transformations_end: functors not comparable");
    EndResult e = end_of(nat_bifunctor(f, g, cap), cap);
    SetFunctor fc = f.variance == Variance::Contravariant ? flip_variance(f) : f;
    SetFunctor gc = g.variance == Variance::Contravariant ? flip_variance(g) : g;
    NatEndResult out;
    out.carrier = e.carrier;
    for (const auto& name : e.carrier.elements) {
        NatTransformation nt;
        nt.source = f;
        nt.target = g;
        for (const auto& [o, code] : e.tuples.at(name))
            nt.components.emplace(o, decode_function(fc.at(o), gc.at(o), code));
        if (!nt.natural()) throw Error("Internal", "nat_transformations_end: decoded tuple not natural");
        out.decoded.push_back(std::move(nt));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wedge <-> hom-weighted cone conversion
// ---------------------------------------------------------------------------

// A cone over B weighted by hom: one leg per (J, K, g: J->K).
struct HomWeightedCone {
    FinSet tip;
    std::map<std::tuple<std::string, std::string, std::string>, FinFunction> legs;
};

inline HomWeightedCone wedge_to_cone(const Bifunctor& b, const Wedge& w) {
    if (!is_wedge(b, w)) throw Error("InvalidWedge", "wedge diamond fails");
    HomWeightedCone out;
    out.tip = w.tip;
    for (const auto& j : b.base.objects)
        for (const auto& k : b.base.objects)
            for (const auto& g : b.base.hom(j, k))
                out.legs[{j, k, g}] = FinFunction::compose(b.ract(j, g), w.legs.at(j));
    return out;
}

inline Wedge cone_to_wedge(const Bifunctor& b, const HomWeightedCone& c) {
    Wedge out;
    out.tip = c.tip;
    for (const auto& j : b.base.objects) out.legs[j] = c.legs.at({j, j, b.base.id(j)});
    if (!is_wedge(b, out)) throw Error("InvalidWedge", "cone does not restrict to a wedge");
    return out;
}

// All hom-weighted cones with a given tip, for counting cross-checks:
// families c_{J,K}: C(J,K) -> Set(tip, B(J,K)) natural in J and K, which is
// the same data as a wedge with that tip (Lemma-level fact, verified here by
// enumerating wedges and converting).
inline std::vector<Wedge> wedges_with_tip(const Bifunctor& b, const FinSet& tip, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = b.base;
    std::vector<std::string> objs = c.objects;
    std::vector<std::vector<FinFunction>> choices;
    std::uint64_t count = 1;
    for (const auto& j : objs) {
        FinSet codomain = b.at(j, j);
        std::vector<FinFunction> fs;
        for (const auto& code : function_set(tip, codomain, cap).elements)
            fs.push_back(decode_function(tip, codomain, code));
        if (fs.empty()) return {};
        count = sat_mul(count, fs.size());
        guard_size(count, cap, "wedges_with_tip");
        choices.push_back(std::move(fs));
    }
    std::vector<Wedge> out;
    std::vector<std::size_t> pick(objs.size(), 0);
    do {
        Wedge w;
        w.tip = tip;
        for (std::size_t i = 0; i < objs.size(); ++i) w.legs.emplace(objs[i], choices[i][pick[i]]);
        if (is_wedge(b, w)) out.push_back(std::move(w));
    } while (advance_odometer(pick, [&](std::size_t i) { return choices[i].size(); }));
    return out;
}

} // namespace fincat
