#pragma once

#include "kan.hpp"

namespace fincat {

// ---------------------------------------------------------------------------
// Idempotents and splittings
// ---------------------------------------------------------------------------

struct Idempotent {
    FinCategory base;
    std::string object;   // X
    std::string morphism; // e: X -> X

    void validate() const {
        const Morphism& m = base.mor(morphism);
        if (m.dom != object || m.cod != object)
            throw Error("ValidationFailed", "idempotent " + morphism + " is not an endomorphism of " + object);
        if (base.compose(morphism, morphism) != morphism)
            throw Error("ValidationFailed", morphism + " is not idempotent");
    }
};

inline std::vector<Idempotent> idempotents_of(const FinCategory& c) {
    std::vector<Idempotent> out;
    for (const auto& o : c.objects)
        for (const auto& e : c.hom(o, o))
            if (c.compose(e, e) == e) out.push_back({c, o, e});
    return out;
}

struct Splitting {
    std::string through;    // E
    std::string section;    // iota: E -> X
    std::string retraction; // pi: X -> E
};

// F(A) = {f: X -> A | f.e = f}, covariant; the arrows that only see the image of e
inline SetFunctor invariant_right(const FinCategory& c, const Idempotent& e) {
    SetFunctor s;
    s.base = c;
    s.variance = Variance::Covariant;
    for (const auto& a : c.objects) {
        std::vector<std::string> elts;
        for (const auto& f : c.hom(e.object, a))
            if (c.compose(f, e.morphism) == f) elts.push_back(f);
        s.sets[a] = FinSet("InvR@" + a, std::move(elts));
    }
    for (const auto& m : c.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& f : s.sets.at(m.dom).elements) mp[f] = c.compose(m.name, f);
        s.actions[m.name] = FinFunction(s.sets.at(m.dom), s.sets.at(m.cod), std::move(mp));
    }
    return s;
}

// P(A) = {p: A -> X | e.p = p}, contravariant
inline SetFunctor invariant_left(const FinCategory& c, const Idempotent& e) {
    SetFunctor s;
    s.base = c;
    s.variance = Variance::Contravariant;
    for (const auto& a : c.objects) {
        std::vector<std::string> elts;
        for (const auto& p : c.hom(a, e.object))
            if (c.compose(e.morphism, p) == p) elts.push_back(p);
        s.sets[a] = FinSet("InvL@" + a, std::move(elts));
    }
    for (const auto& m : c.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& p : s.sets.at(m.cod).elements) mp[p] = c.compose(p, m.name);
        s.actions[m.name] = FinFunction(s.sets.at(m.cod), s.sets.at(m.dom), std::move(mp));
    }
    return s;
}

// Exhaustive search for a splitting, cross-checked against representability
// of the left invariants: both must succeed or both must fail.
inline std::optional<Splitting> split_idempotent(const Idempotent& e) {
    e.validate();
    const FinCategory& c = e.base;
    std::optional<Splitting> found;
    for (const auto& obj : c.objects) {
        for (const auto& iota : c.hom(obj, e.object)) {
            for (const auto& pi : c.hom(e.object, obj))
                if (c.compose(pi, iota) == c.id(obj) && c.compose(iota, pi) == e.morphism) {
                    found = Splitting{obj, iota, pi};
                    break;
                }
            if (found) break;
        }
        if (found) break;
    }
    std::optional<Representation> rep = find_representation(invariant_left(c, e));
    if (found.has_value() != rep.has_value())
        throw Error("InternalDisagreement", "splitting and representability of the left invariants disagree");
    if (found) {
        // the representing object also carries a splitting
        bool witnessed = false;
        for (const auto& iota : c.hom(rep->object, e.object))
            for (const auto& pi : c.hom(e.object, rep->object))
                if (c.compose(pi, iota) == c.id(rep->object) && c.compose(iota, pi) == e.morphism) witnessed = true;
        if (!witnessed)
            throw Error("InternalDisagreement", "representing object " + rep->object + " carries no splitting");
    }
    return found;
}

struct CompletenessReport {
    bool complete = true;
    std::vector<Idempotent> non_split;
};

inline CompletenessReport is_cauchy_complete(const FinCategory& c) {
    CompletenessReport out;
    for (const auto& e : idempotents_of(c))
        if (!split_idempotent(e)) {
            out.complete = false;
            out.non_split.push_back(e);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Karoubi envelope
// ---------------------------------------------------------------------------

struct KaroubiCategory {
    FinCategory category;
    FinCategory base;
    std::map<std::string, std::pair<std::string, std::string>> object_data; // name -> (X, e)
    // morphism name -> underlying base morphism
    std::map<std::string, std::string> underlying;

    std::string object_name(const std::string& x, const std::string& e) const { return tup({x, e}); }
};

inline KaroubiCategory karoubi_envelope(const FinCategory& c, std::uint64_t cap = kDefaultCap) {
    KaroubiCategory out;
    out.base = c;
    FinCategory& k = out.category;
    k.name = "K(" + c.name + ")";

    std::vector<Idempotent> idems = idempotents_of(c);
    std::uint64_t n = idems.size();
    guard_size(n, cap, "karoubi_envelope");
    for (const auto& e : idems) {
        std::string name = tup({e.object, e.morphism});
        k.objects.push_back(name);
        out.object_data[name] = {e.object, e.morphism};
    }

    // morphisms (X,e) -> (X',e') are g: X -> X' with g.e = g and e'.g = g
    auto mor_name = [&](const std::string& a, const std::string& b, const std::string& g) {
        return tup({a, b, g});
    };
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> homs; // (a,b) -> base g's
    std::uint64_t count = 0;
    for (const auto& a : k.objects)
        for (const auto& b : k.objects) {
            const auto& [x, e] = out.object_data.at(a);
            const auto& [x2, e2] = out.object_data.at(b);
            for (const auto& g : c.hom(x, x2))
                if (c.compose(g, e) == g && c.compose(e2, g) == g) {
                    std::string name = mor_name(a, b, g);
                    k.morphisms.push_back({name, a, b});
                    out.underlying[name] = g;
                    homs[{a, b}].push_back(g);
                    guard_size(++count, cap, "karoubi_envelope");
                }
        }
    for (const auto& a : k.objects) {
        const auto& [x, e] = out.object_data.at(a);
        k.identity[a] = mor_name(a, a, e); // the identity of (X,e) is e itself
    }
    for (const auto& [ab, gs] : homs)
        for (const auto& [bc, hs] : homs) {
            if (bc.first != ab.second) continue;
            for (const auto& h : hs)
                for (const auto& g : gs)
                    k.comp[{mor_name(bc.first, bc.second, h), mor_name(ab.first, ab.second, g)}] =
                        mor_name(ab.first, bc.second, c.compose(h, g));
        }
    k.canonicalize();
    require_valid(k);
    return out;
}

// X |-> (X, id_X), fully faithful
inline FunctorData karoubi_inclusion(const KaroubiCategory& k) {
    FunctorData f;
    f.source = k.base;
    f.target = k.category;
    for (const auto& x : k.base.objects) f.obj_map[x] = tup({x, k.base.id(x)});
    for (const auto& m : k.base.morphisms)
        f.mor_map[m.name] = tup({f.obj_map.at(m.dom), f.obj_map.at(m.cod), m.name});
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Cauchy points
// ---------------------------------------------------------------------------

struct CauchyPoint {
    SetFunctor F; // covariant
    SetFunctor P; // contravariant
    // c_{A,B}: P(A) x F(B) -> C(A,B)
    std::map<std::pair<std::string, std::string>, std::map<std::pair<std::string, std::string>, std::string>> c;
    PairingResult pf; // <P,F>
    std::string i;    // distinguished class name in pf

    const std::string& pair_mor(const std::string& a, const std::string& b, const std::string& p,
                                const std::string& f) const {
        return c.at({a, b}).at({p, f});
    }

    void validate() const {
        const FinCategory& cat = F.base;
        F.validate();
        P.validate();
        if (!(P.base.objects == cat.objects)) throw Error("BaseMismatch", "cauchy point: F and P on different bases");
        // typing of c
        for (const auto& a : cat.objects)
            for (const auto& b : cat.objects)
                for (const auto& p : P.at(a).elements)
                    for (const auto& f : F.at(b).elements) {
                        const Morphism& m = cat.mor(pair_mor(a, b, p, f));
                        if (m.dom != a || m.cod != b)
                            throw Error("ValidationFailed", "cauchy point: c(" + p + "," + f + ") mistyped");
                    }
        // naturality in the first argument: c(g^*p, f) = c(p,f) . g
        for (const auto& g : cat.morphisms)
            for (const auto& b : cat.objects)
                for (const auto& p : P.at(g.cod).elements)
                    for (const auto& f : F.at(b).elements)
                        if (pair_mor(g.dom, b, P.action(g.name)(p), f) !=
                            cat.compose(pair_mor(g.cod, b, p, f), g.name))
                            throw Error("ValidationFailed", "cauchy point: c not natural in the source at " + g.name);
        // naturality in the second argument: c(p, h_*f) = h . c(p,f)
        for (const auto& h : cat.morphisms)
            for (const auto& a : cat.objects)
                for (const auto& p : P.at(a).elements)
                    for (const auto& f : F.at(h.dom).elements)
                        if (pair_mor(a, h.cod, p, F.action(h.name)(f)) !=
                            cat.compose(h.name, pair_mor(a, h.dom, p, f)))
                            throw Error("ValidationFailed", "cauchy point: c not natural in the target at " + h.name);
        // identity laws, on every representative of the distinguished class
        if (!pf.classes.count(i)) throw Error("ValidationFailed", "cauchy point: distinguished class missing");
        for (const auto& mem : pf.classes.at(i)) {
            const auto [x, pi, iota] = split_triple(mem);
            for (const auto& b : cat.objects)
                for (const auto& f : F.at(b).elements)
                    if (F.action(pair_mor(x, b, pi, f))(iota) != f)
                        throw Error("ValidationFailed", "cauchy point: c(pi,f)_* iota != f at representative " + mem);
            for (const auto& a : cat.objects)
                for (const auto& p : P.at(a).elements)
                    if (P.action(pair_mor(a, x, p, iota))(pi) != p)
                        throw Error("ValidationFailed", "cauchy point: c(p,iota)^* pi != p at representative " + mem);
        }
    }

    // canonical representative (X, pi, iota) of the distinguished class
    std::array<std::string, 3> representative() const { return pf.canonical.at(i); }

    static std::array<std::string, 3> split_triple(const std::string& t) {
        std::string body = t.substr(1, t.size() - 2);
        std::vector<std::string> parts;
        std::string cur;
        int depth = 0;
        for (char ch : body) {
            if (ch == '(') depth++;
            if (ch == ')') depth--;
            if (ch == ',' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
            } else
                cur += ch;
        }
        parts.push_back(cur);
        if (parts.size() != 3) throw Error("Internal", "cauchy point: malformed triple " + t);
        return {parts[0], parts[1], parts[2]};
    }
};

inline CauchyPoint cauchy_point_from_idempotent(const Idempotent& e, std::uint64_t cap = kDefaultCap) {
    e.validate();
    const FinCategory& cat = e.base;
    CauchyPoint pt;
    pt.F = invariant_right(cat, e);
    pt.P = invariant_left(cat, e);
    for (const auto& a : cat.objects)
        for (const auto& b : cat.objects) {
            auto& cell = pt.c[{a, b}];
            for (const auto& p : pt.P.at(a).elements)
                for (const auto& f : pt.F.at(b).elements) cell[{p, f}] = cat.compose(f, p);
        }
    pt.pf = pairing(pt.P, pt.F, cap);
    pt.i = pt.pf.class_of(e.object, e.morphism, e.morphism);
    pt.validate();
    return pt;
}

// the Cauchy point of the identity idempotent: the representables at X
inline CauchyPoint cauchy_point_at_object(const FinCategory& c, const std::string& x, std::uint64_t cap = kDefaultCap) {
    return cauchy_point_from_idempotent({c, x, c.id(x)}, cap);
}

// ---------------------------------------------------------------------------
// The extension category C' of a Cauchy point
// ---------------------------------------------------------------------------

struct CauchyExtension {
    FinCategory category;
    std::string extra = kExtraObject;
    std::map<std::pair<std::string, std::string>, std::string> f_name; // (A, F-element) -> E -> A
    std::map<std::pair<std::string, std::string>, std::string> p_name; // (A, P-element) -> A -> E
    std::map<std::string, std::string> e_name;                          // pairing class -> E -> E
};

inline CauchyExtension cauchy_extension(const CauchyPoint& pt, std::uint64_t cap = kDefaultCap) {
    const FinCategory& base = pt.F.base;
    if (base.has_object(kExtraObject))
        throw Error("ValidationFailed", "cauchy_extension: base already contains " + std::string(kExtraObject));
    CauchyExtension out;
    FinCategory& x = out.category;
    x.name = base.name + "'";
    x.objects = base.objects;
    x.objects.push_back(kExtraObject);
    x.morphisms = base.morphisms;
    x.identity = base.identity;
    x.comp = base.comp;

    std::uint64_t n = base.morphisms.size();
    for (const auto& a : base.objects) {
        for (const auto& f : pt.F.at(a).elements) {
            std::string nm = "__v:F:" + a + ":" + f;
            out.f_name[{a, f}] = nm;
            x.morphisms.push_back({nm, kExtraObject, a});
            guard_size(++n, cap, "cauchy_extension");
        }
        for (const auto& p : pt.P.at(a).elements) {
            std::string nm = "__v:P:" + a + ":" + p;
            out.p_name[{a, p}] = nm;
            x.morphisms.push_back({nm, a, kExtraObject});
            guard_size(++n, cap, "cauchy_extension");
        }
    }
    for (const auto& cls : pt.pf.carrier.elements) {
        std::string nm = "__v:i:" + cls;
        out.e_name[cls] = nm;
        x.morphisms.push_back({nm, kExtraObject, kExtraObject});
        guard_size(++n, cap, "cauchy_extension");
    }
    x.identity[kExtraObject] = out.e_name.at(pt.i);

    // composition, case by case
    for (const auto& a : base.objects) {
        // base g: A -> B after virtual f: E -> A
        for (const auto& f : pt.F.at(a).elements)
            for (const auto& g : base.morphisms)
                if (g.dom == a)
                    x.comp[{g.name, out.f_name.at({a, f})}] = out.f_name.at({g.cod, pt.F.action(g.name)(f)});
        // virtual p: A -> E after base g: B -> A
        for (const auto& p : pt.P.at(a).elements)
            for (const auto& g : base.morphisms)
                if (g.cod == a)
                    x.comp[{out.p_name.at({a, p}), g.name}] = out.p_name.at({g.dom, pt.P.action(g.name)(p)});
    }
    for (const auto& a : base.objects)
        for (const auto& b : base.objects)
            for (const auto& p : pt.P.at(a).elements)
                for (const auto& f : pt.F.at(b).elements) {
                    // (f: E -> B) after (p: A -> E) is the base morphism c(p,f)
                    x.comp[{out.f_name.at({b, f}), out.p_name.at({a, p})}] = pt.pair_mor(a, b, p, f);
                    if (a == b)
                        // (p: A -> E) after (f: E -> A) is the class [A,p,f]
                        x.comp[{out.p_name.at({a, p}), out.f_name.at({a, f})}] =
                            out.e_name.at(pt.pf.class_of(a, p, f));
                }
    for (const auto& cls : pt.pf.carrier.elements) {
        const auto& [a, p, f] = pt.pf.canonical.at(cls);
        // (f': E -> B) after the class: push f along c(p,f')
        for (const auto& b : base.objects)
            for (const auto& f2 : pt.F.at(b).elements)
                x.comp[{out.f_name.at({b, f2}), out.e_name.at(cls)}] =
                    out.f_name.at({b, pt.F.action(pt.pair_mor(a, b, p, f2))(f)});
        // the class after (p': B -> E): pull p along c(p',f)
        for (const auto& b : base.objects)
            for (const auto& p2 : pt.P.at(b).elements)
                x.comp[{out.e_name.at(cls), out.p_name.at({b, p2})}] =
                    out.p_name.at({b, pt.P.action(pt.pair_mor(b, a, p2, f))(p)});
    }
    for (const auto& cls1 : pt.pf.carrier.elements)
        for (const auto& cls2 : pt.pf.carrier.elements) {
            const auto& [a, p1, f1] = pt.pf.canonical.at(cls1);
            const auto& [b, p2, f2] = pt.pf.canonical.at(cls2);
            // [B,p2,f2] . [A,p1,f1] = [B, p2, c(p1,f2)_* f1]
            x.comp[{out.e_name.at(cls2), out.e_name.at(cls1)}] =
                out.e_name.at(pt.pf.class_of(b, p2, pt.F.action(pt.pair_mor(a, b, p1, f2))(f1)));
        }

    x.canonicalize();
    require_valid(x);
    return out;
}

// ---------------------------------------------------------------------------
// Realization: is the point already present in the base category?
// ---------------------------------------------------------------------------

inline std::optional<std::string> realize_cauchy_point(const CauchyPoint& pt) {
    std::optional<Representation> rf = find_representation(pt.F);
    std::optional<Representation> rp = find_representation(pt.P);
    if (rf.has_value() != rp.has_value())
        throw Error("InternalDisagreement", "realize: F and P representability disagree");

    // essential surjectivity of the inclusion into the extension: some base
    // object R is isomorphic to the extra object, i.e. there are u in F(R),
    // v in P(R) with c(v,u) = id_R and [R,v,u] the distinguished class
    const FinCategory& c = pt.F.base;
    std::optional<std::string> realized;
    for (const auto& r : c.objects) {
        for (const auto& u : pt.F.at(r).elements)
            for (const auto& v : pt.P.at(r).elements)
                if (pt.pair_mor(r, r, v, u) == c.id(r) && pt.pf.class_of(r, v, u) == pt.i) realized = r;
        if (realized) break;
    }
    if (realized.has_value() != rf.has_value())
        throw Error("InternalDisagreement", "realize: representability and essential surjectivity disagree");
    if (!rf) return std::nullopt;
    return rf->object;
}

// ---------------------------------------------------------------------------
// Retracts of representables
// ---------------------------------------------------------------------------

struct RepresentableRetract {
    std::string object;     // X
    NatTransformation iota; // S => hom-at-X
    NatTransformation pi;   // hom-at-X => S
    Idempotent induced;     // e: X -> X from iota.pi at the identity
};

inline std::optional<RepresentableRetract> retract_of_representable(const SetFunctor& s,
                                                                    std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = s.base;
    for (const auto& x : c.objects) {
        SetFunctor h = hom_functor(c, x, s.variance);
        std::vector<NatTransformation> iotas = nat_transformations_direct(s, h, cap);
        if (iotas.empty()) continue;
        std::vector<NatTransformation> pis = nat_transformations_direct(h, s, cap);
        for (const auto& iota : iotas)
            for (const auto& pi : pis) {
                NatTransformation round = compose_nats(pi, iota);
                bool is_id = true;
                for (const auto& o : c.objects)
                    if (!(round.components.at(o) == FinFunction::identity(s.at(o)))) { is_id = false; break; }
                if (!is_id) continue;
                // the induced idempotent on X via the Yoneda correspondence
                std::string e = compose_nats(iota, pi).components.at(x)(c.id(x));
                Idempotent idem{c, x, e};
                idem.validate();
                return RepresentableRetract{x, iota, pi, idem};
            }
    }
    return std::nullopt;
}

inline bool is_absolute_weight(const SetFunctor& w, std::uint64_t cap = kDefaultCap) {
    return retract_of_representable(w, cap).has_value();
}

// ---------------------------------------------------------------------------
// Morphisms of Cauchy points
// ---------------------------------------------------------------------------

struct CauchyMorphisms {
    PairingResult classes; // <P2, F1>
    // class -> natural transformation P1 => P2, and class -> F2 => F1
    std::map<std::string, NatTransformation> to_p_nat;
    std::map<std::string, NatTransformation> to_f_nat;
};

inline CauchyMorphisms cauchy_morphisms(const CauchyPoint& pt1, const CauchyPoint& pt2,
                                        std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = pt1.F.base;
    if (!(pt2.F.base.objects == c.objects)) throw Error("BaseMismatch", "cauchy_morphisms: different bases");
    CauchyMorphisms out;
    out.classes = pairing(pt2.P, pt1.F, cap);

    const auto [x1, pi1, iota1] = pt1.representative();
    const auto [x2, pi2, iota2] = pt2.representative();

    for (const auto& cls : out.classes.carrier.elements) {
        const auto& [b, p2, f1] = out.classes.canonical.at(cls);
        // alpha_A(p in P1(A)) = c1(p, f1)^* p2
        NatTransformation alpha;
        alpha.source = pt1.P;
        alpha.target = pt2.P;
        for (const auto& a : c.objects) {
            std::map<std::string, std::string> mp;
            for (const auto& p : pt1.P.at(a).elements) mp[p] = pt2.P.action(pt1.pair_mor(a, b, p, f1))(p2);
            alpha.components.emplace(a, FinFunction(pt1.P.at(a), pt2.P.at(a), std::move(mp)));
        }
        if (!alpha.natural()) throw Error("Internal", "cauchy_morphisms: induced P-transformation not natural");
        // beta_A(f in F2(A)) = c2(p2, f)_* f1
        NatTransformation beta;
        beta.source = pt2.F;
        beta.target = pt1.F;
        for (const auto& a : c.objects) {
            std::map<std::string, std::string> mp;
            for (const auto& f : pt2.F.at(a).elements) mp[f] = pt1.F.action(pt2.pair_mor(b, a, p2, f))(f1);
            beta.components.emplace(a, FinFunction(pt2.F.at(a), pt1.F.at(a), std::move(mp)));
        }
        if (!beta.natural()) throw Error("Internal", "cauchy_morphisms: induced F-transformation not natural");
        out.to_p_nat.emplace(cls, std::move(alpha));
        out.to_f_nat.emplace(cls, std::move(beta));
    }

    // the translations are mutually inverse bijections onto all natural
    // transformations
    std::set<std::string> p_codes, f_codes;
    for (const auto& [cls, alpha] : out.to_p_nat) {
        // back-translation: [X1, alpha_{X1}(pi1), iota1]
        if (out.classes.class_of(x1, alpha.components.at(x1)(pi1), iota1) != cls)
            throw Error("Internal", "cauchy_morphisms: P-translation does not invert");
        p_codes.insert(alpha.encode());
    }
    for (const auto& [cls, beta] : out.to_f_nat) {
        // back-translation: [X2, pi2, beta_{X2}(iota2)]
        if (out.classes.class_of(x2, pi2, beta.components.at(x2)(iota2)) != cls)
            throw Error("Internal", "cauchy_morphisms: F-translation does not invert");
        f_codes.insert(beta.encode());
    }
    std::vector<NatTransformation> all_p = nat_transformations_direct(pt1.P, pt2.P, cap);
    std::vector<NatTransformation> all_f = nat_transformations_direct(pt2.F, pt1.F, cap);
    if (p_codes.size() != out.classes.carrier.size() || all_p.size() != out.classes.carrier.size())
        throw Error("Internal", "cauchy_morphisms: classes do not biject with Nat(P1,P2)");
    if (f_codes.size() != out.classes.carrier.size() || all_f.size() != out.classes.carrier.size())
        throw Error("Internal", "cauchy_morphisms: classes do not biject with Nat(F2,F1)");
    return out;
}

// identity morphism of a point is its distinguished class
inline const std::string& cauchy_identity_morphism(const CauchyPoint& pt) { return pt.i; }

// composite of z2: pt2 -> pt3 after z1: pt1 -> pt2
inline std::string compose_cauchy_morphisms(const CauchyPoint& pt1, const CauchyPoint& pt2, const CauchyPoint& pt3,
                                            const CauchyMorphisms& m21, const CauchyMorphisms& m32,
                                            const CauchyMorphisms& m31, const std::string& z2,
                                            const std::string& z1) {
    (void)pt3;
    const auto& [a, p2, f1] = m21.classes.canonical.at(z1);
    const auto& [b, p3, f2] = m32.classes.canonical.at(z2);
    // [b, p3, c2(p2, f2)_* f1]
    return m31.classes.class_of(b, p3, pt1.F.action(pt2.pair_mor(a, b, p2, f2))(f1));
}

// ---------------------------------------------------------------------------
// The comparison Phi: K(C) -> Cauchy points and its equivalence check
// ---------------------------------------------------------------------------

struct PhiReport {
    bool fully_faithful = true;
    std::size_t objects = 0;
    std::size_t hom_pairs = 0;
};

inline PhiReport phi_equivalence_check(const FinCategory& c, std::uint64_t cap = kDefaultCap) {
    KaroubiCategory k = karoubi_envelope(c, cap);
    std::map<std::string, CauchyPoint> points;
    for (const auto& o : k.category.objects) {
        const auto& [x, e] = k.object_data.at(o);
        points.emplace(o, cauchy_point_from_idempotent({c, x, e}, cap));
    }
    PhiReport out;
    out.objects = k.category.objects.size();
    for (const auto& a : k.category.objects)
        for (const auto& b : k.category.objects) {
            const CauchyPoint& p1 = points.at(a);
            const CauchyPoint& p2 = points.at(b);
            CauchyMorphisms cm = cauchy_morphisms(p1, p2, cap);
            const auto& [x, e] = k.object_data.at(a);
            // Phi(g) = [X, g, e]: the class of postcomposition by g
            std::set<std::string> image;
            std::vector<std::string> hom = k.category.hom(a, b);
            for (const auto& m : hom) image.insert(cm.classes.class_of(x, k.underlying.at(m), e));
            if (image.size() != hom.size() || image.size() != cm.classes.carrier.size()) out.fully_faithful = false;
            ++out.hom_pairs;
        }
    // essential surjectivity on idempotent-generated points holds by
    // construction: every such point is Phi of its own idempotent
    return out;
}

// ---------------------------------------------------------------------------
// Eventual and universal retractions of weighted cones (absolute limits)
// ---------------------------------------------------------------------------

struct EventualRetraction {
    std::string cls;        // class name in the reversed pairing
    std::string object;     // J
    std::string weight_elt; // iota in W(J)
    std::string retraction; // pi: D(J) -> T
    bool universal = false;
};

// the pairing <W-, C(D-, X)> whose classes are candidate retractions into X
inline PairingResult retraction_pairing(const WeightedDiagram& wd, const std::string& x, std::uint64_t cap) {
    const FinCategory& c = wd.diagram.target;
    SetFunctor q; // J |-> C(D J, X), contravariant
    q.base = wd.weight.base;
    q.variance = Variance::Contravariant;
    for (const auto& j : q.base.objects) q.sets[j] = c.hom_set(wd.diagram.obj(j), x);
    for (const auto& m : q.base.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& g : q.sets.at(m.cod).elements) mp[g] = c.compose(g, wd.diagram.mor(m.name));
        q.actions[m.name] = FinFunction(q.sets.at(m.cod), q.sets.at(m.dom), std::move(mp));
    }
    return pairing(q, wd.weight, cap);
}

inline bool cone_is_terminal(const WeightedDiagram& wd, const WeightedCone& cone, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    if (!cone_is_natural(wd, cone, false)) return false;
    for (const auto& a : c.objects)
        for (const auto& other : cones_with_tip(wd, a, false, cap)) {
            std::size_t mediators = 0;
            for (const auto& u : c.hom(a, cone.tip)) {
                bool match = true;
                for (const auto& [key, leg] : cone.legs)
                    if (c.compose(leg, u) != other.legs.at(key)) { match = false; break; }
                if (match) ++mediators;
            }
            if (mediators != 1) return false;
        }
    return true;
}

inline std::optional<EventualRetraction> universal_retraction(const WeightedDiagram& wd, const WeightedCone& cone,
                                                              std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    if (!cone_is_natural(wd, cone, false)) throw Error("ValidationFailed", "universal_retraction: not a cone");
    const std::string& t = cone.tip;
    PairingResult at_t = retraction_pairing(wd, t, cap);

    // candidate classes: pi . leg(J, iota) = id_T (a class-invariant condition)
    std::vector<std::string> candidates;
    for (const auto& cls : at_t.carrier.elements) {
        const auto& [j, pi, iota] = at_t.canonical.at(cls);
        if (c.compose(pi, cone.legs.at({j, iota})) == c.id(t)) candidates.push_back(cls);
    }

    std::map<std::string, PairingResult> at_x;
    for (const auto& x : c.objects) at_x.emplace(x, retraction_pairing(wd, x, cap));

    std::optional<EventualRetraction> winner;
    for (const auto& cls : candidates) {
        const auto& [j, pi, iota] = at_t.canonical.at(cls);
        bool universal = true;
        for (const auto& x : c.objects) {
            const PairingResult& px = at_x.at(x);
            for (const auto& f : c.hom(t, x)) {
                // the pushforward f_*[J, iota, pi] = [J, iota, f . pi]
                const std::string& pushed = px.class_of(j, c.compose(f, pi), iota);
                // every class [K, w, g] with g . leg(K,w) = f must equal it
                for (const auto& other : px.carrier.elements) {
                    const auto& [k, g, w] = px.canonical.at(other);
                    if (c.compose(g, cone.legs.at({k, w})) == f && other != pushed) { universal = false; break; }
                }
                if (!universal) break;
            }
            if (!universal) break;
        }
        if (universal) {
            if (winner && winner->cls != cls)
                throw Error("Internal", "universal_retraction: two distinct universal retractions");
            winner = EventualRetraction{cls, j, iota, pi, true};
        }
    }
    return winner;
}

// ---------------------------------------------------------------------------
// Category comparison helpers: isomorphism and equivalence (via skeletons)
// ---------------------------------------------------------------------------

inline bool objects_isomorphic(const FinCategory& c, const std::string& a, const std::string& b) {
    for (const auto& u : c.hom(a, b))
        for (const auto& v : c.hom(b, a))
            if (c.compose(v, u) == c.id(a) && c.compose(u, v) == c.id(b)) return true;
    return false;
}

inline FinCategory full_subcategory(const FinCategory& c, const std::vector<std::string>& objs,
                                    const std::string& name) {
    std::set<std::string> keep(objs.begin(), objs.end());
    FinCategory out;
    out.name = name;
    out.objects.assign(keep.begin(), keep.end());
    for (const auto& m : c.morphisms)
        if (keep.count(m.dom) && keep.count(m.cod)) out.morphisms.push_back(m);
    for (const auto& o : out.objects) out.identity[o] = c.id(o);
    for (const auto& [pair, gf] : c.comp) {
        const Morphism& g = c.mor(pair.first);
        const Morphism& f = c.mor(pair.second);
        if (keep.count(f.dom) && keep.count(f.cod) && keep.count(g.cod)) out.comp[pair] = gf;
    }
    out.canonicalize();
    require_valid(out);
    return out;
}

inline FinCategory skeleton(const FinCategory& c) {
    std::vector<std::string> reps;
    for (const auto& o : c.objects) {
        bool seen = false;
        for (const auto& r : reps)
            if (objects_isomorphic(c, r, o)) seen = true;
        if (!seen) reps.push_back(o);
    }
    return full_subcategory(c, reps, "sk(" + c.name + ")");
}

// exhaustive isomorphism search: bijective object maps with hom-size pruning,
// then backtracking morphism assignment
inline std::optional<FunctorData> find_isomorphism(const FinCategory& a, const FinCategory& b,
                                                   std::uint64_t cap = kDefaultCap) {
    if (a.objects.size() != b.objects.size() || a.morphisms.size() != b.morphisms.size()) return std::nullopt;
    std::vector<std::string> bobjs = b.objects;
    std::sort(bobjs.begin(), bobjs.end());
    std::uint64_t tried = 0;
    do {
        guard_size(++tried, cap, "find_isomorphism");
        std::map<std::string, std::string> omap;
        bool ok = true;
        for (std::size_t i = 0; i < a.objects.size() && ok; ++i) {
            omap[a.objects[i]] = bobjs[i];
            for (std::size_t jj = 0; jj <= i && ok; ++jj)
                if (a.hom(a.objects[i], a.objects[jj]).size() != b.hom(bobjs[i], bobjs[jj]).size() ||
                    a.hom(a.objects[jj], a.objects[i]).size() != b.hom(bobjs[jj], bobjs[i]).size())
                    ok = false;
        }
        if (!ok) continue;

        // backtracking over morphisms in order; identities are forced
        std::map<std::string, std::string> mmap;
        std::map<std::string, std::string> used; // image -> preimage
        for (const auto& o : a.objects) {
            mmap[a.id(o)] = b.id(omap.at(o));
            used[b.id(omap.at(o))] = a.id(o);
        }
        std::vector<std::string> todo;
        for (const auto& m : a.morphisms)
            if (!mmap.count(m.name)) todo.push_back(m.name);

        auto consistent = [&](const std::string& just) {
            for (const auto& [mn, _] : mmap) {
                const Morphism& g = a.mor(just);
                const Morphism& f = a.mor(mn);
                if (f.cod == g.dom && mmap.count(a.compose(just, mn)))
                    if (b.compose(mmap.at(just), mmap.at(mn)) != mmap.at(a.compose(just, mn))) return false;
                if (g.cod == f.dom && mmap.count(a.compose(mn, just)))
                    if (b.compose(mmap.at(mn), mmap.at(just)) != mmap.at(a.compose(mn, just))) return false;
            }
            return true;
        };
        auto rec = [&](auto&& self, std::size_t depth) -> bool {
            if (depth == todo.size()) return true;
            const Morphism& m = a.mor(todo[depth]);
            for (const auto& cand : b.hom(omap.at(m.dom), omap.at(m.cod))) {
                if (used.count(cand)) continue;
                mmap[m.name] = cand;
                used[cand] = m.name;
                if (consistent(m.name) && self(self, depth + 1)) return true;
                mmap.erase(m.name);
                used.erase(cand);
            }
            return false;
        };
        if (rec(rec, 0)) {
            FunctorData f;
            f.source = a;
            f.target = b;
            f.obj_map = omap;
            f.mor_map = mmap;
            f.validate();
            return f;
        }
    } while (std::next_permutation(bobjs.begin(), bobjs.end()));
    return std::nullopt;
}

inline bool are_equivalent(const FinCategory& a, const FinCategory& b, std::uint64_t cap = kDefaultCap) {
    return find_isomorphism(skeleton(a), skeleton(b), cap).has_value();
}

// all functors a -> b, by backtracking; used for absolute-limit sweeps
inline std::vector<FunctorData> all_functors(const FinCategory& a, const FinCategory& b,
                                             std::uint64_t cap = kDefaultCap) {
    std::vector<FunctorData> out;
    std::vector<std::size_t> opick(a.objects.size(), 0);
    if (a.objects.empty()) {
        FunctorData f;
        f.source = a;
        f.target = b;
        out.push_back(f);
        return out;
    }
    if (b.objects.empty()) return out;
    std::uint64_t tried = 0;
    do {
        std::map<std::string, std::string> omap;
        for (std::size_t i = 0; i < a.objects.size(); ++i) omap[a.objects[i]] = b.objects[opick[i]];

        std::map<std::string, std::string> mmap;
        for (const auto& o : a.objects) mmap[a.id(o)] = b.id(omap.at(o));
        std::vector<std::string> todo;
        for (const auto& m : a.morphisms)
            if (!mmap.count(m.name)) todo.push_back(m.name);

        auto consistent = [&](const std::string& just) {
            for (const auto& [mn, _] : mmap) {
                const Morphism& g = a.mor(just);
                const Morphism& f = a.mor(mn);
                if (f.cod == g.dom && mmap.count(a.compose(just, mn)))
                    if (b.compose(mmap.at(just), mmap.at(mn)) != mmap.at(a.compose(just, mn))) return false;
                if (g.cod == f.dom && mmap.count(a.compose(mn, just)))
                    if (b.compose(mmap.at(mn), mmap.at(just)) != mmap.at(a.compose(mn, just))) return false;
            }
            return true;
        };
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            guard_size(++tried, cap, "all_functors");
            if (depth == todo.size()) {
                FunctorData f;
                f.source = a;
                f.target = b;
                f.obj_map = omap;
                f.mor_map = mmap;
                out.push_back(std::move(f));
                return;
            }
            const Morphism& m = a.mor(todo[depth]);
            for (const auto& cand : b.hom(omap.at(m.dom), omap.at(m.cod))) {
                mmap[m.name] = cand;
                if (consistent(m.name)) self(self, depth + 1);
                mmap.erase(m.name);
            }
        };
        rec(rec, 0);
    } while (advance_odometer(opick, [&](std::size_t) { return b.objects.size(); }));
    return out;
}

} // namespace fincat
