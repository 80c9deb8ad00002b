#pragma once

#include "ends.hpp"

namespace fincat {

// ---------------------------------------------------------------------------
// Category of elements
// ---------------------------------------------------------------------------

struct ElementsCategory {
    FinCategory base;       // El(W)
    FunctorData projection; // Pi: El(W) -> J
    std::map<std::string, std::pair<std::string, std::string>> index; // El-object -> (J-object, weight element)
};

inline ElementsCategory category_of_elements(const SetFunctor& w, std::uint64_t cap = kDefaultCap) {
    const FinCategory& j = w.base;
    ElementsCategory out;
    FinCategory& el = out.base;
    el.name = "El(" + j.name + ")";

    std::uint64_t n = 0;
    for (const auto& o : j.objects) {
        n += w.at(o).size();
        guard_size(n, cap, "category_of_elements");
        for (const auto& x : w.at(o).elements) {
            std::string name = tup({o, x});
            el.objects.push_back(name);
            out.index[name] = {o, x};
            out.projection.obj_map[name] = o;
        }
    }

    // covariant: g: J->K carries (J,w) to (K, g_*w); contravariant: g carries
    // (J, g^*u) to (K, u). Morphisms are named by (g, source element).
    for (const auto& m : j.morphisms) {
        if (w.variance == Variance::Covariant) {
            for (const auto& x : w.at(m.dom).elements) {
                std::string name = tup({m.name, x});
                el.morphisms.push_back({name, tup({m.dom, x}), tup({m.cod, w.action(m.name)(x)})});
                out.projection.mor_map[name] = m.name;
                if (m.name == j.id(m.dom)) el.identity[tup({m.dom, x})] = name;
            }
        } else {
            for (const auto& u : w.at(m.cod).elements) {
                std::string name = tup({m.name, u});
                el.morphisms.push_back({name, tup({m.dom, w.action(m.name)(u)}), tup({m.cod, u})});
                out.projection.mor_map[name] = m.name;
                if (m.name == j.id(m.dom)) el.identity[tup({m.dom, u})] = name;
            }
        }
    }
    for (const auto& g : j.morphisms)
        for (const auto& f : j.morphisms) {
            if (f.cod != g.dom) continue;
            const std::string& gf = j.compose(g.name, f.name);
            if (w.variance == Variance::Covariant) {
                for (const auto& x : w.at(f.dom).elements)
                    el.comp[{tup({g.name, w.action(f.name)(x)}), tup({f.name, x})}] = tup({gf, x});
            } else {
                for (const auto& u : w.at(g.cod).elements)
                    el.comp[{tup({g.name, u}), tup({f.name, w.action(g.name)(u)})}] = tup({gf, u});
            }
        }
    el.canonicalize();
    require_valid(el);
    out.projection.source = el;
    out.projection.target = j;
    out.projection.validate();
    return out;
}

// The diagram D . Pi on El(W), for a Set-valued diagram D on J.
inline SetFunctor restrict_along_elements(const ElementsCategory& el, const SetFunctor& d) {
    SetFunctor out;
    out.base = el.base;
    out.variance = Variance::Covariant;
    for (const auto& o : el.base.objects) out.sets[o] = d.at(el.projection.obj_map.at(o));
    for (const auto& m : el.base.morphisms) out.actions[m.name] = d.action(el.projection.mor_map.at(m.name));
    return out;
}

// ---------------------------------------------------------------------------
// Ordinary limits and colimits of Set-valued diagrams
// ---------------------------------------------------------------------------

struct SetLimit {
    FinSet carrier;
    std::map<std::string, FinFunction> legs; // object -> projection / injection
    // limits: tuple name -> (object -> element); colimits: class -> members
    std::map<std::string, std::map<std::string, std::string>> tuples;
    std::map<std::string, std::vector<std::string>> classes;
};

// B(J,K) := D(K), so the wedge condition degenerates to the limit condition.
inline Bifunctor diagram_bifunctor(const SetFunctor& d) {
    Bifunctor b;
    b.base = d.base;
    for (const auto& a : d.base.objects)
        for (const auto& k : d.base.objects) b.sets[{a, k}] = d.at(k);
    for (const auto& m : d.base.morphisms)
        for (const auto& k : d.base.objects) {
            b.left[{m.name, k}] = FinFunction::identity(d.at(k));
            b.right[{k, m.name}] = d.action(m.name);
        }
    return b;
}

inline SetLimit limit_set(const SetFunctor& d, std::uint64_t cap = kDefaultCap) {
    EndResult e = end_of(diagram_bifunctor(d), cap);
    return SetLimit{e.carrier, e.legs, e.tuples, {}};
}

inline SetLimit colimit_set(const SetFunctor& d, std::uint64_t cap = kDefaultCap) {
    CoendResult c = coend_of(diagram_bifunctor(d), cap);
    SetLimit out;
    out.carrier = c.carrier;
    out.classes = c.classes;
    for (const auto& o : d.base.objects) {
        std::map<std::string, std::string> inj;
        for (const auto& x : d.at(o).elements) inj[x] = c.class_of(o, x);
        out.legs[o] = FinFunction(d.at(o), out.carrier, std::move(inj));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weighted limits and colimits of Set-valued diagrams, computed two ways
// ---------------------------------------------------------------------------

struct WeightedSetLimit {
    SetLimit via_elements;                       // the official carrier
    FinSet via_end;                              // end-of-powers / coend-of-copowers carrier
    std::map<std::string, std::string> bijection; // elements-route name -> end-route name
    std::map<std::pair<std::string, std::string>, FinFunction> legs; // (J, w) -> leg
};

// end over J of D(K)^{W(J)}
inline Bifunctor power_bifunctor(const SetFunctor& w, const SetFunctor& d, std::uint64_t cap) {
    Bifunctor b;
    b.base = w.base;
    for (const auto& a : w.base.objects)
        for (const auto& k : w.base.objects) b.sets[{a, k}] = function_set(w.at(a), d.at(k), cap);
    for (const auto& m : w.base.morphisms)
        for (const auto& k : w.base.objects) {
            std::map<std::string, std::string> lm;
            for (const auto& code : b.sets.at({m.cod, k}).elements) {
                FinFunction phi = decode_function(w.at(m.cod), d.at(k), code);
                lm[code] = encode_function(FinFunction::compose(phi, w.action(m.name)));
            }
            b.left[{m.name, k}] = FinFunction(b.sets.at({m.cod, k}), b.sets.at({m.dom, k}), std::move(lm));
            std::map<std::string, std::string> rm;
            for (const auto& code : b.sets.at({k, m.dom}).elements) {
                FinFunction phi = decode_function(w.at(k), d.at(m.dom), code);
                rm[code] = encode_function(FinFunction::compose(d.action(m.name), phi));
            }
            b.right[{k, m.name}] = FinFunction(b.sets.at({k, m.dom}), b.sets.at({k, m.cod}), std::move(rm));
        }
    return b;
}

inline WeightedSetLimit weighted_limit_set(const SetFunctor& d, const SetFunctor& w, std::uint64_t cap = kDefaultCap) {
    if (w.variance != Variance::Covariant) throw Error("BaseMismatch", "weighted_limit_set: weight must be covariant");
    ElementsCategory el = category_of_elements(w, cap);
    WeightedSetLimit out;
    out.via_elements = limit_set(restrict_along_elements(el, d), cap);

    EndResult e = end_of(power_bifunctor(w, d, cap), cap);
    out.via_end = e.carrier;

    // bijection: an El(W)-tuple t corresponds to the family J |-> (w |-> t(J,w))
    for (const auto& [name, t] : out.via_elements.tuples) {
        std::vector<std::string> parts;
        for (const auto& j : w.base.objects) {
            std::vector<std::string> imgs;
            for (const auto& we : w.at(j).elements) imgs.push_back(t.at(tup({j, we})));
            parts.push_back(tup(imgs));
        }
        std::string target = tup(parts);
        if (!e.carrier.contains(target))
            throw Error("Internal", "weighted_limit_set: routes disagree (missing " + target + ")");
        out.bijection[name] = target;
    }
    std::set<std::string> image;
    for (const auto& [_, v] : out.bijection) image.insert(v);
    if (image.size() != out.via_elements.carrier.size() || image.size() != e.carrier.size())
        throw Error("Internal", "weighted_limit_set: routes disagree (sizes)");

    for (const auto& j : w.base.objects)
        for (const auto& we : w.at(j).elements) out.legs[{j, we}] = out.via_elements.legs.at(tup({j, we}));
    return out;
}

// coend over J of W(J) x D(J)
inline Bifunctor copower_bifunctor(const SetFunctor& w, const SetFunctor& d) {
    // first index must be contravariant: W is contravariant, so W sits there
    Bifunctor b;
    b.base = d.base;
    for (const auto& a : d.base.objects)
        for (const auto& k : d.base.objects) {
            std::vector<std::string> elts;
            for (const auto& we : w.at(a).elements)
                for (const auto& x : d.at(k).elements) elts.push_back(tup({we, x}));
            b.sets[{a, k}] = FinSet("copow", std::move(elts));
        }
    for (const auto& m : d.base.morphisms)
        for (const auto& k : d.base.objects) {
            std::map<std::string, std::string> lm;
            for (const auto& we : w.at(m.cod).elements)
                for (const auto& x : d.at(k).elements)
                    lm[tup({we, x})] = tup({w.action(m.name)(we), x});
            b.left[{m.name, k}] = FinFunction(b.sets.at({m.cod, k}), b.sets.at({m.dom, k}), std::move(lm));
            std::map<std::string, std::string> rm;
            for (const auto& we : w.at(k).elements)
                for (const auto& x : d.at(m.dom).elements)
                    rm[tup({we, x})] = tup({we, d.action(m.name)(x)});
            b.right[{k, m.name}] = FinFunction(b.sets.at({k, m.dom}), b.sets.at({k, m.cod}), std::move(rm));
        }
    return b;
}

inline WeightedSetLimit weighted_colimit_set(const SetFunctor& d, const SetFunctor& w, std::uint64_t cap = kDefaultCap) {
    if (w.variance != Variance::Contravariant)
        throw Error("BaseMismatch", "weighted_colimit_set: weight must be contravariant");
    ElementsCategory el = category_of_elements(w, cap);
    WeightedSetLimit out;
    out.via_elements = colimit_set(restrict_along_elements(el, d), cap);

    CoendResult ce = coend_of(copower_bifunctor(w, d), cap);
    out.via_end = ce.carrier;

    // members ((J,w),x) of a colimit class correspond to members (J,(w,x))
    std::map<std::string, std::set<std::string>> image; // colimit class -> coend classes hit
    for (const auto& [cls, members] : out.via_elements.classes)
        for (const auto& mem : members) {
            // mem = ( (J,w) , x ): strip outer parens, split at top level
            std::string body = mem.substr(1, mem.size() - 2);
            int depth = 0;
            std::size_t cut = std::string::npos;
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '(') depth++;
                if (body[i] == ')') depth--;
                if (body[i] == ',' && depth == 0) { cut = i; break; }
            }
            std::string elobj = body.substr(0, cut), x = body.substr(cut + 1);
            auto [j, we] = el.index.at(elobj);
            image[cls].insert(ce.class_of(j, tup({we, x})));
        }
    std::set<std::string> seen;
    for (const auto& [cls, hit] : image) {
        if (hit.size() != 1) throw Error("Internal", "weighted_colimit_set: class split across routes");
        if (!seen.insert(*hit.begin()).second) throw Error("Internal", "weighted_colimit_set: classes merged across routes");
        out.bijection[cls] = *hit.begin();
    }
    if (seen.size() != ce.carrier.size()) throw Error("Internal", "weighted_colimit_set: routes disagree (sizes)");

    for (const auto& j : w.base.objects)
        for (const auto& we : w.at(j).elements) out.legs[{j, we}] = out.via_elements.legs.at(tup({j, we}));
    return out;
}

// ---------------------------------------------------------------------------
// Weighted cones in a general finite category, and the cone presheaf
// ---------------------------------------------------------------------------

struct WeightedDiagram {
    FunctorData diagram; // D: J -> C
    SetFunctor weight;   // on J; covariant for limits, contravariant for colimits
};

struct WeightedCone {
    std::string tip; // object of C
    // (J-object, weight element) -> morphism name; tip -> D(J) for limits,
    // D(J) -> tip for colimits
    std::map<std::pair<std::string, std::string>, std::string> legs;
};

inline bool cone_is_natural(const WeightedDiagram& wd, const WeightedCone& c, bool colimit) {
    const FinCategory& cat = wd.diagram.target;
    for (const auto& m : wd.weight.base.morphisms) {
        const std::string& dm = wd.diagram.mor(m.name);
        if (!colimit) {
            for (const auto& we : wd.weight.at(m.dom).elements)
                if (cat.compose(dm, c.legs.at({m.dom, we})) != c.legs.at({m.cod, wd.weight.action(m.name)(we)}))
                    return false;
        } else {
            for (const auto& we : wd.weight.at(m.cod).elements)
                if (cat.compose(c.legs.at({m.cod, we}), dm) != c.legs.at({m.dom, wd.weight.action(m.name)(we)}))
                    return false;
        }
    }
    return true;
}

inline std::string encode_cone(const WeightedCone& c) {
    std::vector<std::string> parts;
    for (const auto& [key, leg] : c.legs) parts.push_back(leg);
    return tup(parts);
}

inline WeightedCone decode_cone(const WeightedDiagram& wd, const std::string& tip, const std::string& code) {
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& j : wd.weight.base.objects)
        for (const auto& we : wd.weight.at(j).elements) keys.push_back({j, we});
    std::sort(keys.begin(), keys.end());
    std::string body = code.substr(1, code.size() - 2);
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
    if (!body.empty()) parts.push_back(cur);
    if (parts.size() != keys.size()) throw Error("Internal", "decode_cone: arity mismatch");
    WeightedCone out;
    out.tip = tip;
    for (std::size_t i = 0; i < keys.size(); ++i) out.legs[keys[i]] = parts[i];
    return out;
}

// enumerate all weighted (co)cones with the given tip
inline std::vector<WeightedCone> cones_with_tip(const WeightedDiagram& wd, const std::string& tip, bool colimit,
                                                std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    std::vector<std::pair<std::string, std::string>> keys;
    std::vector<std::vector<std::string>> choices;
    std::uint64_t count = 1;
    for (const auto& j : wd.weight.base.objects)
        for (const auto& we : wd.weight.at(j).elements) {
            keys.push_back({j, we});
            choices.push_back(colimit ? c.hom(wd.diagram.obj(j), tip) : c.hom(tip, wd.diagram.obj(j)));
            if (choices.back().empty()) return {};
            count = sat_mul(count, choices.back().size());
            guard_size(count, cap, "cones_with_tip");
        }
    std::vector<WeightedCone> out;
    std::vector<std::size_t> pick(keys.size(), 0);
    do {
        WeightedCone cone;
        cone.tip = tip;
        for (std::size_t i = 0; i < keys.size(); ++i) cone.legs[keys[i]] = choices[i][pick[i]];
        if (cone_is_natural(wd, cone, colimit)) out.push_back(std::move(cone));
    } while (advance_odometer(pick, [&](std::size_t i) { return choices[i].size(); }));
    return out;
}

// Cone^W(D,-): contravariant set functor on C whose elements encode cones.
inline SetFunctor cone_presheaf(const WeightedDiagram& wd, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    SetFunctor s;
    s.base = c;
    s.variance = Variance::Contravariant;
    std::map<std::string, std::vector<WeightedCone>> cones;
    for (const auto& a : c.objects) {
        cones[a] = cones_with_tip(wd, a, false, cap);
        std::vector<std::string> elts;
        for (const auto& cone : cones[a]) elts.push_back(encode_cone(cone));
        s.sets[a] = FinSet("cones@" + a, std::move(elts));
    }
    for (const auto& m : c.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& cone : cones[m.cod]) {
            WeightedCone pre;
            pre.tip = m.dom;
            for (const auto& [key, leg] : cone.legs) pre.legs[key] = c.compose(leg, m.name);
            mp[encode_cone(cone)] = encode_cone(pre);
        }
        s.actions[m.name] = FinFunction(s.sets.at(m.cod), s.sets.at(m.dom), std::move(mp));
    }
    return s;
}

// Cocone functor (covariant): elements encode cocones under the diagram.
inline SetFunctor cocone_functor(const WeightedDiagram& wd, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    SetFunctor s;
    s.base = c;
    s.variance = Variance::Covariant;
    std::map<std::string, std::vector<WeightedCone>> cones;
    for (const auto& a : c.objects) {
        cones[a] = cones_with_tip(wd, a, true, cap);
        std::vector<std::string> elts;
        for (const auto& cone : cones[a]) elts.push_back(encode_cone(cone));
        s.sets[a] = FinSet("cocones@" + a, std::move(elts));
    }
    for (const auto& m : c.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& cone : cones[m.dom]) {
            WeightedCone post;
            post.tip = m.cod;
            for (const auto& [key, leg] : cone.legs) post.legs[key] = c.compose(m.name, leg);
            mp[encode_cone(cone)] = encode_cone(post);
        }
        s.actions[m.name] = FinFunction(s.sets.at(m.dom), s.sets.at(m.cod), std::move(mp));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Representability search (Yoneda-driven)
// ---------------------------------------------------------------------------

struct Representation {
    std::string object;     // R
    NatTransformation iso;  // hom(R,-) => S  (or hom(-,R) => S)
};

inline std::optional<Representation> find_representation(const SetFunctor& s) {
    const FinCategory& c = s.base;
    for (const auto& r : c.objects) {
        SetFunctor h = hom_functor(c, r, s.variance);
        for (const auto& u : s.at(r).elements) {
            // the Yoneda transformation induced by u in S(R)
            NatTransformation nt;
            nt.source = h;
            nt.target = s;
            bool bij = true;
            for (const auto& a : c.objects) {
                std::map<std::string, std::string> mp;
                for (const auto& g : h.at(a).elements) mp[g] = s.action(g)(u);
                FinFunction comp(h.at(a), s.at(a), std::move(mp));
                if (!comp.is_bijective()) { bij = false; break; }
                nt.components.emplace(a, std::move(comp));
            }
            if (bij) return Representation{r, std::move(nt)};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Weighted limits and colimits in a general finite category
// ---------------------------------------------------------------------------

struct CLimit {
    std::string object;        // the (co)limit object
    WeightedCone universal;    // the universal (co)cone
    Representation rep;        // witness isomorphism
};

inline std::optional<CLimit> weighted_limit_in_C(const WeightedDiagram& wd, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    SetFunctor s = cone_presheaf(wd, cap);
    std::optional<Representation> rep = find_representation(s);
    if (!rep) return std::nullopt;
    const std::string& r = rep->object;
    // the universal cone is the image of the identity under the iso
    WeightedCone univ = decode_cone(wd, r, rep->iso.at(r)(c.id(r)));
    // terminality, verified exhaustively: every cone factors uniquely
    for (const auto& a : c.objects)
        for (const auto& code : s.at(a).elements) {
            WeightedCone cone = decode_cone(wd, a, code);
            std::size_t mediators = 0;
            for (const auto& u : c.hom(a, r)) {
                bool match = true;
                for (const auto& [key, leg] : univ.legs)
                    if (c.compose(leg, u) != cone.legs.at(key)) { match = false; break; }
                if (match) ++mediators;
            }
            if (mediators != 1) throw Error("Internal", "weighted_limit_in_C: universal cone not terminal");
        }
    return CLimit{r, std::move(univ), std::move(*rep)};
}

inline std::optional<CLimit> weighted_colimit_in_C(const WeightedDiagram& wd, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = wd.diagram.target;
    SetFunctor s = cocone_functor(wd, cap);
    std::optional<Representation> rep = find_representation(s);
    if (!rep) return std::nullopt;
    const std::string& r = rep->object;
    WeightedCone univ = decode_cone(wd, r, rep->iso.at(r)(c.id(r)));
    for (const auto& a : c.objects)
        for (const auto& code : s.at(a).elements) {
            WeightedCone cone = decode_cone(wd, a, code);
            std::size_t mediators = 0;
            for (const auto& u : c.hom(r, a)) {
                bool match = true;
                for (const auto& [key, leg] : univ.legs)
                    if (c.compose(u, leg) != cone.legs.at(key)) { match = false; break; }
                if (match) ++mediators;
            }
            if (mediators != 1) throw Error("Internal", "weighted_colimit_in_C: universal cocone not initial");
        }
    return CLimit{r, std::move(univ), std::move(*rep)};
}

// ---------------------------------------------------------------------------
// Pushed-forward weight on C: X |-> coend over J of W(J) x C(D J, X)
// ---------------------------------------------------------------------------

inline SetFunctor pushforward_weight(const FunctorData& d, const SetFunctor& w, std::uint64_t cap = kDefaultCap) {
    const FinCategory& c = d.target;
    // the pairing <W J, C(D J, X)> per X, made functorial in X
    std::map<std::string, PairingResult> per_object;
    SetFunctor out;
    out.base = c;
    out.variance = Variance::Covariant;
    for (const auto& x : c.objects) {
        SetFunctor homdx; // J |-> C(D J, X), contravariant on J
        homdx.base = w.base;
        homdx.variance = Variance::Contravariant;
        for (const auto& j : w.base.objects) homdx.sets[j] = c.hom_set(d.obj(j), x);
        for (const auto& m : w.base.morphisms) {
            std::map<std::string, std::string> mp;
            for (const auto& f : homdx.sets.at(m.cod).elements) mp[f] = c.compose(f, d.mor(m.name));
            homdx.actions[m.name] = FinFunction(homdx.sets.at(m.cod), homdx.sets.at(m.dom), std::move(mp));
        }
        // classes [J, f: DJ->X, w] — reuse pairing with P := homdx, F := W
        per_object.emplace(x, pairing(homdx, w, cap));
        out.sets[x] = per_object.at(x).carrier;
    }
    for (const auto& m : c.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& cls : per_object.at(m.dom).carrier.elements) {
            const auto& [j, f, we] = per_object.at(m.dom).canonical.at(cls);
            mp[cls] = per_object.at(m.cod).class_of(j, c.compose(m.name, f), we);
        }
        out.actions[m.name] = FinFunction(out.sets.at(m.dom), out.sets.at(m.cod), std::move(mp));
    }
    return out;
}

struct DecomposeReport {
    bool agree = false;
    WeightedSetLimit direct;  // lim over J of <W J, G D J>
    WeightedSetLimit pushed;  // lim over C of <S X, G X> with S the pushed weight
    std::map<std::string, std::string> bijection; // pushed carrier -> direct carrier
};

inline DecomposeReport limit_decompose_check(const FunctorData& d, const SetFunctor& g, const SetFunctor& w,
                                             std::uint64_t cap = kDefaultCap) {
    // direct: weight W on J, diagram G . D
    SetFunctor gd;
    gd.base = w.base;
    gd.variance = Variance::Covariant;
    for (const auto& j : w.base.objects) gd.sets[j] = g.at(d.obj(j));
    for (const auto& m : w.base.morphisms) gd.actions[m.name] = g.action(d.mor(m.name));

    DecomposeReport out;
    out.direct = weighted_limit_set(gd, w, cap);

    SetFunctor s = pushforward_weight(d, w, cap);
    out.pushed = weighted_limit_set(g, s, cap);

    // bijection per the decomposition: a pushed tuple t assigns to each
    // (X, [J,w,f]) an element of G(X); the direct tuple reads off t at
    // (D J, [J,w,id]).
    std::map<std::string, PairingResult> per_object;
    const FinCategory& c = d.target;
    for (const auto& [name, t] : out.pushed.via_elements.tuples) {
        std::map<std::string, std::string> direct_t;
        for (const auto& j : w.base.objects)
            for (const auto& we : w.at(j).elements) {
                // class of [J, id_{DJ}, w] inside S(D J); the member -> class
                // map lives in the pairing, recomputed lazily per object
                const std::string& x = d.obj(j);
                if (!per_object.count(x)) {
                    SetFunctor homdx;
                    homdx.base = w.base;
                    homdx.variance = Variance::Contravariant;
                    for (const auto& jj : w.base.objects) homdx.sets[jj] = c.hom_set(d.obj(jj), x);
                    for (const auto& m : w.base.morphisms) {
                        std::map<std::string, std::string> mp;
                        for (const auto& f : homdx.sets.at(m.cod).elements) mp[f] = c.compose(f, d.mor(m.name));
                        homdx.actions[m.name] = FinFunction(homdx.sets.at(m.cod), homdx.sets.at(m.dom), std::move(mp));
                    }
                    per_object.emplace(x, pairing(homdx, w, cap));
                }
                std::string klass = per_object.at(x).class_of(j, c.id(x), we);
                direct_t[tup({j, we})] = t.at(tup({x, klass}));
            }
        std::vector<std::string> parts;
        for (const auto& [_, v] : direct_t) parts.push_back(v);
        std::string target = tup(parts);
        if (!out.direct.via_elements.carrier.contains(target)) return out; // agree stays false
        out.bijection[name] = target;
    }
    std::set<std::string> image;
    for (const auto& [_, v] : out.bijection) image.insert(v);
    out.agree = image.size() == out.pushed.via_elements.carrier.size() &&
                image.size() == out.direct.via_elements.carrier.size();
    return out;
}

} // namespace fincat
