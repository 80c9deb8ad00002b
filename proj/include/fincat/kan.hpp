#pragma once

#include "elements.hpp"

namespace fincat {

// ---------------------------------------------------------------------------
// Pointwise Kan extensions along a functor G: J -> K of a diagram D: J -> C
// ---------------------------------------------------------------------------

struct KanResult {
    FunctorData extension;                     // defined on the total part of K
    std::map<std::string, std::string> edge;   // J-object -> counit rho_J / unit lambda_J
    std::vector<std::string> missing;          // K-objects lacking the required (co)limit
    std::map<std::string, CLimit> limits;      // per K-object universal (co)cone

    bool total() const { return missing.empty(); }
};

// the unique morphism through which a cone factors; exhaustive search
inline std::string mediate_limit(const FinCategory& c, const CLimit& lim, const WeightedCone& cone) {
    std::vector<std::string> hits;
    for (const auto& u : c.hom(cone.tip, lim.object)) {
        bool match = true;
        for (const auto& [key, leg] : lim.universal.legs)
            if (c.compose(leg, u) != cone.legs.at(key)) { match = false; break; }
        if (match) hits.push_back(u);
    }
    if (hits.empty()) throw Error("NoMediator", "no morphism factors the cone through " + lim.object);
    if (hits.size() > 1) throw Error("NonUniqueMediator", "cone factors through " + lim.object + " in several ways");
    return hits[0];
}

inline std::string mediate_colimit(const FinCategory& c, const CLimit& colim, const WeightedCone& cocone) {
    std::vector<std::string> hits;
    for (const auto& u : c.hom(colim.object, cocone.tip)) {
        bool match = true;
        for (const auto& [key, leg] : colim.universal.legs)
            if (c.compose(u, leg) != cocone.legs.at(key)) { match = false; break; }
        if (match) hits.push_back(u);
    }
    if (hits.empty()) throw Error("NoMediator", "no morphism factors the cocone through " + colim.object);
    if (hits.size() > 1) throw Error("NonUniqueMediator", "cocone factors through " + colim.object + " in several ways");
    return hits[0];
}

// weight J |-> K(k, G J), covariant in J
inline SetFunctor right_kan_weight(const FunctorData& g, const std::string& k) {
    const FinCategory& kk = g.target;
    SetFunctor w;
    w.base = g.source;
    w.variance = Variance::Covariant;
    for (const auto& j : g.source.objects) w.sets[j] = kk.hom_set(k, g.obj(j));
    for (const auto& m : g.source.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& h : w.sets.at(m.dom).elements) mp[h] = kk.compose(g.mor(m.name), h);
        w.actions[m.name] = FinFunction(w.sets.at(m.dom), w.sets.at(m.cod), std::move(mp));
    }
    return w;
}

// weight J |-> K(G J, k), contravariant in J
inline SetFunctor left_kan_weight(const FunctorData& g, const std::string& k) {
    const FinCategory& kk = g.target;
    SetFunctor w;
    w.base = g.source;
    w.variance = Variance::Contravariant;
    for (const auto& j : g.source.objects) w.sets[j] = kk.hom_set(g.obj(j), k);
    for (const auto& m : g.source.morphisms) {
        std::map<std::string, std::string> mp;
        for (const auto& h : w.sets.at(m.cod).elements) mp[h] = kk.compose(h, g.mor(m.name));
        w.actions[m.name] = FinFunction(w.sets.at(m.cod), w.sets.at(m.dom), std::move(mp));
    }
    return w;
}

inline KanResult right_kan_pointwise(const FunctorData& d, const FunctorData& g, std::uint64_t cap = kDefaultCap) {
    if (!(d.source.objects == g.source.objects))
        throw Error("BaseMismatch", "right_kan_pointwise: diagram and direction have different sources");
    const FinCategory& kk = g.target;
    const FinCategory& c = d.target;

    KanResult out;
    out.extension.source = kk;
    out.extension.target = c;
    for (const auto& k : kk.objects) {
        std::optional<CLimit> lim = weighted_limit_in_C({d, right_kan_weight(g, k)}, cap);
        if (!lim) { out.missing.push_back(k); continue; }
        out.extension.obj_map[k] = lim->object;
        out.limits.emplace(k, std::move(*lim));
    }

    // action on morphisms: restrict the universal cone at the source along the
    // weight map (- after m) and factor it through the limit at the target
    for (const auto& m : kk.morphisms) {
        if (!out.limits.count(m.dom) || !out.limits.count(m.cod)) continue;
        const CLimit& src = out.limits.at(m.dom);
        const CLimit& dst = out.limits.at(m.cod);
        WeightedCone cone;
        cone.tip = src.object;
        for (const auto& j : g.source.objects)
            for (const auto& h : kk.hom(m.cod, g.obj(j)))
                cone.legs[{j, h}] = src.universal.legs.at({j, kk.compose(h, m.name)});
        out.extension.mor_map[m.name] = mediate_limit(c, dst, cone);
    }
    if (out.total()) out.extension.validate();

    // counit rho_J: Ran(G J) -> D(J) is the universal leg at the identity
    for (const auto& j : g.source.objects) {
        auto it = out.limits.find(g.obj(j));
        if (it == out.limits.end()) continue;
        out.edge[j] = it->second.universal.legs.at({j, kk.id(g.obj(j))});
    }
    if (out.total())
        for (const auto& m : d.source.morphisms)
            if (c.compose(d.mor(m.name), out.edge.at(m.dom)) !=
                c.compose(out.edge.at(m.cod), out.extension.mor(g.mor(m.name))))
                throw Error("Internal", "right_kan_pointwise: counit not natural at " + m.name);
    return out;
}

inline KanResult left_kan_pointwise(const FunctorData& d, const FunctorData& g, std::uint64_t cap = kDefaultCap) {
    if (!(d.source.objects == g.source.objects))
        throw Error("BaseMismatch", "left_kan_pointwise: diagram and direction have different sources");
    const FinCategory& kk = g.target;
    const FinCategory& c = d.target;

    KanResult out;
    out.extension.source = kk;
    out.extension.target = c;
    for (const auto& k : kk.objects) {
        std::optional<CLimit> colim = weighted_colimit_in_C({d, left_kan_weight(g, k)}, cap);
        if (!colim) { out.missing.push_back(k); continue; }
        out.extension.obj_map[k] = colim->object;
        out.limits.emplace(k, std::move(*colim));
    }

    // action on morphisms: push the universal cocone at the target back along
    // the weight map (m after -) and factor through the colimit at the source
    for (const auto& m : kk.morphisms) {
        if (!out.limits.count(m.dom) || !out.limits.count(m.cod)) continue;
        const CLimit& src = out.limits.at(m.dom);
        const CLimit& dst = out.limits.at(m.cod);
        WeightedCone cocone;
        cocone.tip = dst.object;
        for (const auto& j : g.source.objects)
            for (const auto& h : kk.hom(g.obj(j), m.dom))
                cocone.legs[{j, h}] = dst.universal.legs.at({j, kk.compose(m.name, h)});
        out.extension.mor_map[m.name] = mediate_colimit(c, src, cocone);
    }
    if (out.total()) out.extension.validate();

    // unit lambda_J: D(J) -> Lan(G J) is the universal leg at the identity
    for (const auto& j : g.source.objects) {
        auto it = out.limits.find(g.obj(j));
        if (it == out.limits.end()) continue;
        out.edge[j] = it->second.universal.legs.at({j, kk.id(g.obj(j))});
    }
    if (out.total())
        for (const auto& m : d.source.morphisms)
            if (c.compose(out.edge.at(m.cod), d.mor(m.name)) !=
                c.compose(out.extension.mor(g.mor(m.name)), out.edge.at(m.dom)))
                throw Error("Internal", "left_kan_pointwise: unit not natural at " + m.name);
    return out;
}

// ---------------------------------------------------------------------------
// The universal property, checked against an explicit competitor
// ---------------------------------------------------------------------------

// Right case: competitor H: K -> C with phi: H.G => D; returns the unique
// nu: H => Ran with rho . (nu G) = phi.
inline CatNat kan_universal_check(const KanResult& kan, const FunctorData& d, const FunctorData& g,
                                  const FunctorData& h, const CatNat& phi, std::uint64_t cap = kDefaultCap) {
    if (!kan.total()) throw Error("PartialKan", "kan_universal_check: extension is partial");
    const FinCategory& kk = g.target;
    const FinCategory& c = d.target;

    CatNat nu;
    nu.source = h;
    nu.target = kan.extension;
    for (const auto& k : kk.objects) {
        // legs t: k -> G j give the cone phi_j . H(t) with tip H(k)
        WeightedCone cone;
        cone.tip = h.obj(k);
        for (const auto& j : g.source.objects)
            for (const auto& t : kk.hom(k, g.obj(j)))
                cone.legs[{j, t}] = c.compose(phi.components.at(j), h.mor(t));
        nu.components[k] = mediate_limit(c, kan.limits.at(k), cone);
    }
    if (!nu.natural()) throw Error("Internal", "kan_universal_check: mediator not natural");
    for (const auto& j : g.source.objects)
        if (c.compose(kan.edge.at(j), nu.components.at(g.obj(j))) != phi.components.at(j))
            throw Error("Internal", "kan_universal_check: rho . (nu G) != phi");

    // uniqueness, by exhaustive search over natural transformations H => Ran
    std::size_t count = 0;
    for (const auto& sigma : cat_nats(h, kan.extension, cap)) {
        bool factors = true;
        for (const auto& j : g.source.objects)
            if (c.compose(kan.edge.at(j), sigma.components.at(g.obj(j))) != phi.components.at(j)) {
                factors = false;
                break;
            }
        if (factors) {
            ++count;
            if (!(sigma.components == nu.components))
                throw Error("NonUniqueMediator", "kan_universal_check: a second mediator exists");
        }
    }
    if (count != 1) throw Error("NoMediator", "kan_universal_check: mediator not found by the sweep");
    return nu;
}

// Left case: competitor H: K -> C with phi: D => H.G; returns the unique
// nu: Lan => H with (nu G) . lambda = phi.
inline CatNat kan_universal_check_left(const KanResult& kan, const FunctorData& d, const FunctorData& g,
                                       const FunctorData& h, const CatNat& phi, std::uint64_t cap = kDefaultCap) {
    if (!kan.total()) throw Error("PartialKan", "kan_universal_check_left: extension is partial");
    const FinCategory& kk = g.target;
    const FinCategory& c = d.target;

    CatNat nu;
    nu.source = kan.extension;
    nu.target = h;
    for (const auto& k : kk.objects) {
        // legs t: G j -> k give the cocone H(t) . phi_j with tip H(k)
        WeightedCone cocone;
        cocone.tip = h.obj(k);
        for (const auto& j : g.source.objects)
            for (const auto& t : kk.hom(g.obj(j), k))
                cocone.legs[{j, t}] = c.compose(h.mor(t), phi.components.at(j));
        nu.components[k] = mediate_colimit(c, kan.limits.at(k), cocone);
    }
    if (!nu.natural()) throw Error("Internal", "kan_universal_check_left: mediator not natural");
    for (const auto& j : g.source.objects)
        if (c.compose(nu.components.at(g.obj(j)), kan.edge.at(j)) != phi.components.at(j))
            throw Error("Internal", "kan_universal_check_left: (nu G) . lambda != phi");

    std::size_t count = 0;
    for (const auto& sigma : cat_nats(kan.extension, h, cap)) {
        bool factors = true;
        for (const auto& j : g.source.objects)
            if (c.compose(sigma.components.at(g.obj(j)), kan.edge.at(j)) != phi.components.at(j)) {
                factors = false;
                break;
            }
        if (factors) {
            ++count;
            if (!(sigma.components == nu.components))
                throw Error("NonUniqueMediator", "kan_universal_check_left: a second mediator exists");
        }
    }
    if (count != 1) throw Error("NoMediator", "kan_universal_check_left: mediator not found by the sweep");
    return nu;
}

// is m invertible in c?
inline bool is_iso_morphism(const FinCategory& c, const std::string& m) {
    const Morphism& mm = c.mor(m);
    for (const auto& inv : c.hom(mm.cod, mm.dom))
        if (c.compose(inv, m) == c.id(mm.dom) && c.compose(m, inv) == c.id(mm.cod)) return true;
    return false;
}

} // namespace fincat
