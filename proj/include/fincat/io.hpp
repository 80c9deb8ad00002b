#pragma once

#include "profunctor.hpp"
#include "elements.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace fincat {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Serialization: canonical JSON with fixed key order, sorted collections
// ---------------------------------------------------------------------------

inline json category_to_json(const FinCategory& c) {
    json j;
    j["kind"] = "category";
    j["name"] = c.name;
    j["objects"] = c.objects;
    json mors = json::array();
    for (const auto& m : c.morphisms) {
        json e;
        e["name"] = m.name;
        e["dom"] = m.dom;
        e["cod"] = m.cod;
        mors.push_back(std::move(e));
    }
    j["morphisms"] = std::move(mors);
    json ids;
    for (const auto& [o, i] : c.identity) ids[o] = i;
    j["identities"] = std::move(ids);
    json comp = json::array();
    for (const auto& [gf, h] : c.comp) comp.push_back(json::array({gf.first, gf.second, h}));
    j["composition"] = std::move(comp);
    return j;
}

inline json functor_body_to_json(const SetFunctor& f) {
    json j;
    j["variance"] = f.variance == Variance::Covariant ? "covariant" : "contravariant";
    json sets;
    for (const auto& o : f.base.objects) sets[o] = f.at(o).elements;
    j["sets"] = std::move(sets);
    json acts;
    for (const auto& m : f.base.morphisms) {
        json a;
        for (const auto& x : f.action(m.name).dom.elements) a[x] = f.action(m.name)(x);
        acts[m.name] = std::move(a);
    }
    j["actions"] = std::move(acts);
    return j;
}

inline json setfunctor_to_json(const SetFunctor& f) {
    json j;
    j["kind"] = "setfunctor";
    j["category"] = category_to_json(f.base);
    json body = functor_body_to_json(f);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    return j;
}

inline json functor_to_json(const FunctorData& f) {
    json j;
    j["kind"] = "functor";
    j["source"] = category_to_json(f.source);
    j["target"] = category_to_json(f.target);
    json objs;
    for (const auto& o : f.source.objects) objs[o] = f.obj(o);
    j["objects"] = std::move(objs);
    json mors;
    for (const auto& m : f.source.morphisms) mors[m.name] = f.mor(m.name);
    j["morphisms"] = std::move(mors);
    return j;
}

inline json weighted_diagram_to_json(const WeightedDiagram& wd) {
    json j;
    j["kind"] = "weighted-diagram";
    j["source"] = category_to_json(wd.diagram.source);
    j["target"] = category_to_json(wd.diagram.target);
    json objs;
    for (const auto& o : wd.diagram.source.objects) objs[o] = wd.diagram.obj(o);
    j["objects"] = std::move(objs);
    json mors;
    for (const auto& m : wd.diagram.source.morphisms) mors[m.name] = wd.diagram.mor(m.name);
    j["morphisms"] = std::move(mors);
    j["weight"] = functor_body_to_json(wd.weight);
    return j;
}

inline json profunctor_to_json(const Profunctor& p) {
    json j;
    j["kind"] = "profunctor";
    j["source"] = category_to_json(p.source);
    j["target"] = category_to_json(p.target);
    json sets;
    for (const auto& d : p.target.objects) {
        json row;
        for (const auto& c : p.source.objects) row[c] = p.at(d, c).elements;
        sets[d] = std::move(row);
    }
    j["sets"] = std::move(sets);
    json left;
    for (const auto& m : p.target.morphisms) {
        json row;
        for (const auto& c : p.source.objects) {
            json a;
            for (const auto& x : p.lact(m.name, c).dom.elements) a[x] = p.lact(m.name, c)(x);
            row[c] = std::move(a);
        }
        left[m.name] = std::move(row);
    }
    j["left"] = std::move(left);
    json right;
    for (const auto& d : p.target.objects) {
        json row;
        for (const auto& m : p.source.morphisms) {
            json a;
            for (const auto& x : p.ract(d, m.name).dom.elements) a[x] = p.ract(d, m.name)(x);
            row[m.name] = std::move(a);
        }
        right[d] = std::move(row);
    }
    j["right"] = std::move(right);
    return j;
}

inline json monoidal_to_json(const StrictMonoidalStructure& m) {
    json j;
    j["kind"] = "monoidal";
    j["category"] = category_to_json(m.base);
    j["unit"] = m.unit;
    json to;
    for (const auto& a : m.base.objects) {
        json row;
        for (const auto& b : m.base.objects) row[b] = m.tobj(a, b);
        to[a] = std::move(row);
    }
    j["tensor_obj"] = std::move(to);
    json tm;
    for (const auto& f : m.base.morphisms) {
        json row;
        for (const auto& g : m.base.morphisms) row[g.name] = m.tmor(f.name, g.name);
        tm[f.name] = std::move(row);
    }
    j["tensor_mor"] = std::move(tm);
    return j;
}

inline std::string serialize(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Parsing with reference resolution
// ---------------------------------------------------------------------------

inline const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error("SyntaxError", std::string("missing field '") + key + "'");
    return *it;
}

inline FinCategory category_from_json(const json& j) {
    FinCategory c;
    c.name = field(j, "name").get<std::string>();
    for (const auto& o : field(j, "objects")) c.objects.push_back(o.get<std::string>());
    std::set<std::string> objs(c.objects.begin(), c.objects.end());
    std::set<std::string> mors;
    for (const auto& m : field(j, "morphisms")) {
        Morphism mo{field(m, "name").get<std::string>(), field(m, "dom").get<std::string>(),
                    field(m, "cod").get<std::string>()};
        if (!objs.count(mo.dom)) throw Error("UnresolvedReference", mo.dom);
        if (!objs.count(mo.cod)) throw Error("UnresolvedReference", mo.cod);
        mors.insert(mo.name);
        c.morphisms.push_back(std::move(mo));
    }
    for (const auto& [o, i] : field(j, "identities").items()) {
        if (!objs.count(o)) throw Error("UnresolvedReference", o);
        if (!mors.count(i.get<std::string>())) throw Error("UnresolvedReference", i.get<std::string>());
        c.identity[o] = i.get<std::string>();
    }
    for (const auto& t : field(j, "composition")) {
        if (!t.is_array() || t.size() != 3) throw Error("SyntaxError", "composition entries must be triples");
        std::string g = t[0].get<std::string>(), f = t[1].get<std::string>(), gf = t[2].get<std::string>();
        for (const auto& n : {g, f, gf})
            if (!mors.count(n)) throw Error("UnresolvedReference", n);
        c.comp[{g, f}] = gf;
    }
    c.canonicalize();
    require_valid(c);
    return c;
}

inline SetFunctor functor_body_from_json(const json& j, FinCategory base) {
    SetFunctor f;
    f.base = std::move(base);
    std::string v = field(j, "variance").get<std::string>();
    if (v != "covariant" && v != "contravariant") throw Error("SyntaxError", "bad variance: " + v);
    f.variance = v == "covariant" ? Variance::Covariant : Variance::Contravariant;
    for (const auto& [o, elts] : field(j, "sets").items()) {
        if (!f.base.has_object(o)) throw Error("UnresolvedReference", o);
        std::vector<std::string> e;
        for (const auto& x : elts) e.push_back(x.get<std::string>());
        f.sets[o] = FinSet(o, std::move(e));
    }
    for (const auto& [m, mp] : field(j, "actions").items()) {
        const Morphism& mo = f.base.mor(m); // throws on unknown morphism
        const std::string& d = f.variance == Variance::Covariant ? mo.dom : mo.cod;
        const std::string& cd = f.variance == Variance::Covariant ? mo.cod : mo.dom;
        std::map<std::string, std::string> fn;
        for (const auto& [x, y] : mp.items()) fn[x] = y.get<std::string>();
        f.actions[m] = FinFunction(f.at(d), f.at(cd), std::move(fn));
    }
    f.validate();
    return f;
}

inline SetFunctor setfunctor_from_json(const json& j) {
    return functor_body_from_json(j, category_from_json(field(j, "category")));
}

inline FunctorData functor_from_json(const json& j) {
    FunctorData f;
    f.source = category_from_json(field(j, "source"));
    f.target = category_from_json(field(j, "target"));
    for (const auto& [o, i] : field(j, "objects").items()) f.obj_map[o] = i.get<std::string>();
    for (const auto& [m, i] : field(j, "morphisms").items()) f.mor_map[m] = i.get<std::string>();
    f.validate();
    return f;
}

inline WeightedDiagram weighted_diagram_from_json(const json& j) {
    WeightedDiagram wd;
    wd.diagram.source = category_from_json(field(j, "source"));
    wd.diagram.target = category_from_json(field(j, "target"));
    for (const auto& [o, i] : field(j, "objects").items()) wd.diagram.obj_map[o] = i.get<std::string>();
    for (const auto& [m, i] : field(j, "morphisms").items()) wd.diagram.mor_map[m] = i.get<std::string>();
    wd.diagram.validate();
    wd.weight = functor_body_from_json(field(j, "weight"), wd.diagram.source);
    return wd;
}

inline Profunctor profunctor_from_json(const json& j) {
    Profunctor p;
    p.source = category_from_json(field(j, "source"));
    p.target = category_from_json(field(j, "target"));
    for (const auto& [d, row] : field(j, "sets").items())
        for (const auto& [c, elts] : row.items()) {
            std::vector<std::string> e;
            for (const auto& x : elts) e.push_back(x.get<std::string>());
            p.sets[{d, c}] = FinSet(tup({d, c}), std::move(e));
        }
    for (const auto& [m, row] : field(j, "left").items())
        for (const auto& [c, mp] : row.items()) {
            const Morphism& mo = p.target.mor(m);
            std::map<std::string, std::string> fn;
            for (const auto& [x, y] : mp.items()) fn[x] = y.get<std::string>();
            p.left[{m, c}] = FinFunction(p.at(mo.cod, c), p.at(mo.dom, c), std::move(fn));
        }
    for (const auto& [d, row] : field(j, "right").items())
        for (const auto& [m, mp] : row.items()) {
            const Morphism& mo = p.source.mor(m);
            std::map<std::string, std::string> fn;
            for (const auto& [x, y] : mp.items()) fn[x] = y.get<std::string>();
            p.right[{d, m}] = FinFunction(p.at(d, mo.dom), p.at(d, mo.cod), std::move(fn));
        }
    p.validate();
    return p;
}

inline StrictMonoidalStructure monoidal_from_json(const json& j) {
    StrictMonoidalStructure m;
    m.base = category_from_json(field(j, "category"));
    m.unit = field(j, "unit").get<std::string>();
    for (const auto& [a, row] : field(j, "tensor_obj").items())
        for (const auto& [b, t] : row.items()) m.tensor_obj[{a, b}] = t.get<std::string>();
    for (const auto& [f, row] : field(j, "tensor_mor").items())
        for (const auto& [g, t] : row.items()) m.tensor_mor[{f, g}] = t.get<std::string>();
    m.validate();
    return m;
}

inline json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("SyntaxError", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("SyntaxError", path + ": " + e.what());
    }
}

inline std::string file_kind(const json& j) { return field(j, "kind").get<std::string>(); }

// ---------------------------------------------------------------------------
// DOT emission
// ---------------------------------------------------------------------------

inline bool dot_virtual_name(const std::string& name) {
    return name.rfind("__v:", 0) == 0 || name.rfind("h:", 0) == 0;
}

inline std::string emit_dot(const FinCategory& c) {
    std::ostringstream out;
    out << "digraph \"" << c.name << "\" {\n";
    for (const auto& o : c.objects) {
        out << "  \"" << o << "\"";
        if (o == kExtraObject) out << " [shape=point]";
        out << ";\n";
    }
    for (const auto& m : c.morphisms) {
        if (m.dom == m.cod && m.name == c.id(m.dom)) continue;
        out << "  \"" << m.dom << "\" -> \"" << m.cod << "\" [label=\"" << m.name << "\"";
        if (dot_virtual_name(m.name)) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace fincat
