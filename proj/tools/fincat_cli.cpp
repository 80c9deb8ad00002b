#include <fincat/fincat.hpp>

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace fincat;

namespace {

struct Ctx {
    std::uint64_t cap = kDefaultCap;
    bool expect_some = false;
    std::string format = "text";
};

// prints the report; exit 1 when the mathematical answer is "none" under --expect-some
int finish(const Ctx& ctx, const json& report, const std::string& text, bool some = true) {
    if (ctx.format == "json") std::cout << serialize(report);
    else std::cout << text << "\n";
    return ctx.expect_some && !some ? 1 : 0;
}

// structural outputs (categories, functors, ...) are their own report in both formats
int emit_doc(const Ctx& ctx, const json& doc) {
    std::cout << serialize(doc);
    return 0;
}

FinCategory load_category(const std::string& path) {
    json j = parse_file(path);
    if (file_kind(j) != "category") throw Error("ValidationFailed", path + ": expected kind 'category'");
    return category_from_json(j);
}

SetFunctor load_setfunctor(const std::string& path) {
    json j = parse_file(path);
    if (file_kind(j) != "setfunctor") throw Error("ValidationFailed", path + ": expected kind 'setfunctor'");
    return setfunctor_from_json(j);
}

FunctorData load_functor(const std::string& path) {
    json j = parse_file(path);
    if (file_kind(j) != "functor") throw Error("ValidationFailed", path + ": expected kind 'functor'");
    return functor_from_json(j);
}

Idempotent load_idempotent(const std::string& path, const std::string& name) {
    FinCategory c = load_category(path);
    const Morphism& m = c.mor(name);
    Idempotent e{std::move(c), m.dom, name};
    e.validate();
    return e;
}

std::string join_names(const std::vector<std::string>& v) { return v.empty() ? "(empty)" : join(v, ", "); }

json classes_json(const std::map<std::string, std::vector<std::string>>& classes) {
    json out;
    for (const auto& [cls, members] : classes) out[cls] = members;
    return out;
}

std::string classes_text(const FinSet& carrier) {
    std::vector<std::string> parts;
    for (const auto& c : carrier.elements) parts.push_back("[" + c + "]");
    return std::to_string(carrier.size()) + " classes: " + join_names(parts);
}

json cone_json(const WeightedCone& cone) {
    json legs = json::array();
    for (const auto& [key, m] : cone.legs)
        legs.push_back(json{{"object", key.first}, {"weight", key.second}, {"morphism", m}});
    return json{{"tip", cone.tip}, {"legs", std::move(legs)}};
}

int run_command(const std::string& name, const Ctx& ctx, const std::map<std::string, std::string>& a) {
    auto arg = [&](const char* k) { return a.at(k); };

    if (name == "validate") {
        json j = parse_file(arg("file"));
        std::string kind = file_kind(j);
        json rep{{"ok", true}, {"kind", kind}};
        std::string text = "ok: " + kind;
        if (kind == "category") {
            FinCategory c = category_from_json(j);
            rep["objects"] = c.objects.size();
            rep["morphisms"] = c.morphisms.size();
            text = "ok: " + std::to_string(c.objects.size()) + " objects, " +
                   std::to_string(c.morphisms.size()) + " morphisms";
        } else if (kind == "setfunctor") setfunctor_from_json(j);
        else if (kind == "functor") functor_from_json(j);
        else if (kind == "weighted-diagram") weighted_diagram_from_json(j);
        else if (kind == "profunctor") profunctor_from_json(j);
        else if (kind == "monoidal") monoidal_from_json(j);
        else throw Error("ValidationFailed", "unknown kind: " + kind);
        return finish(ctx, rep, text);
    }
    if (name == "opposite") return emit_doc(ctx, category_to_json(opposite(load_category(arg("file")))));
    if (name == "hom") {
        FinCategory c = load_category(arg("file"));
        std::vector<std::string> h = c.hom(arg("from"), arg("to"));
        return finish(ctx, json{{"hom", h}}, "hom(" + arg("from") + "," + arg("to") + "): " + join_names(h),
                      !h.empty());
    }
    if (name == "extend") {
        SetFunctor f = load_setfunctor(arg("file"));
        return emit_doc(ctx, category_to_json(extend(f.base, f).category));
    }
    if (name == "elements") {
        SetFunctor f = load_setfunctor(arg("file"));
        return emit_doc(ctx, category_to_json(category_of_elements(f, ctx.cap).base));
    }
    if (name == "limit" || name == "colimit") {
        SetFunctor f = load_setfunctor(arg("file"));
        SetLimit l = name == "limit" ? limit_set(f, ctx.cap) : colimit_set(f, ctx.cap);
        json rep{{"size", l.carrier.size()}, {"elements", l.carrier.elements}};
        if (name == "colimit") rep["classes"] = classes_json(l.classes);
        return finish(ctx, rep,
                      name + ": " + std::to_string(l.carrier.size()) + " elements: " +
                          join_names(l.carrier.elements),
                      l.carrier.size() > 0);
    }
    if (name == "wlimit" || name == "wcolimit") {
        WeightedDiagram wd = weighted_diagram_from_json(parse_file(arg("file")));
        std::optional<CLimit> l =
            name == "wlimit" ? weighted_limit_in_C(wd, ctx.cap) : weighted_colimit_in_C(wd, ctx.cap);
        if (!l) return finish(ctx, json{{"found", false}}, "none", false);
        json rep{{"found", true}, {"object", l->object}, {"cone", cone_json(l->universal)}};
        return finish(ctx, rep, "object " + l->object);
    }
    if (name == "end" || name == "coend") {
        if (arg("what") != "hom") throw Error("UnknownCommand", name + " only supports 'hom'");
        FinCategory c = load_category(arg("category"));
        if (name == "end") {
            EndResult e = end_of(hom_bifunctor(c), ctx.cap);
            return finish(ctx, json{{"size", e.carrier.size()}, {"elements", e.carrier.elements}},
                          "end: " + std::to_string(e.carrier.size()) + " elements: " +
                              join_names(e.carrier.elements),
                          e.carrier.size() > 0);
        }
        CoendResult e = coend_of(hom_bifunctor(c), ctx.cap);
        return finish(ctx, json{{"size", e.carrier.size()}, {"classes", classes_json(e.classes)}},
                      classes_text(e.carrier), e.carrier.size() > 0);
    }
    if (name == "pairing") {
        PairingResult pr = pairing(load_setfunctor(arg("left")), load_setfunctor(arg("right")), ctx.cap);
        return finish(ctx, json{{"size", pr.carrier.size()}, {"classes", classes_json(pr.classes)}},
                      classes_text(pr.carrier), pr.carrier.size() > 0);
    }
    if (name == "nat") {
        NatEndResult n = nat_transformations_end(load_setfunctor(arg("source")), load_setfunctor(arg("target")), ctx.cap);
        return finish(ctx, json{{"size", n.carrier.size()}, {"elements", n.carrier.elements}},
                      "nat: " + std::to_string(n.carrier.size()) + " transformations", n.carrier.size() > 0);
    }
    if (name == "kan-right" || name == "kan-left") {
        FunctorData d = load_functor(arg("diagram"));
        FunctorData g = load_functor(arg("along"));
        KanResult k = name == "kan-right" ? right_kan_pointwise(d, g, ctx.cap) : left_kan_pointwise(d, g, ctx.cap);
        json objs;
        for (const auto& [o, x] : k.extension.obj_map) objs[o] = x;
        json edge;
        for (const auto& [o, m] : k.edge) edge[o] = m;
        json rep{{"total", k.total()}, {"objects", std::move(objs)}, {"edge", std::move(edge)},
                 {"missing", k.missing}};
        std::string text = k.total() ? "total extension on " + std::to_string(k.extension.obj_map.size()) + " objects"
                                     : "partial extension; missing: " + join_names(k.missing);
        return finish(ctx, rep, text, k.total());
    }
    if (name == "split") {
        Idempotent e = load_idempotent(arg("category"), arg("idempotent"));
        std::optional<Splitting> s = split_idempotent(e);
        if (!s) return finish(ctx, json{{"split", false}}, "not split", false);
        json rep{{"split", true}, {"through", s->through}, {"section", s->section}, {"retraction", s->retraction}};
        return finish(ctx, rep, "split through " + s->through + ": " + s->section + ", " + s->retraction);
    }
    if (name == "karoubi") return emit_doc(ctx, category_to_json(karoubi_envelope(load_category(arg("category")), ctx.cap).category));
    if (name == "cauchy-complete") {
        CompletenessReport r = is_cauchy_complete(load_category(arg("category")));
        json wit = json::array();
        std::vector<std::string> names;
        for (const auto& e : r.non_split) {
            wit.push_back(json{{"object", e.object}, {"morphism", e.morphism}});
            names.push_back(e.morphism + "@" + e.object);
        }
        return finish(ctx, json{{"complete", r.complete}, {"non_split", std::move(wit)}},
                      r.complete ? "complete" : "incomplete: " + join_names(names), r.complete);
    }
    if (name == "cauchy-point" || name == "cauchy-extend" || name == "realize") {
        CauchyPoint pt = cauchy_point_from_idempotent(load_idempotent(arg("category"), arg("idempotent")), ctx.cap);
        if (name == "cauchy-extend") return emit_doc(ctx, category_to_json(cauchy_extension(pt, ctx.cap).category));
        if (name == "realize") {
            std::optional<std::string> r = realize_cauchy_point(pt);
            if (!r) return finish(ctx, json{{"realized", false}}, "none", false);
            return finish(ctx, json{{"realized", true}, {"object", *r}}, "object " + *r);
        }
        json fs, ps;
        for (const auto& o : pt.F.base.objects) {
            fs[o] = pt.F.at(o).elements;
            ps[o] = pt.P.at(o).elements;
        }
        json rep{{"F", std::move(fs)}, {"P", std::move(ps)}, {"identity_class", pt.i},
                 {"pairing_size", pt.pf.carrier.size()}};
        return finish(ctx, rep, "point with identity class " + pt.i + ", " +
                                    std::to_string(pt.pf.carrier.size()) + " pairing classes");
    }
    if (name == "retract") {
        std::optional<RepresentableRetract> r = retract_of_representable(load_setfunctor(arg("file")), ctx.cap);
        if (!r) return finish(ctx, json{{"found", false}}, "none", false);
        json rep{{"found", true}, {"object", r->object}, {"idempotent", r->induced.morphism}};
        return finish(ctx, rep, "retract of " + r->object + " via idempotent " + r->induced.morphism);
    }
    if (name == "absolute-weight") {
        bool abs = is_absolute_weight(load_setfunctor(arg("file")), ctx.cap);
        return finish(ctx, json{{"absolute", abs}}, abs ? "absolute" : "not absolute", abs);
    }
    if (name == "collage") {
        json j = parse_file(arg("file"));
        if (file_kind(j) != "profunctor") throw Error("ValidationFailed", "collage: expected kind 'profunctor'");
        return emit_doc(ctx, category_to_json(collage(profunctor_from_json(j), ctx.cap).category));
    }
    if (name == "profcompose") {
        json jf = parse_file(arg("first")), js = parse_file(arg("second"));
        Profunctor r = compose_profunctors(profunctor_from_json(jf), profunctor_from_json(js), ctx.cap);
        return emit_doc(ctx, profunctor_to_json(r));
    }
    if (name == "day") {
        json jm = parse_file(arg("monoidal"));
        if (file_kind(jm) != "monoidal") throw Error("ValidationFailed", "day: expected kind 'monoidal'");
        StrictMonoidalStructure m = monoidal_from_json(jm);
        SetFunctor r = day_convolve(load_setfunctor(arg("left")), load_setfunctor(arg("right")), m, ctx.cap);
        return emit_doc(ctx, setfunctor_to_json(r));
    }
    if (name == "strong-monoidal") {
        json jm = parse_file(arg("file"));
        if (file_kind(jm) != "monoidal") throw Error("ValidationFailed", "strong-monoidal: expected kind 'monoidal'");
        StrongMonoidalReport r = check_yoneda_strong_monoidal(monoidal_from_json(jm), ctx.cap);
        json fails = json::array();
        std::vector<std::string> names;
        for (const auto& [a, b] : r.failures) {
            fails.push_back(json::array({a, b}));
            names.push_back("(" + a + "," + b + ")");
        }
        return finish(ctx, json{{"pass", r.pass}, {"pairs", r.pairs_checked.size()}, {"failures", std::move(fails)}},
                      r.pass ? "pass: " + std::to_string(r.pairs_checked.size()) + " pairs"
                             : "fail: " + join_names(names),
                      r.pass);
    }
    if (name == "dot") {
        json j = parse_file(arg("file"));
        std::string kind = file_kind(j);
        FinCategory c;
        if (kind == "category") c = category_from_json(j);
        else if (kind == "setfunctor") {
            SetFunctor f = setfunctor_from_json(j);
            c = extend(f.base, f).category;
        } else if (kind == "profunctor") c = collage(profunctor_from_json(j), ctx.cap).category;
        else throw Error("ValidationFailed", "dot: expected category, setfunctor, or profunctor");
        std::cout << emit_dot(c);
        return 0;
    }
    throw Error("UnknownCommand", name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for exact computation over finite categories"};
    app.require_subcommand(1);

    Ctx ctx;
    std::map<std::string, std::string> args;
    std::string picked;

    auto add = [&](const std::string& name, const std::string& desc,
                   const std::vector<std::pair<std::string, bool>>& params) {
        CLI::App* sub = app.add_subcommand(name, desc);
        for (const auto& [p, positional] : params) {
            CLI::Option* o = positional ? sub->add_option(p, args[p]) : sub->add_option("--" + p, args[p]);
            o->required();
        }
        sub->add_option("--cap", ctx.cap, "size cap for enumerations");
        sub->add_flag("--expect-some", ctx.expect_some, "exit 1 when the answer is none/empty");
        sub->add_option("--format", ctx.format, "output format: text | json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->callback([&picked, name] { picked = name; });
    };

    add("validate", "parse and validate a workspace file", {{"file", true}});
    add("opposite", "emit the opposite category", {{"file", true}});
    add("hom", "list a hom-set", {{"file", true}, {"from", false}, {"to", false}});
    add("extend", "emit the virtual-arrow extension of a set functor", {{"file", true}});
    add("elements", "emit the category of elements of a set functor", {{"file", true}});
    add("limit", "limit of a Set-valued diagram", {{"file", true}});
    add("colimit", "colimit of a Set-valued diagram", {{"file", true}});
    add("wlimit", "weighted limit of a diagram in its target category", {{"file", true}});
    add("wcolimit", "weighted colimit of a diagram in its target category", {{"file", true}});
    add("end", "end of a bifunctor over a category", {{"what", true}, {"category", false}});
    add("coend", "coend of a bifunctor over a category", {{"what", true}, {"category", false}});
    add("pairing", "coend pairing of a presheaf against a set functor", {{"left", false}, {"right", false}});
    add("nat", "natural transformations via the end formula", {{"source", false}, {"target", false}});
    add("kan-right", "pointwise right Kan extension", {{"diagram", false}, {"along", false}});
    add("kan-left", "pointwise left Kan extension", {{"diagram", false}, {"along", false}});
    add("split", "split an idempotent", {{"category", false}, {"idempotent", false}});
    add("karoubi", "emit the Karoubi envelope", {{"category", false}});
    add("cauchy-complete", "check that every idempotent splits", {{"category", false}});
    add("cauchy-point", "the Cauchy point of an idempotent", {{"category", false}, {"idempotent", false}});
    add("cauchy-extend", "emit the extension category of a Cauchy point", {{"category", false}, {"idempotent", false}});
    add("realize", "realize a Cauchy point inside the category", {{"category", false}, {"idempotent", false}});
    add("retract", "exhibit a set functor as a retract of a representable", {{"file", true}});
    add("absolute-weight", "test whether a weight is absolute", {{"file", true}});
    add("collage", "emit the collage of a profunctor", {{"file", true}});
    add("profcompose", "compose two profunctors over their middle category", {{"first", false}, {"second", false}});
    add("day", "Day convolution of two set functors", {{"monoidal", false}, {"left", false}, {"right", false}});
    add("strong-monoidal", "check the representables against Day convolution", {{"file", true}});
    add("dot", "emit a DOT rendering (dashed virtual arrows)", {{"file", true}});

    CLI11_PARSE(app, argc, argv);

    try {
        return run_command(picked, ctx, args);
    } catch (const Error& e) {
        std::cerr << "error[" << e.code << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
