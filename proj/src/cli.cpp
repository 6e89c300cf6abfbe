#include "deligne/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "deligne/errors.hpp"
#include "deligne/serialize.hpp"

namespace deligne {

namespace {

struct Outcome {
    Json report;
    int status = 0;
};

struct Inputs {
    std::string complex, cover, cochain;
};

bool exact(const RunConfig& cfg) { return cfg.arithmetic == "rational"; }

void check_config(const RunConfig& cfg)
{
    if (!(cfg.tolerance > 0)) throw InvalidInput("tolerance must be positive");
    if (cfg.quad_order < 1) throw InvalidInput("quad_order must be at least 1");
    if (cfg.arithmetic != "float" && cfg.arithmetic != "rational")
        throw InvalidInput("arithmetic must be float or rational");
    if (cfg.format != "json" && cfg.format != "text") throw InvalidInput("format must be json or text");
}

CoveredPtr load_base(const Inputs& in)
{
    auto K = complex_from_json(read_json_file(in.complex));
    return std::make_shared<const CoveredComplex>(cover_from_json(K, read_json_file(in.cover)));
}

template <class S>
BasicCochain<S> load_cochain(CoveredPtr base, const std::string& path)
{
    Json j = read_json_file(path);
    if constexpr (Arith<S>::exact)
        return rational_cochain_from_json(std::move(base), j);
    else
        return cochain_from_json(std::move(base), j);
}

IndexMap resolve_map(const CoveredComplex& C, const std::string& spec, const RunConfig& cfg, std::uint64_t offset)
{
    if (spec == "default") return default_index_map(C);
    if (spec == "random") {
        if (!cfg.seed_given) throw InvalidInput("a random index map needs --seed");
        return random_index_map(C, cfg.seed + offset);
    }
    if (spec.rfind("random:", 0) == 0) {
        try {
            std::size_t used = 0;
            std::uint64_t s = std::stoull(spec.substr(7), &used);
            if (used == spec.size() - 7) return random_index_map(C, s);
        } catch (const std::exception&) {
        }
        throw InvalidInput("bad index map '" + spec + "', expected random:<seed>");
    }
    return index_map_from_json(C, read_json_file(spec));
}

template <class S>
bool breached(double residual, const RunConfig& cfg)
{
    return Arith<S>::exact ? residual > 0 : residual > cfg.tolerance;
}

GeometryPtr resolve_geometry(std::string name)
{
    int levels = 0;
    while (name.size() > 3 && name.compare(name.size() - 3, 3, "/sd") == 0) {
        name.resize(name.size() - 3);
        ++levels;
    }
    GeometryPtr g = make_geometry(name);
    for (int i = 0; i < levels; ++i) g = subdivide_geometry(*g);
    return g;
}

std::string join(const std::string& dir, const std::string& file) { return dir.empty() ? file : dir + "/" + file; }

/// Discretize onto g, write complex/cover/cochain files and describe the result.
Json materialize(const Presentation& a, GeometryPtr g, const RunConfig& cfg, const std::string& out_dir)
{
    Json r;
    r["geometry"] = g->name;
    r["presentation"] = a.describe();
    r["degree"] = a.degree();
    r["arithmetic"] = cfg.arithmetic;
    Json cochain_json;
    Json validation;
    std::optional<Json> hol;
    const auto& K = g->complex();
    const bool closed = K.manifold() == ManifoldFlag::closed_oriented && K.dim() == a.degree();
    if (exact(cfg)) {
        if (!a.discrete()) throw InvalidInput("rational arithmetic needs a purely discrete class");
        RationalCochain c = discretize_exact(a, g);
        cochain_json = cochain_to_json(c);
        validation = report_json(validate_cocycle(c, 0.0));
        if (closed) hol = holonomy_json(holonomy(c, default_index_map(g->cover())));
    } else {
        Discretization d = discretize(a, g, cfg.quad_order, cfg.tolerance);
        r["quad_order"] = cfg.quad_order;
        r["error_estimate"] = d.error_estimate;
        r["tolerance"] = d.tolerance;
        cochain_json = cochain_to_json(d.cochain);
        validation = report_json(d.report);
        if (closed) hol = holonomy_json(holonomy(d.cochain, default_index_map(g->cover())));
    }
    r["validation"] = validation;
    if (hol) r["holonomy_default_index_map"] = *hol;
    Json files{{"complex", join(out_dir, "complex.json")},
               {"cover", join(out_dir, "cover.json")},
               {"cochain", join(out_dir, "cochain.json")}};
    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw InvalidInput(out_dir + ": cannot create directory");
    }
    write_text_file(files["complex"], canonical_dump(complex_to_json(K)));
    write_text_file(files["cover"], canonical_dump(cover_to_json(g->cover())));
    write_text_file(files["cochain"], canonical_dump(cochain_json));
    r["files"] = files;
    return r;
}

template <class S>
Outcome cmd_validate(const Inputs& in, const RunConfig& cfg)
{
    auto c = load_cochain<S>(load_base(in), in.cochain);
    CocycleReport rep = validate_cocycle(c, cfg.tolerance);
    return {report_json(rep), rep.passed() ? 0 : 2};
}

template <class S>
Outcome cmd_holonomy(const Inputs& in, const std::string& map_spec, const RunConfig& cfg)
{
    auto base = load_base(in);
    auto c = certify(load_cochain<S>(base, in.cochain), cfg.tolerance);
    IndexMap rho = resolve_map(*base, map_spec, cfg, 0);
    const bool closed = base->complex().manifold() == ManifoldFlag::closed_oriented;
    Json j = holonomy_json(closed ? holonomy(c, rho) : local_action(c, rho));
    j["kind"] = closed ? "holonomy" : "local_action";
    j["index_map"] = map_spec;
    return {j, 0};
}

struct TransgressArgs {
    std::string rho0 = "default", rho1 = "random", rho2;
    bool boundary_formula = false;
};

template <class S>
Outcome cmd_transgress(const Inputs& in, const TransgressArgs& t, const RunConfig& cfg)
{
    auto base = load_base(in);
    auto c = certify(load_cochain<S>(base, in.cochain), cfg.tolerance);
    IndexMap r0 = resolve_map(*base, t.rho0, cfg, 0);
    IndexMap r1 = resolve_map(*base, t.rho1, cfg, 1);
    auto general = transition_general(c, r0, r1);
    auto boundary = transition_boundary(c, r0, r1);
    double worst = circular_distance(general.raw, boundary.raw);
    Json j{{"kind", "transgression"},
           {"general", transition_json(general)},
           {"boundary", transition_json(boundary)},
           {"agreement", worst},
           {"tolerance", cfg.tolerance}};
    if (t.boundary_formula) {
        const int p = c.degree();
        if (p == 2) {
            auto e = transition_p2_boundary(c, r0, r1);
            j["edge_formula"] = {{"value", transition_json(e.value)},
                                 {"agreement", e.agreement},
                                 {"interior_cancellation", e.interior_cancellation}};
            worst = std::max({worst, e.agreement, e.interior_cancellation});
        } else if (p == 3) {
            if (t.rho2.empty()) throw InvalidInput("the degree 3 boundary formula needs --rho2");
            IndexMap r2 = resolve_map(*base, t.rho2, cfg, 2);
            auto tr = transgress_p3_triple(c, r0, r1, r2);
            double composed = circular_distance(tr.composed_general, tr.composed_patch);
            j["triple"] = {{"composed_general", scalar_json(tr.composed_general)},
                           {"composed_patch", scalar_json(tr.composed_patch)},
                           {"edge_formula", scalar_json(tr.edge_formula)},
                           {"agreement", tr.agreement},
                           {"composed_agreement", composed},
                           {"patch_faces", tr.patch_faces},
                           {"patch_boundary_edges", tr.patch_boundary_edges}};
            worst = std::max({worst, tr.agreement, composed});
        } else {
            throw InvalidInput("boundary formulas exist for degrees 2 and 3 only");
        }
    }
    j["worst_residual"] = worst;
    return {j, breached<S>(worst, cfg) ? 2 : 0};
}

template <class S>
Outcome cmd_curvature(const Inputs& in, const std::string& map_spec, const RunConfig& cfg)
{
    auto base = load_base(in);
    auto c = certify(load_cochain<S>(base, in.cochain), cfg.tolerance);
    IndexMap rho = resolve_map(*base, map_spec, cfg, 0);
    auto v = curvature_total(c, rho, cfg.tolerance);
    std::int64_t pairing = chern_pairing(chern_cocycle(c, cfg.tolerance), *base, rho);
    Json j = curvature_json(v);
    j["chern_pairing"] = pairing;
    j["index_map"] = map_spec;
    bool bad = breached<S>(v.integrality_defect, cfg) || pairing != v.nearest_integer;
    return {j, bad ? 2 : 0};
}

template <class S>
Outcome cmd_shift(const Inputs& in, const std::string& b_path, const RunConfig&)
{
    auto base = load_base(in);
    auto c = load_cochain<S>(base, in.cochain);
    auto b = load_cochain<S>(base, b_path);
    return {cochain_to_json(exact_shift(c, b)), 0};
}

Outcome cmd_fixture(std::string name, std::vector<std::string> params, std::string geometry,
                    const std::string& request, const std::string& out_dir, RunConfig cfg)
{
    Params p;
    if (!request.empty()) {
        Json r = read_json_file(request);
        if (!r.is_object()) throw InvalidInput(request + ": expected an object");
        for (auto it = r.begin(); it != r.end(); ++it) {
            const std::string& key = it.key();
            const Json& v = it.value();
            if (key == "fixture" && v.is_string()) {
                name = v.get<std::string>();
            } else if (key == "geometry" && v.is_string()) {
                if (geometry.empty()) geometry = v.get<std::string>();
            } else if (key == "quad_order" && v.is_number_integer()) {
                cfg.quad_order = v.get<int>();
            } else if (key == "params" && v.is_object()) {
                for (auto q = v.begin(); q != v.end(); ++q)
                    p[q.key()] = q.value().is_string() ? q.value().get<std::string>() : q.value().dump();
            } else {
                throw InvalidInput(request + ": unexpected or malformed field '" + key + "'");
            }
        }
        check_config(cfg);
    }
    if (name.empty()) throw InvalidInput("fixture needs a name or --request");
    for (const auto& item : params) {
        std::stringstream ss(item);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidInput("parameter without '=': '" + kv + "'");
            p[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
    }
    Fixture f = generate_fixture(name, p, exact(cfg));
    if (geometry.empty()) geometry = f.geometry;
    Json j = materialize(*to_presentation(f.value), resolve_geometry(geometry), cfg, out_dir);
    j["kind"] = "fixture";
    j["fixture"] = name;
    j["params"] = p;
    return {j, j["validation"]["passed"].get<bool>() ? 0 : 2};
}

struct CupArgs {
    std::string lhs, rhs, third, geometry, association = "left";
};

Outcome cmd_cup(const CupArgs& a, const std::string& out_dir, const RunConfig& cfg)
{
    Operand l = parse_operand(a.lhs, exact(cfg));
    Operand r = parse_operand(a.rhs, exact(cfg));
    PresentationPtr pres;
    if (a.third.empty()) {
        pres = to_presentation(cup_product(l, r));
    } else {
        Operand t = parse_operand(a.third, exact(cfg));
        if (a.association == "explicit") {
            auto* f = std::get_if<AngleFunction>(&l);
            auto* g = std::get_if<AngleFunction>(&r);
            auto* h = std::get_if<AngleFunction>(&t);
            if (!f || !g || !h) throw InvalidInput("the explicit triple product takes three functions");
            pres = triple_product(*f, *g, *h);
        } else if (a.association == "left") {
            pres = to_presentation(cup_product(cup_product(l, r), t));
        } else {
            throw InvalidInput("association must be left or explicit");
        }
    }
    Json j = materialize(*pres, resolve_geometry(a.geometry), cfg, out_dir);
    j["kind"] = "cup";
    j["lhs"] = a.lhs;
    j["rhs"] = a.rhs;
    if (!a.third.empty()) {
        j["third"] = a.third;
        j["association"] = a.association;
    }
    return {j, j["validation"]["passed"].get<bool>() ? 0 : 2};
}

std::map<Vertex, Vertex> parse_matching(const std::string& inline_spec, const std::string& file)
{
    std::map<Vertex, Vertex> m;
    if (!file.empty()) {
        Json j = read_json_file(file);
        if (!j.is_object()) throw InvalidInput(file + ": expected an object of vertex labels");
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it.value().is_number_integer()) throw InvalidInput(file + "." + it.key() + ": expected an integer");
            try {
                m[std::stoi(it.key())] = it.value().get<int>();
            } catch (const std::logic_error&) {
                throw InvalidInput(file + ": bad vertex label '" + it.key() + "'");
            }
        }
    }
    std::stringstream ss(inline_spec);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        auto colon = pair.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument(pair);
            m[std::stoi(pair.substr(0, colon))] = std::stoi(pair.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw InvalidInput("bad matching pair '" + pair + "', expected <K2 label>:<K1 label>");
        }
    }
    return m;
}

Outcome cmd_glue(const std::string& k1, const std::string& k2, const std::string& match,
                 const std::string& match_file, const std::string& map_output)
{
    auto K1 = complex_from_json(read_json_file(k1));
    auto K2 = complex_from_json(read_json_file(k2));
    Gluing g = glue_along_boundary(K1, K2, parse_matching(match, match_file));
    if (!map_output.empty()) {
        Json m = Json::object();
        for (auto [a, b] : g.k2_vertex_map) m[std::to_string(a)] = b;
        write_text_file(map_output, canonical_dump(m));
    }
    return {complex_to_json(g.complex), 0};
}

Outcome cmd_subdivide(const std::string& complex_path, const std::string& cover_path, const std::string& cover_output)
{
    auto K = complex_from_json(read_json_file(complex_path));
    Subdivision sd = barycentric_subdivide(K);
    if (!cover_path.empty()) {
        if (cover_output.empty()) throw InvalidInput("--cover needs --cover-output");
        CoveredComplex C = cover_from_json(K, read_json_file(cover_path));
        write_text_file(cover_output, canonical_dump(cover_to_json(subdivide_cover(C, sd))));
    }
    return {complex_to_json(sd.complex), 0};
}

std::string format_scalar(const Json& v)
{
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::string& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_array() && !e.is_object(); });
        if (flat && j.size() <= 8) {
            out += prefix + ": [";
            for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + format_scalar(j[i]);
            out += "]\n";
        } else if (flat) {
            out += prefix + ": " + std::to_string(j.size()) + " values\n";
        } else {
            const std::size_t shown = std::min<std::size_t>(j.size(), 5);
            for (std::size_t i = 0; i < shown; ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
            if (shown < j.size()) out += prefix + ": " + std::to_string(j.size() - shown) + " more\n";
            if (j.empty()) out += prefix + ": none\n";
        }
        return;
    }
    out += prefix + ": " + format_scalar(j) + "\n";
}

void emit(const Outcome& o, const RunConfig& cfg, std::ostream& out)
{
    std::string text;
    if (cfg.format == "text")
        flatten(o.report, "", text);
    else
        text = canonical_dump(o.report);
    if (cfg.output.empty())
        out << text;
    else
        write_text_file(cfg.output, text);
}

template <class F>
Outcome dispatch(const RunConfig& cfg, F&& f)
{
    return exact(cfg) ? f(Rational{}) : f(0.0);
}

}  // namespace

RunConfig load_config(const std::string& path)
{
    Json j = read_json_file(path);
    if (!j.is_object()) throw InvalidInput(path + ": expected an object");
    RunConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string at = path + "." + it.key();
        const Json& v = it.value();
        try {
            if (it.key() == "tolerance") cfg.tolerance = v.get<double>();
            else if (it.key() == "quad_order") cfg.quad_order = v.get<int>();
            else if (it.key() == "seed") {
                cfg.seed = v.get<std::uint64_t>();
                cfg.seed_given = true;
            } else if (it.key() == "arithmetic") cfg.arithmetic = v.get<std::string>();
            else if (it.key() == "format") cfg.format = v.get<std::string>();
            else if (it.key() == "output") cfg.output = v.get<std::string>();
            else throw InvalidInput(at + ": unknown config key");
        } catch (const Json::exception&) {
            throw InvalidInput(at + ": wrong type");
        }
    }
    check_config(cfg);
    return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Holonomy, transgression and cup products of discrete Deligne cochains.", "deligne"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, arithmetic, format, output;
    double tolerance = 0;
    int quad_order = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "Config file (default: $DELIGNE_CONFIG)");
    auto* o_tol = app.add_option("--tolerance", tolerance, "Residual tolerance (1e-9)");
    auto* o_quad = app.add_option("--quad-order", quad_order, "Quadrature points per direction (8)");
    auto* o_seed = app.add_option("--seed", seed, "Seed for random index maps (0)");
    auto* o_arith = app.add_option("--arithmetic", arithmetic, "float or rational");
    auto* o_format = app.add_option("--format", format, "json or text");
    auto* o_output = app.add_option("--output", output, "Report path (stdout)");

    Inputs in;
    auto positional = [&](CLI::App* sub) {
        sub->add_option("complex", in.complex, "Complex file")->required();
        sub->add_option("cover", in.cover, "Cover file")->required();
        sub->add_option("cochain", in.cochain, "Cochain file")->required();
    };

    auto* validate = app.add_subcommand("validate", "Check the cocycle conditions");
    positional(validate);

    std::string index_map = "default";
    auto* hol = app.add_subcommand("holonomy", "Holonomy (closed) or local action (with boundary)");
    positional(hol);
    hol->add_option("--index-map", index_map, "default, random, random:<seed> or a file");

    TransgressArgs targs;
    auto* trans = app.add_subcommand("transgress", "Transition between the local actions of two index maps");
    positional(trans);
    trans->add_option("--rho0", targs.rho0, "First index map (default)");
    trans->add_option("--rho1", targs.rho1, "Second index map (random)");
    trans->add_option("--rho2", targs.rho2, "Third index map, degree 3 boundary formula");
    trans->add_flag("--boundary-formula", targs.boundary_formula, "Also evaluate the boundary-only formula");

    CupArgs cargs;
    std::string out_dir = ".";
    auto* cup = app.add_subcommand("cup", "Discretize a cup product on a geometry");
    cup->add_option("--lhs", cargs.lhs, "Left operand")->required();
    cup->add_option("--rhs", cargs.rhs, "Right operand")->required();
    cup->add_option("--third", cargs.third, "Optional third operand");
    cup->add_option("--association", cargs.association, "left or explicit (three functions)");
    cup->add_option("--geometry", cargs.geometry, "Geometry name, '/sd' suffixes subdivide")->required();
    cup->add_option("--out-dir", out_dir, "Directory for complex/cover/cochain files (.)");

    std::string fixture_name, fixture_geometry, request;
    std::vector<std::string> params;
    auto* fix = app.add_subcommand("fixture", "Generate a fixture class on its geometry");
    fix->add_option("name", fixture_name, "flat_circle, winding_function, monopole, torsion, zero");
    fix->add_option("--params", params, "key=value pairs");
    fix->add_option("--geometry", fixture_geometry, "Override the default geometry");
    fix->add_option("--request", request, "Fixture request file");
    fix->add_option("--out-dir", out_dir, "Directory for complex/cover/cochain files (.)");

    std::string b_path;
    auto* shift = app.add_subcommand("shift", "Add the coboundary of a degree p-1 cochain");
    positional(shift);
    shift->add_option("b", b_path, "Degree p-1 cochain file")->required();

    auto* curv = app.add_subcommand("curvature", "Total curvature and Chern pairing on a closed p+1 complex");
    positional(curv);
    curv->add_option("--index-map", index_map, "default, random, random:<seed> or a file");

    std::string k1, k2, match, match_file, map_output;
    auto* glue = app.add_subcommand("glue", "Glue two complexes along boundary vertices");
    glue->add_option("first", k1, "Complex file")->required();
    glue->add_option("second", k2, "Complex file")->required();
    glue->add_option("--match", match, "Pairs <second label>:<first label>, comma separated");
    glue->add_option("--match-file", match_file, "Object mapping second labels to first labels");
    glue->add_option("--map-output", map_output, "Write where each vertex of the second complex went");

    std::string sd_complex, sd_cover, sd_cover_output;
    auto* sub = app.add_subcommand("subdivide", "Barycentric subdivision");
    sub->add_option("complex", sd_complex, "Complex file")->required();
    sub->add_option("--cover", sd_cover, "Cover file to subdivide along");
    sub->add_option("--cover-output", sd_cover_output, "Where to write the subdivided cover");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (config_path.empty())
            if (const char* env = std::getenv("DELIGNE_CONFIG"); env && *env) config_path = env;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (o_tol->count()) cfg.tolerance = tolerance;
        if (o_quad->count()) cfg.quad_order = quad_order;
        if (o_seed->count()) {
            cfg.seed = seed;
            cfg.seed_given = true;
        }
        if (o_arith->count()) cfg.arithmetic = arithmetic;
        if (o_format->count()) cfg.format = format;
        if (o_output->count()) cfg.output = output;
        check_config(cfg);

        Outcome o;
        auto typed = [&](auto tag) -> Outcome {
            using S = decltype(tag);
            if (*validate) return cmd_validate<S>(in, cfg);
            if (*hol) return cmd_holonomy<S>(in, index_map, cfg);
            if (*trans) return cmd_transgress<S>(in, targs, cfg);
            if (*curv) return cmd_curvature<S>(in, index_map, cfg);
            return cmd_shift<S>(in, b_path, cfg);
        };
        if (*validate || *hol || *trans || *curv || *shift)
            o = dispatch(cfg, typed);
        else if (*cup)
            o = cmd_cup(cargs, out_dir, cfg);
        else if (*fix)
            o = cmd_fixture(fixture_name, params, fixture_geometry, request, out_dir, cfg);
        else if (*glue)
            o = cmd_glue(k1, k2, match, match_file, map_output);
        else
            o = cmd_subdivide(sd_complex, sd_cover, sd_cover_output);
        emit(o, cfg, out);
        if (o.status == 2) {
            double worst = 0;
            const Json& r = o.report.contains("validation") ? o.report["validation"] : o.report;
            if (r.contains("worst_residual")) worst = r["worst_residual"].get<double>();
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", worst);
            err << "validation failed (worst residual " << buf << ")\n";
        }
        return o.status;
    } catch (const ValidationFailure& e) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", e.worst());
        err << "validation failed: " << e.what() << " (worst residual " << buf << ")\n";
        return 2;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace deligne
