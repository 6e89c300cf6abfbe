// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "deligne/analytic.hpp"
#include "deligne/cli.hpp"
#include "deligne/errors.hpp"
#include "deligne/holonomy.hpp"
#include "deligne/transgression.hpp"

using namespace deligne;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double circ(double a, double b)
{
    double d = std::remainder(a - b, kTwoPi);
    return std::fabs(d);
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double hol(const Cochain& c, const IndexMap& rho) { return holonomy(c, rho).radians(); }

template <class S>
BasicCochain<S> shifted(const BasicCochain<S>& c, std::uint64_t seed)
{
    auto b = random_cochain<S>(c.base_ptr(), c.degree() - 1, seed);
    return certify(exact_shift(c, b), Arith<S>::exact ? 0.0 : 1e-9);
}

GeometryPtr closed_geometry(int p)
{
    return make_geometry(p == 1 ? "circle-3arc" : p == 2 ? "torus2-4chart" : "torus3-8chart");
}

/// Analytic classes with nontrivial holonomy on the closed fixtures.
PresentationPtr analytic_class(int p)
{
    if (p == 1) return line_presentation(flat_circle_line(Angle::from_radians(0.7)));
    if (p == 2)
        return triple_product(AngleFunction::winding(2, 0), AngleFunction::winding(3, 1),
                              AngleFunction::constant(Angle::from_radians(0.1)));
    return cup_line_line(flat_circle_line(Angle::from_radians(0.4)),
                         function_cup_line(AngleFunction::winding(1, 1), AngleFunction::winding(2, 2)));
}

Cochain annulus_class(GeometryPtr g)
{
    auto pres = triple_product(AngleFunction::winding(1, 0), AngleFunction::linear(0.7, 1), AngleFunction::winding(2, 0));
    return shifted(discretize(*pres, g, 8).cochain, 31);
}

Cochain solid_torus_class(GeometryPtr g)
{
    auto L = function_cup_line(AngleFunction::winding(1, 2), AngleFunction::linear(0.8, 0));
    auto J = function_cup_line(AngleFunction::winding(2, 2), AngleFunction::linear(0.5, 1));
    return shifted(discretize(*cup_line_line(L, J), g, 8).cochain, 32);
}

// 1 ------------------------------------------------------------------------
Outcome index_map_independence()
{
    double worst = 0;
    bool exact_ok = true;
    for (int p = 1; p <= 3; ++p) {
        auto g = closed_geometry(p);
        auto c = shifted(discretize(*analytic_class(p), g, 8).cochain, 100 + p);
        auto r = shifted(discretize_exact(*torsion_class(Angle::from_turns(Rational(1, 7)), p), g), 200 + p);
        for (std::uint64_t s = 0; s < 50; ++s) {
            auto r0 = random_index_map(g->cover(), 2 * s), r1 = random_index_map(g->cover(), 2 * s + 1);
            worst = std::max(worst, circ(hol(c, r0), hol(c, r1)));
            exact_ok = exact_ok && holonomy(r, r0).reduced == holonomy(r, r1).reduced;
        }
    }
    return {worst <= 1e-9 && exact_ok,
            "p=1..3, 50 pairs each: worst " + fmt("%.3g", worst) + ", rational " + (exact_ok ? "exact" : "differs")};
}

// 2 ------------------------------------------------------------------------
/// Equator u_2 = 0 of the octahedral sphere, counterclockwise in (u_0, u_1).
GeometryPtr equator(const Geometry& g)
{
    const auto& K = g.complex();
    std::vector<VertexTuple> edges;
    for (int e = 0; e < static_cast<int>(K.count(1)); ++e) {
        const auto& f = g.frames[1][e];
        if (f[0][2] != 0 || f[1][2] != 0) continue;
        auto t = K.oriented(1, e);
        if (f[0][0] * f[1][1] - f[0][1] * f[1][0] < 0) std::swap(t[0], t[1]);
        edges.push_back(t);
    }
    return restrict_geometry(g, SimplicialComplex::build(edges, ClosurePolicy::closed_oriented));
}

Outcome triangulation_independence()
{
    double worst = 0;
    std::vector<std::pair<int, PresentationPtr>> cases{
        {1, analytic_class(1)},
        {2, analytic_class(2)},
        {2, cup_function_line(AngleFunction::winding(2, 1), flat_circle_line(Angle::from_radians(0.3)))},
        {3, analytic_class(3)},
    };
    for (const auto& [p, pres] : cases) {
        auto g = closed_geometry(p);
        auto sd = subdivide_geometry(*g);
        double a = hol(discretize(*pres, g, 8).cochain, random_index_map(g->cover(), 5));
        double b = hol(discretize(*pres, sd, 8).cochain, random_index_map(sd->cover(), 6));
        worst = std::max(worst, circ(a, b));
    }
    // Monopole connection along the equator: the integrand is not polynomial.
    auto sphere = make_geometry("sphere-octahedron-5chart");
    auto fine = subdivide_geometry(*sphere);
    double loop = 0;
    for (long k : {1L, -2L}) {
        auto line = line_presentation(monopole_line(k));
        auto e0 = equator(*sphere), e1 = equator(*fine);
        double a = hol(discretize(*line, e0, 8).cochain, random_index_map(e0->cover(), 1));
        double b = hol(discretize(*line, e1, 8).cochain, random_index_map(e1->cover(), 2));
        loop = std::max(loop, circ(a, b));
    }
    worst = std::max(worst, loop);
    return {worst <= 1e-6, "4 classes and 2 monopole loops, base vs subdivision at order 8: worst " + fmt("%.3g", worst)};
}

// 3 ------------------------------------------------------------------------
Outcome lemma_oracle()
{
    auto ann = make_geometry("annulus");
    auto st = make_geometry("solid-torus");
    double worst = 0;
    for (const auto& [g, c] : {std::pair{ann, annulus_class(ann)}, {st, solid_torus_class(st)}})
        for (std::uint64_t s = 0; s < 10; ++s) {
            auto r0 = random_index_map(g->cover(), s), r1 = random_index_map(g->cover(), s + 100);
            worst = std::max(worst, circ(transition_general(c, r0, r1).raw, transition_boundary(c, r0, r1).raw));
        }
    int mismatches = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto g = s % 2 ? st : ann;
        int p = s % 2 ? 3 : 2;
        auto r = shifted(BasicCochain<Rational>(g->covered, p), 500 + s);
        auto r0 = random_index_map(g->cover(), s + 1000), r1 = random_index_map(g->cover(), s + 2000);
        if (transition_general(r, r0, r1).raw != transition_boundary(r, r0, r1).raw) ++mismatches;
    }
    return {worst <= 1e-9 && mismatches == 0, "fixtures worst " + fmt("%.3g", worst) + ", 100 random exact cocycles: " +
                                                  std::to_string(mismatches) + " mismatches"};
}

// 4 ------------------------------------------------------------------------
Outcome interior_cancellation()
{
    auto ann = make_geometry("annulus");
    auto st = make_geometry("solid-torus");
    auto c2 = annulus_class(ann);
    auto c3 = solid_torus_class(st);
    double edge = 0, perturb = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto r0 = random_index_map(ann->cover(), s), r1 = random_index_map(ann->cover(), s + 40);
        auto e = transition_p2_boundary(c2, r0, r1);
        edge = std::max({edge, e.agreement, e.interior_cancellation});
        auto g0 = transition_general(c2, r0, r1).raw;
        auto p0 = random_interior_perturbation(ann->cover(), r0, s + 300);
        auto p1 = random_interior_perturbation(ann->cover(), r1, s + 400);
        perturb = std::max(perturb, circ(g0, transition_general(c2, p0, p1).raw));

        auto q0 = random_index_map(st->cover(), s), q1 = random_index_map(st->cover(), s + 50),
             q2 = random_index_map(st->cover(), s + 60);
        auto t = transgress_p3_triple(c3, q0, q1, q2);
        edge = std::max({edge, t.agreement, std::fabs(t.composed_general)});
        auto h0 = transition_general(c3, q0, q1).raw;
        auto w0 = random_interior_perturbation(st->cover(), q0, s + 500);
        auto w1 = random_interior_perturbation(st->cover(), q1, s + 600);
        perturb = std::max(perturb, circ(h0, transition_general(c3, w0, w1).raw));
    }
    return {edge <= 1e-9 && perturb <= 1e-9,
            "boundary formulas worst " + fmt("%.3g", edge) + ", interior perturbations worst " + fmt("%.3g", perturb)};
}

// 5 ------------------------------------------------------------------------
Outcome gauge_invariance()
{
    std::vector<std::pair<GeometryPtr, Cochain>> classes;
    for (int p = 1; p <= 3; ++p) {
        auto g = closed_geometry(p);
        classes.emplace_back(g, discretize(*analytic_class(p), g, 8).cochain);
    }
    double worst = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto& [g, base] = classes[s % 3];
        auto c = shifted(base, 700 + s);
        auto rho = random_index_map(g->cover(), s);
        worst = std::max(worst, circ(hol(c, rho), hol(shifted(c, 900 + s), rho)));
    }
    return {worst <= 1e-9, "100 random (c, b): worst " + fmt("%.3g", worst)};
}

// 6 ------------------------------------------------------------------------
template <class S>
double glue_defect(GeometryPtr g, const BasicCochain<S>& c, std::uint64_t seed)
{
    const auto& K = g->complex();
    std::vector<VertexTuple> left, right;
    for (int t = 0; t < static_cast<int>(K.num_top()); ++t) {
        double x = 0;
        for (const auto& v : g->frames[K.dim()][t]) x += v[0];
        x /= K.dim() + 1;
        (x < kTwoPi / 2 ? left : right).push_back(K.oriented(K.dim(), t));
    }
    auto K1 = SimplicialComplex::build(left, ClosurePolicy::with_boundary);
    auto K2 = SimplicialComplex::build(right, ClosurePolicy::with_boundary);
    auto B2 = boundary_restrict(K2);
    std::map<Vertex, Vertex> id;
    for (int v = 0; v < static_cast<int>(B2.count(0)); ++v) id[B2.vertex_label(v)] = B2.vertex_label(v);
    auto glued = glue_along_boundary(K1, K2, id).complex;
    auto rho = random_index_map(g->cover(), seed);
    S sum = S(0);
    for (const auto* half : {&K1, &K2}) {
        auto C = std::make_shared<const CoveredComplex>(restrict_cover(g->cover(), *half));
        auto ch = transfer_cochain(c, C);
        ch.set_cocycle_flag(true);
        sum += local_action(ch, restrict_index_map(g->cover(), rho, *C)).raw;
    }
    auto G = std::make_shared<const CoveredComplex>(restrict_cover(g->cover(), glued));
    auto cg = transfer_cochain(c, G);
    cg.set_cocycle_flag(true);
    S whole = holonomy(cg, restrict_index_map(g->cover(), rho, *G)).raw;
    if constexpr (Arith<S>::exact)
        return Arith<S>::reduce(sum - whole) == 0 ? 0.0 : 1.0;
    else
        return circ(sum, whole);
}

Outcome gluing()
{
    double worst = 0;
    for (int p = 1; p <= 3; ++p) {
        auto g = closed_geometry(p);
        worst = std::max(worst, glue_defect(g, shifted(discretize(*analytic_class(p), g, 8).cochain, 40 + p), 3));
        worst = std::max(worst, glue_defect(g, shifted(discretize_exact(*torsion_class(Angle::from_turns(Rational(2, 9)), p), g), 50 + p), 4));
    }
    bool union_exact = true, reversal_exact = true;
    for (int p = 1; p <= 3; ++p) {
        auto g = closed_geometry(p);
        auto a = shifted(discretize_exact(*torsion_class(Angle::from_turns(Rational(1, 5)), p), g), 60 + p);
        auto b = shifted(discretize_exact(*torsion_class(Angle::from_turns(Rational(2, 3)), p), g), 70 + p);
        auto u = certify(disjoint_union(a, b), 0.0);
        union_exact = union_exact && holonomy(u, default_index_map(u.base())).raw ==
                                         holonomy(a, default_index_map(a.base())).raw + holonomy(b, default_index_map(b.base())).raw;
        auto r = certify(reverse_orientation(a), 0.0);
        auto rho = random_index_map(g->cover(), p);
        reversal_exact = reversal_exact && holonomy(r, rho).raw == -holonomy(a, rho).raw;
        auto f = shifted(discretize(*analytic_class(p), g, 8).cochain, 80 + p);
        auto fr = certify(reverse_orientation(f), 1e-9);
        reversal_exact = reversal_exact && holonomy(fr, rho).raw == -holonomy(f, rho).raw;
    }
    return {worst <= 1e-9 && union_exact && reversal_exact,
            "glued halves worst " + fmt("%.3g", worst) + ", union " + (union_exact ? "exact" : "differs") + ", reversal " +
                (reversal_exact ? "exact" : "differs")};
}

// 7 ------------------------------------------------------------------------
Outcome integrality()
{
    auto g = make_geometry("sphere-octahedron-5chart");
    double worst = 0;
    bool pairing = true;
    for (long k = -2; k <= 2; ++k) {
        auto d = discretize(*line_presentation(monopole_line(k)), g, 8);
        auto cv = curvature_total(d.cochain, random_index_map(g->cover(), 10 + k), 1e-6);
        worst = std::max(worst, std::fabs(cv.total / kTwoPi - static_cast<double>(k)));
        auto n = chern_cocycle(d.cochain, 1e-9);
        pairing = pairing && chern_pairing(n, g->cover(), default_index_map(g->cover())) == k &&
                  cv.nearest_integer == k;
    }
    return {worst <= 1e-6 && pairing,
            "k=-2..2: worst |total/2pi - k| " + fmt("%.3g", worst) + ", Chern pairing " + (pairing ? "matches" : "differs")};
}

// 8 ------------------------------------------------------------------------
/// Grid loop of torus2-4chart along coordinate dir at row or column at.
SimplicialComplex torus_loop(int dir, int at)
{
    const int n = 4;
    std::vector<VertexTuple> edges;
    for (int s = 0; s < n; ++s) {
        int i0 = dir == 0 ? s : at, j0 = dir == 0 ? at : s;
        int i1 = dir == 0 ? (s + 1) % n : at, j1 = dir == 0 ? at : (s + 1) % n;
        edges.push_back({i0 + n * j0, i1 + n * j1});
    }
    return SimplicialComplex::build(edges, ClosurePolicy::closed_oriented);
}

Outcome cup_products()
{
    auto g = make_geometry("torus2-4chart");
    const int w1 = 2, w2 = 3;
    auto f = AngleFunction::winding(w1, 0), gg = AngleFunction::winding(w2, 1);
    auto fg = to_presentation(cup_product(f, gg)), gf = to_presentation(cup_product(gg, f));
    double anti = 0;
    for (int dir = 0; dir < 2; ++dir)
        for (int at : {1, 3}) {
            auto lg = restrict_geometry(*g, torus_loop(dir, at));
            auto rho = random_index_map(lg->cover(), 7);
            anti = std::max(anti, circ(hol(discretize(*fg, lg, 8).cochain, rho) + hol(discretize(*gf, lg, 8).cochain, rho), 0.0));
        }
    auto rho = random_index_map(g->cover(), 8);
    const double c = 0.1;
    auto h = AngleFunction::constant(Angle::from_radians(c));
    double constant = circ(hol(discretize(*triple_product(f, gg, h), g, 8).cochain, rho), c * w1 * w2);
    double assoc = 0;
    for (const auto& third : {h, AngleFunction::winding(1, 0), AngleFunction::winding(1, 1)}) {
        double left = hol(discretize(*to_presentation(cup_product(cup_product(f, gg), third)), g, 8).cochain, rho);
        double triple = hol(discretize(*triple_product(f, gg, third), g, 8).cochain, rho);
        assoc = std::max(assoc, circ(left, triple));
    }
    return {anti <= 1e-6 && constant <= 1e-9 && assoc <= 1e-6,
            "4 loops anticommutativity " + fmt("%.3g", anti) + ", c*w1*w2 " + fmt("%.3g", constant) + ", association " +
                fmt("%.3g", assoc)};
}

// 9 ------------------------------------------------------------------------
Outcome validation()
{
    struct Req {
        std::string name;
        Params params;
    };
    std::vector<Req> fixtures{{"flat_circle", {{"theta", "1.0"}}},   {"winding_function", {{"w", "2"}}},
                              {"monopole", {{"k", "-1"}}},           {"monopole", {{"k", "2"}}},
                              {"torsion", {{"p", "1"}, {"w", "0.3"}}}, {"torsion", {{"p", "2"}, {"w", "0.3"}}},
                              {"torsion", {{"p", "3"}, {"w", "0.3"}}}, {"zero", {{"p", "1"}}},
                              {"zero", {{"p", "2"}}},                 {"zero", {{"p", "3"}}}};
    int checked = 0, failed = 0;
    double worst_discrete = 0;
    for (const auto& r : fixtures) {
        auto fx = generate_fixture(r.name, r.params);
        auto pres = to_presentation(fx.value);
        auto d = discretize(*pres, make_geometry(fx.geometry), 8);
        ++checked;
        if (!d.report.passed() || d.report.worst() > d.tolerance) ++failed;
        if (pres->discrete()) worst_discrete = std::max(worst_discrete, d.report.worst());
    }
    for (int p = 1; p <= 3; ++p) {
        auto c = discretize_exact(*torsion_class(Angle::from_turns(Rational(1, 7)), p), closed_geometry(p));
        ++checked;
        if (!validate_cocycle(c, 0.0).passed()) ++failed;
    }
    auto ann = make_geometry("annulus");
    auto st = make_geometry("solid-torus");
    for (const auto& c : {annulus_class(ann), solid_torus_class(st)}) {
        ++checked;
        if (!validate_cocycle(c, 1e-9).passed()) ++failed;
    }

    // Corrupt one vertex entry of the degree 2 torsion class.
    auto g = make_geometry("torus2-4chart");
    auto c = discretize(*torsion_class(Angle::from_radians(0.3), 2), g, 8).cochain;
    const auto& K = g->complex();
    const auto& C = g->cover();
    int v = -1;
    for (int i = 0; i < static_cast<int>(K.count(0)) && v < 0; ++i)
        if (C.admissible(0, i).size() >= 4) v = i;
    std::vector<int> I(C.admissible(0, v).begin(), C.admissible(0, v).begin() + 3);
    const double eps = 1e-4;
    auto bad = c;
    bad.at(0, v, I) += eps;
    using Key = std::tuple<std::string, int, int, std::vector<int>>;
    std::set<Key> expect, got;
    for (int gamma : C.admissible(0, v))
        if (std::find(I.begin(), I.end(), gamma) == I.end()) {
            auto J = I;
            J.push_back(gamma);
            std::sort(J.begin(), J.end());
            expect.insert({"integrality", 0, v, J});
        }
    for (int e : K.cofaces(0, v))
        if (std::all_of(I.begin(), I.end(), [&](int a) { return C.admits(1, e, a); })) expect.insert({"level", 1, e, I});
    auto rep = validate_cocycle(bad, 1e-9);
    bool residuals = true;
    for (const auto& f : rep.failures) {
        got.insert({f.condition, f.k, f.simplex, f.indices});
        residuals = residuals && std::fabs(f.residual - (f.condition == "integrality" ? eps / kTwoPi : eps)) < 1e-9;
    }
    bool localized = got == expect && residuals;
    return {failed == 0 && worst_discrete <= 1e-9 && localized,
            std::to_string(checked - failed) + "/" + std::to_string(checked) + " fixtures valid, discrete worst " +
                fmt("%.3g", worst_discrete) + ", corruption " + (localized ? "localized" : "not localized") + " (" +
                std::to_string(got.size()) + " failures)"};
}

// 10 -----------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism()
{
    namespace fs = std::filesystem;
    auto root = fs::temp_directory_path() / ("deligne_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::vector<std::vector<std::string>> runs;
    auto files = [&](const std::string& d) {
        return std::vector<std::string>{(root / d / "complex.json").string(), (root / d / "cover.json").string(),
                                        (root / d / "cochain.json").string()};
    };
    auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    int compared = 0, differing = 0, failing = 0;
    for (int round = 0; round < 2; ++round) {
        std::string dir = "r" + std::to_string(round);
        std::vector<std::vector<std::string>> cmds{
            {"fixture", "monopole", "--params", "k=2", "--out-dir", (root / dir / "m").string()},
            {"cup", "--lhs", "winding:w=1,coord=0", "--rhs", "linear:c=0.7,coord=1", "--third", "winding:w=2,coord=0",
             "--association", "explicit", "--geometry", "annulus", "--out-dir", (root / dir / "a").string()},
            {"--arithmetic", "rational", "fixture", "torsion", "--params", "p=3,w=2/7", "--out-dir",
             (root / dir / "t").string()},
            with({"--seed", "17", "curvature", "--index-map", "random"}, files(dir + "/m")),
            with(with({"--seed", "17", "transgress"}, files(dir + "/a")), {"--boundary-formula"}),
            with({"--seed", "17", "--arithmetic", "rational", "holonomy", "--index-map", "random"}, files(dir + "/t")),
            with({"--seed", "17", "validate"}, files(dir + "/a")),
        };
        std::vector<std::string> outs;
        for (const auto& cmd : cmds) {
            std::ostringstream out, err;
            if (run(cmd, out, err) != 0) ++failing;
            outs.push_back(out.str());
        }
        runs.push_back(outs);
    }
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
        ++compared;
        std::string a = runs[0][i], b = runs[1][i];
        // Reports of file-writing commands name their own directory.
        for (auto* s : {&a, &b})
            for (const char* d : {"/r0/", "/r1/"})
                for (auto pos = s->find(d); pos != std::string::npos; pos = s->find(d)) s->replace(pos, 4, "/r/");
        if (a != b) ++differing;
    }
    for (const char* sub : {"m", "a", "t"})
        for (const char* f : {"complex.json", "cover.json", "cochain.json"}) {
            ++compared;
            if (slurp(root / "r0" / sub / f) != slurp(root / "r1" / sub / f)) ++differing;
        }
    fs::remove_all(root);
    return {differing == 0 && failing == 0, std::to_string(compared) + " reports and files compared, " +
                                                std::to_string(differing) + " differ, " + std::to_string(failing) +
                                                " commands failed"};
}

}  // namespace

int main()
{
    struct Entry {
        const char* title;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> criteria{
        {"index-map independence", index_map_independence},
        {"triangulation independence", triangulation_independence},
        {"general and boundary transitions agree", lemma_oracle},
        {"interior cancellation", interior_cancellation},
        {"gauge invariance", gauge_invariance},
        {"gluing and multiplicativity", gluing},
        {"integrality", integrality},
        {"cup products", cup_products},
        {"cocycle validation", validation},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
