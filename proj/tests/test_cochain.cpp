#include <set>
#include <tuple>

#include "deligne/errors.hpp"
#include "deligne/holonomy.hpp"
#include "support.hpp"

using namespace deligne;
using namespace testsupport;

namespace {

Cochain flat_circle(double theta)
{
    auto g = make_geometry("circle-2arc");
    return discretize(*line_presentation(flat_circle_line(Angle::from_radians(theta))), g, 8).cochain;
}

Cochain cup_torus(int w1, int w2)
{
    auto g = make_geometry("torus2-4chart");
    auto L = cup_product(AngleFunction::winding(w1, 0), AngleFunction::winding(w2, 1));
    return discretize(*to_presentation(L), g, 8).cochain;
}

template <class S>
double max_level_residual(const BasicCochain<S>& c)
{
    return validate_cocycle(c, 1e-9).worst();
}

using FailureKey = std::tuple<std::string, int, int, std::vector<int>>;

}  // namespace

TEST_CASE("build_cochain canonicalization")
{
    auto g = make_geometry("circle-2arc");
    auto base = g->covered;
    Cochain zero(base, 1);
    CHECK(build_cochain<double>(base, 1, {}) == zero);

    // Find a vertex admitting both arcs.
    int v = -1;
    for (int i = 0; i < static_cast<int>(base->complex().count(0)); ++i)
        if (base->admissible(0, i).size() == 2) v = i;
    REQUIRE(v >= 0);
    auto a = build_cochain<double>(base, 1, {{0, v, {0, 1}, 0.75}});
    auto b = build_cochain<double>(base, 1, {{0, v, {1, 0}, -0.75}});
    CHECK(a == b);
    std::vector<int> rep{0, 0};
    CHECK(a.eval(0, v, rep) == 0.0);
    std::vector<int> rev{1, 0};
    CHECK(a.eval(0, v, rev) == -0.75);

    CHECK_THROWS_AS(build_cochain<double>(base, 1, {{0, v, {0, 5}, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(build_cochain<double>(base, 1, {{0, v, {0, 1}, 1.0}, {0, v, {1, 0}, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(build_cochain<double>(base, 1, {{0, v, {0, 0}, 1.0}}), InvalidInput);
}

TEST_CASE("antisymmetric evaluation")
{
    auto g = make_geometry("torus3-8chart");
    auto c = random_cochain<double>(g->covered, 3, 11);
    const auto& K = g->complex();
    for (int k = 0; k <= 3; ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); i += 3)
            c.for_each_entry(k, i, [&](std::span<const int> I, double v) {
                std::vector<int> w(I.begin(), I.end());
                do {
                    CHECK(c.eval(k, i, w) == permutation_sign(w) * v);
                } while (std::next_permutation(w.begin(), w.end()));
                if (w.size() >= 2) {
                    w[1] = w[0];
                    CHECK(c.eval(k, i, w) == 0.0);
                }
            });
}

TEST_CASE("cech delta and discrete d")
{
    auto g = make_geometry("torus2-4chart");
    auto base = g->covered;
    const auto& K = g->complex();

    // Index-constant C^0 has zero delta on pairs.
    std::vector<Entry<double>> e;
    for (int v = 0; v < static_cast<int>(K.count(0)); ++v)
        for (int a : base->admissible(0, v)) e.push_back({0, v, {a}, 0.4 + v});
    auto x = build_cochain<double>(base, 0, e);
    for (int v = 0; v < static_cast<int>(K.count(0)); ++v)
        for (const auto& I : subsets(base->admissible(0, v), 2)) CHECK(cech_delta(x, 0, v, I) == 0.0);

    // C^0(v, (a)) = x_a gives delta = x_b - x_a.
    e.clear();
    for (int v = 0; v < static_cast<int>(K.count(0)); ++v)
        for (int a : base->admissible(0, v)) e.push_back({0, v, {a}, 0.1 * a * a});
    auto y = build_cochain<double>(base, 0, e);
    for (int v = 0; v < static_cast<int>(K.count(0)); ++v)
        for (const auto& I : subsets(base->admissible(0, v), 2))
            CHECK(cech_delta(y, 0, v, I) == doctest::Approx(0.1 * I[1] * I[1] - 0.1 * I[0] * I[0]));

    // Edge rule: discrete_d(theta)(v0 v1) = theta(v1) - theta(v0) in stored orientation.
    for (int ed = 0; ed < static_cast<int>(K.count(1)); ++ed) {
        auto o = K.oriented(1, ed);
        int v0 = K.index_of({o[0]}), v1 = K.index_of({o[1]});
        for (int a : base->admissible(1, ed)) {
            std::vector<int> I{a};
            CHECK(discrete_d(y, 1, ed, I) == doctest::Approx(y.eval(0, v1, I) - y.eval(0, v0, I)));
        }
    }

    // Telescoping around a closed loop of edges.
    auto loop = circle(5);
    auto one = single_chart(loop);
    std::vector<Entry<double>> le;
    for (int v = 0; v < 5; ++v) le.push_back({0, v, {0}, 1.0 + v * v});
    auto lc = build_cochain<double>(one, 0, le);
    double sum = 0;
    std::vector<int> zero_idx{0};
    for (int ed = 0; ed < 5; ++ed) sum += discrete_d(lc, 1, ed, zero_idx);
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-15));

    // delta delta = 0 and d d = 0 on random data, exactly in rational arithmetic.
    auto r = random_cochain<Rational>(base, 2, 5);
    for (int k = 0; k <= 2; ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            for (const auto& I : subsets(base->admissible(k, i), 2 - k + 3))
                CHECK(alternating(I, [&](const std::vector<int>& J) { return cech_delta(r, k, i, J); }) == 0);
    for (int t = 0; t < static_cast<int>(K.count(2)); ++t)
        for (const auto& I : subsets(base->admissible(2, t), 3)) {
            Rational s = 0;
            for (const auto& f : K.facets(2, t)) s += f.incidence * discrete_d(r, 1, f.index, I);
            CHECK(s == 0);
        }
}

TEST_CASE("cocycle validation")
{
    auto g = make_geometry("torus2-4chart");
    CocycleReport z = validate_cocycle(Cochain(g->covered, 2), 1e-12);
    CHECK(z.passed());
    CHECK(z.worst() == 0.0);
    CHECK(z.integrality_worst == 0.0);

    auto flat = flat_circle(0.3);
    CHECK(validate_cocycle(flat, 1e-12).passed());

    // A random cochain is no cocycle.
    CHECK_FALSE(validate_cocycle(random_cochain<double>(g->covered, 2, 1), 1e-9).passed());
}

TEST_CASE("corruption is localized")
{
    auto g = make_geometry("torus2-4chart");
    auto pres = triple_product(AngleFunction::winding(1, 0), AngleFunction::winding(1, 1),
                               AngleFunction::constant(Angle::from_radians(0.3)));
    Cochain c = discretize(*pres, g, 8).cochain;
    const auto& K = g->complex();
    const auto& C = g->cover();
    // Perturb C^1 on an edge admitting at least three charts.
    int edge = -1;
    for (int i = 0; i < static_cast<int>(K.count(1)) && edge < 0; ++i)
        if (C.admissible(1, i).size() >= 3) edge = i;
    REQUIRE(edge >= 0);
    std::vector<int> ab{C.admissible(1, edge)[0], C.admissible(1, edge)[1]};
    const double eps = 1e-3;
    Cochain bad = c;
    bad.at(1, edge, ab) += eps;

    std::set<FailureKey> expect;
    for (int gamma : C.admissible(1, edge))
        if (gamma != ab[0] && gamma != ab[1]) {
            std::vector<int> I{ab[0], ab[1], gamma};
            std::sort(I.begin(), I.end());
            expect.insert({"level", 1, edge, I});
        }
    for (int t : K.cofaces(1, edge))
        if (C.admits(2, t, ab[0]) && C.admits(2, t, ab[1])) expect.insert({"level", 2, t, ab});

    auto rep = validate_cocycle(bad, 1e-9);
    std::set<FailureKey> got;
    for (const auto& f : rep.failures) {
        got.insert({f.condition, f.k, f.simplex, f.indices});
        CHECK(f.residual == doctest::Approx(eps).epsilon(1e-9));
    }
    CHECK(got == expect);
}

TEST_CASE("tensor, dual and scale")
{
    auto g = make_geometry("torus2-4chart");
    auto c1 = cup_torus(1, 2);
    auto c2 = cup_torus(3, 1);
    Cochain zero(c1.base_ptr(), 1);
    CHECK(tensor(c1, zero) == c1);
    CHECK(tensor(c1, dual(c1)) == zero);
    CHECK(dual(zero) == zero);
    CHECK(dual(dual(c1)) == c1);
    CHECK(tensor(c1, c2) == tensor(c2, c1));
    auto c3 = exact_shift(c1, random_cochain<double>(c1.base_ptr(), 0, 3));
    auto lhs = tensor(tensor(c1, c2), c3), rhs = tensor(c1, tensor(c2, c3));
    const auto& K = g->complex();
    for (int k = 0; k <= 1; ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            lhs.for_each_entry(k, i, [&](std::span<const int> I, double v) {
                CHECK(v == doctest::Approx(rhs.at(k, i, I)).epsilon(1e-14));
            });
    CHECK_THROWS_AS(tensor(c1, Cochain(c1.base_ptr(), 2)), InvalidInput);

    // Holonomy of tensor and dual on loops of the torus, via the flat circle.
    auto f1 = flat_circle(0.4), f2 = flat_circle(2.9);
    auto rho = default_index_map(f1.base());
    double h1 = holonomy(f1, rho).radians(), h2 = holonomy(f2, rho).radians();
    CHECK(circ(holonomy(tensor(f1, f2), rho).radians(), h1 + h2) < 1e-12);
    CHECK(circ(holonomy(dual(f1), rho).radians(), -h1) < 1e-12);
    CHECK(circ(holonomy(certify(scale(f1, 2.0), 1e-12), rho).radians(), 2 * h1) < 1e-12);
}

TEST_CASE("exact shifts")
{
    auto g = make_geometry("torus2-4chart");
    auto c = cup_torus(2, 1);
    auto base = c.base_ptr();
    Cochain bz(base, 0);
    CHECK(exact_shift(c, bz) == c);
    CHECK_THROWS_AS(exact_shift(c, Cochain(base, 1)), InvalidInput);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto b1 = random_cochain<double>(base, 0, seed);
        auto b2 = random_cochain<double>(base, 0, seed + 100);
        auto s = exact_shift(c, b1);
        CHECK(validate_cocycle(s, 1e-9).passed());
        CHECK(s.flagged_cocycle() == c.flagged_cocycle());
        auto both = exact_shift(c, tensor(b1, b2));
        auto seq = exact_shift(exact_shift(c, b1), b2);
        for (int k = 0; k <= 1; ++k)
            for (int i = 0; i < static_cast<int>(g->complex().count(k)); ++i)
                both.for_each_entry(k, i, [&](std::span<const int> I, double v) {
                    CHECK(std::fabs(v - seq.at(k, i, I)) < 1e-12);
                });
    }

    // Exact arithmetic: degree 2 shifts of the torsion class stay cocycles exactly.
    auto tor = discretize_exact(*torsion_class(Angle::from_turns(Rational(2, 5)), 2), g);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto s = exact_shift(tor, random_cochain<Rational>(tor.base_ptr(), 1, seed));
        auto rep = validate_cocycle(s, 0.0);
        CHECK(rep.passed());
        CHECK(rep.worst() == 0.0);
        auto rho = random_index_map(g->cover(), seed);
        CHECK(holonomy(certify(s, 0.0), rho).reduced == holonomy(tor, rho).reduced);
    }
}

TEST_CASE("trivializations")
{
    auto g = make_geometry("torus2-4chart");
    auto b = random_cochain<double>(g->covered, 1, 9);
    auto c = certify(exact_shift(Cochain(g->covered, 2), b), 1e-9);
    auto rep = verify_trivialization(c, b, 1e-9);
    CHECK(rep.trivial);
    for (double r : rep.top_residual) CHECK(std::fabs(r) < 1e-12);

    // Flat circle: a b solving level 0 leaves top residuals summing to the holonomy.
    auto flat = flat_circle(1.3);
    const auto& K = flat.base().complex();
    std::vector<Entry<double>> e;
    for (int v = 0; v < static_cast<int>(K.count(0)); ++v) {
        const auto& adm = flat.base().admissible(0, v);
        for (std::size_t j = 1; j < adm.size(); ++j) {
            std::vector<int> I{adm[0], adm[j]};
            e.push_back({0, v, {adm[j]}, flat.at(0, v, I)});
        }
    }
    auto bf = build_cochain<double>(flat.base_ptr(), 0, e);
    auto tr = verify_trivialization(flat, bf, 1e-9);
    CHECK(tr.level_worst[0] < 1e-12);
    CHECK(circ(tr.residual_total, 1.3) < 1e-12);
    CHECK_FALSE(tr.trivial);

    // Torsion class against b = 0 fails at level 0.
    auto tor = discretize_exact(*torsion_class(Angle::from_turns(Rational(1, 3)), 1), make_geometry("circle-3arc"));
    auto tt = verify_trivialization(tor, RationalCochain(tor.base_ptr(), 0), 0.0);
    CHECK_FALSE(tt.trivial);
    CHECK(tt.level_worst[0] > 0);
}

TEST_CASE("chern cocycle")
{
    auto g = make_geometry("sphere-octahedron-5chart");
    auto zero = certify(Cochain(g->covered, 1), 1e-12);
    auto nz = chern_cocycle(zero, 1e-9);
    for (const auto& per : nz.values)
        for (const auto& [I, n] : per) CHECK(n == 0);

    for (long k : {-2, 1, 3}) {
        auto c = discretize(*line_presentation(monopole_line(k)), g, 8).cochain;
        auto n = chern_cocycle(c, 1e-9);
        // delta n = 0 at every vertex.
        const auto& K = g->complex();
        for (int v = 0; v < static_cast<int>(K.count(0)); ++v)
            for (const auto& I : subsets(g->cover().admissible(0, v), 4))
                CHECK(alternating(I, [&](const std::vector<int>& J) { return n.eval(v, J); }) == 0);
        // Pairing written out over flags of the octahedron.
        for (std::uint64_t seed : {0u, 4u}) {
            auto rho = random_index_map(g->cover(), seed);
            std::int64_t pair = 0;
            for (int t = 0; t < static_cast<int>(K.count(2)); ++t)
                for (const auto& e : K.facets(2, t))
                    for (const auto& v : K.facets(1, e.index)) {
                        std::vector<int> w{rho(2, t), rho(1, e.index), rho(0, v.index)};
                        pair += e.incidence * v.incidence * n.eval(v.index, w);
                    }
            CHECK(pair == k);
            CHECK(chern_pairing(n, g->cover(), rho) == k);
        }
        // Shifting by D(b) keeps the pairing.
        auto s = exact_shift(c, random_cochain<double>(c.base_ptr(), 0, 77));
        CHECK(chern_pairing(chern_cocycle(s, 1e-9), g->cover(), default_index_map(g->cover())) == k);
    }

    auto bad = random_cochain<double>(g->covered, 1, 2);
    CHECK_THROWS_AS(chern_cocycle(bad, 1e-9), ValidationFailure);
}
