#include "deligne/errors.hpp"
#include "support.hpp"

using namespace deligne;
using namespace testsupport;

namespace {

void check_monotone(const CoveredComplex& C)
{
    const auto& K = C.complex();
    for (int k = 1; k <= K.dim(); ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            for (const auto& f : K.facets(k, i))
                for (int a : C.admissible(k, i)) CHECK(C.admits(k - 1, f.index, a));
    for (int k = 0; k <= K.dim(); ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i) CHECK(!C.admissible(k, i).empty());
}

CoveredComplex three_arc_circle()
{
    auto K = circle(3);
    std::vector<std::vector<int>> tops(3);
    for (int e = 0; e < 3; ++e) {
        // Edge {e, e+1} admits arc e.
        auto v = K.vertices(1, e);
        int arc = (v[0] == 0 && v[1] == 2) ? 2 : v[0];
        tops[e] = {arc};
    }
    return attach_cover(K, 3, tops);
}

}  // namespace

TEST_CASE("attach_cover union rule")
{
    auto C = three_arc_circle();
    check_monotone(C);
    for (int v = 0; v < 3; ++v) CHECK(C.admissible(0, v).size() == 2);
    // Vertex 0 touches arcs 0 and 2.
    CHECK(C.admissible(0, 0) == std::vector<int>{0, 2});

    auto oct = octahedron();
    std::vector<std::vector<int>> hemis;
    for (int t = 0; t < static_cast<int>(oct.num_top()); ++t) {
        const auto& v = oct.vertices(2, t);
        hemis.push_back({std::find(v.begin(), v.end(), 4) != v.end() ? 0 : 1});
    }
    auto H = attach_cover(oct, 2, hemis);
    check_monotone(H);
    for (int e = 0; e < static_cast<int>(oct.count(1)); ++e) {
        const auto& v = oct.vertices(1, e);
        bool equator = v[1] < 4;
        CHECK((H.admissible(1, e).size() == 2) == equator);
    }
    CHECK(H.admissible(0, *oct.find({4})) == std::vector<int>{0});
    CHECK(H.admissible(0, *oct.find({0})) == std::vector<int>{0, 1});

    CHECK_THROWS_AS(attach_cover(circle(3), 2, {{0}, {}, {1}}), InvalidInput);
    CHECK_THROWS_AS(attach_cover(circle(3), 2, {{0}, {2}, {1}}), InvalidInput);
    CHECK_THROWS_AS(attach_cover(circle(3), 2, {{0}, {1}}), InvalidInput);
}

TEST_CASE("default index map")
{
    auto C = three_arc_circle();
    auto rho = default_index_map(C);
    CHECK(rho(0, 0) == 0);
    CHECK(rho(0, 1) == 0);
    CHECK(rho(0, 2) == 1);
    for (int e = 0; e < 3; ++e) CHECK(rho(1, e) == C.admissible(1, e)[0]);

    auto one = single_chart(octahedron());
    auto r1 = default_index_map(*one);
    for (const auto& level : r1.data())
        for (int a : level) CHECK(a == 0);

    auto g = make_geometry("torus2-4chart");
    auto sd = barycentric_subdivide(g->complex());
    auto S = subdivide_cover(g->cover(), sd);
    check_monotone(S);
    auto rs = default_index_map(S);
    auto rp = default_index_map(g->cover());
    for (int k = 0; k <= 2; ++k)
        for (int i = 0; i < static_cast<int>(sd.complex.count(k)); ++i) {
            auto par = sd.carrier[k][i];
            CHECK(rs(k, i) == rp(par.dim, par.index));
        }
}

TEST_CASE("random index maps")
{
    auto g = make_geometry("torus3-8chart");
    const auto& C = g->cover();
    auto a = random_index_map(C, 42);
    auto b = random_index_map(C, 42);
    CHECK(a == b);
    CHECK_FALSE(a == random_index_map(C, 43));
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK_NOTHROW(check_index_map(C, random_index_map(C, seed)));

    auto one = single_chart(g->complex());
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(random_index_map(*one, seed) == default_index_map(*one));

    // Frozen boundary: pinned values survive, the interior still varies.
    auto ann = make_geometry("annulus");
    const auto& A = ann->cover();
    const auto& K = A.complex();
    auto base = random_index_map(A, 7);
    std::map<SimplexId, int> frozen;
    for (int k = 0; k <= 2; ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            if (K.on_boundary(k, i)) frozen[{k, i}] = base(k, i);
    bool varied = false;
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        auto r = random_index_map(A, seed, frozen);
        for (auto [id, v] : frozen) CHECK(r(id.dim, id.index) == v);
        auto q = random_interior_perturbation(A, base, seed);
        for (auto [id, v] : frozen) CHECK(q(id.dim, id.index) == v);
        varied = varied || !(q == base);
    }
    CHECK(varied);

    std::map<SimplexId, int> bad{{{1, 0}, 99}};
    CHECK_THROWS_AS(random_index_map(A, 1, bad), InvalidInput);
    auto broken = base;
    broken.at(2, 0) = 99;
    CHECK_THROWS_AS(check_index_map(A, broken), InvalidInput);
}

TEST_CASE("restriction to the boundary")
{
    auto ann = make_geometry("annulus");
    auto rho = random_index_map(ann->cover(), 3);
    auto [B, rb] = restrict_cover_to_boundary(ann->cover(), rho);
    CHECK(B.complex().dim() == 1);
    CHECK(B.complex().num_top() == 16);
    CHECK(B.num_sets() == 4);
    check_monotone(B);
    for (int k = 0; k <= 1; ++k)
        for (int i = 0; i < static_cast<int>(B.complex().count(k)); ++i) {
            int j = ann->complex().index_of(B.complex().vertices(k, i));
            CHECK(rb(k, i) == rho(k, j));
            CHECK(B.admissible(k, i) == ann->cover().admissible(k, j));
        }

    auto tet = SimplicialComplex::build({{0, 1, 2, 3}});
    auto T = single_chart(tet);
    auto [S, rs] = restrict_cover_to_boundary(*T, default_index_map(*T));
    CHECK(S.complex().num_top() == 4);
    CHECK(S.complex().manifold() == ManifoldFlag::closed_oriented);
    for (const auto& level : rs.data())
        for (int a : level) CHECK(a == 0);

    auto torus = make_geometry("torus2-4chart");
    auto [E, re] = restrict_cover_to_boundary(torus->cover(), default_index_map(torus->cover()));
    CHECK(E.complex().empty());
}
