#include <map>

#include "deligne/errors.hpp"
#include "support.hpp"

using namespace deligne;
using namespace testsupport;

namespace {

void check_boundary_of_boundary(const SimplicialComplex& K)
{
    for (int k = 2; k <= K.dim(); ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i) {
            std::map<int, int> acc;
            for (const auto& f : K.facets(k, i))
                for (const auto& g : K.facets(k - 1, f.index)) acc[g.index] += f.incidence * g.incidence;
            for (auto [idx, v] : acc) CHECK(v == 0);
        }
}

void check_incidences(const SimplicialComplex& K)
{
    for (int k = 1; k <= K.dim(); ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            for (const auto& f : K.facets(k, i)) {
                CHECK(f.incidence == oracle_incidence(K, k, i, f.index));
                CHECK(K.incidence({k, i}, {k - 1, f.index}) == f.incidence);
            }
}

void check_closed_cycle(const SimplicialComplex& K)
{
    const int p = K.dim();
    std::map<int, int> acc;
    for (int i = 0; i < static_cast<int>(K.count(p)); ++i)
        for (const auto& f : K.facets(p, i)) acc[f.index] += f.incidence;
    for (auto [idx, v] : acc) CHECK(v == 0);
}

std::size_t chains_from_tops(const SimplicialComplex& K, int q)
{
    // Number of descending chains: each step picks one of k+1 facets.
    std::size_t per = 1;
    for (int k = K.dim(); k > q; --k) per *= static_cast<std::size_t>(k + 1);
    return per * K.num_top();
}

}  // namespace

TEST_CASE("faces, incidences and boundary of boundary")
{
    for (const auto& name : geometry_names()) {
        auto K_geo = make_geometry(name);
        const auto& K = K_geo->complex();
        CAPTURE(name);
        check_boundary_of_boundary(K);
        check_incidences(K);
        if (K.manifold() == ManifoldFlag::closed_oriented) check_closed_cycle(K);
    }
    auto K = octahedron();
    CHECK(K.manifold() == ManifoldFlag::closed_oriented);
    CHECK(K.count(0) == 6);
    CHECK(K.count(1) == 12);
    CHECK(K.euler_characteristic() == 2);
}

TEST_CASE("manifold flags and build errors")
{
    CHECK(circle(3).manifold() == ManifoldFlag::closed_oriented);
    CHECK(disc(9, {0, 1, 2}).manifold() == ManifoldFlag::with_boundary);
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 1}, {1, 2}}, ClosurePolicy::closed_oriented), InvalidInput);
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 0}}), InvalidInput);
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 1}, {0, 1, 2}}), InvalidInput);
    // Incoherently oriented circle.
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 1}, {1, 2}, {0, 2}}, ClosurePolicy::closed_oriented), InvalidInput);
}

TEST_CASE("flag enumeration")
{
    auto tri = circle(3);
    auto flags = enumerate_flags(tri, 0);
    CHECK(flags.size() == 6);
    auto oct = octahedron();
    CHECK(enumerate_flags(oct, 1).size() == 24);
    CHECK(enumerate_flags(oct, 0).size() == 48);
    CHECK_THROWS_AS(enumerate_flags(oct, 3), InvalidInput);
    CHECK_THROWS_AS(enumerate_flags(oct, -1), InvalidInput);

    for (const auto& name : {"torus2-4chart", "torus3-8chart", "solid-torus"}) {
        auto K_geo = make_geometry(name);
        const auto& K = K_geo->complex();
        for (int q = 0; q <= K.dim(); ++q) {
            auto fl = enumerate_flags(K, q);
            CHECK(fl.size() == chains_from_tops(K, q));
            for (const auto& f : fl) {
                int sign = 1;
                for (std::size_t j = 0; j + 1 < f.chain.size(); ++j) {
                    int k = K.dim() - static_cast<int>(j);
                    sign *= oracle_incidence(K, k, f.chain[j], f.chain[j + 1]);
                }
                CHECK(sign == f.sign);
            }
            // Lexicographic order of chains.
            for (std::size_t j = 1; j < fl.size(); ++j) CHECK(fl[j - 1].chain < fl[j].chain);
        }
    }
}

TEST_CASE("barycentric subdivision")
{
    auto edge = SimplicialComplex::build({{0, 1}});
    auto sd = barycentric_subdivide(edge);
    CHECK(sd.complex.num_top() == 2);
    CHECK(sd.complex.count(0) == 3);
    // The barycenter is the common vertex, entered by one edge and left by the other.
    const auto& Ks = sd.complex;
    int b = -1;
    for (auto [v, s] : sd.barycenter_of)
        if (s.dim == 1) b = v;
    REQUIRE(b >= 0);
    int sum = 0;
    for (int i = 0; i < 2; ++i)
        for (const auto& f : Ks.facets(1, i))
            if (Ks.vertex_label(f.index) == b) sum += f.incidence;
    CHECK(sum == 0);

    auto tri = SimplicialComplex::build({{0, 1, 2}});
    auto sdt = barycentric_subdivide(tri);
    CHECK(sdt.complex.num_top() == 6);
    CHECK(sdt.complex.euler_characteristic() == tri.euler_characteristic());
    CHECK(sdt.complex.manifold() == ManifoldFlag::with_boundary);

    auto oct = barycentric_subdivide(octahedron());
    CHECK(oct.complex.num_top() == 48);
    CHECK(oct.complex.manifold() == ManifoldFlag::closed_oriented);
    CHECK(oct.complex.euler_characteristic() == 2);

    for (const auto& name : {"torus2-4chart", "annulus", "solid-torus"}) {
        auto K_geo = make_geometry(name);
        const auto& K = K_geo->complex();
        auto s = barycentric_subdivide(K);
        CHECK(s.complex.euler_characteristic() == K.euler_characteristic());
        CHECK(s.complex.manifold() == K.manifold());
        CHECK(s.complex.num_top() == K.num_top() * (K.dim() == 2 ? 6 : 24));
        check_boundary_of_boundary(s.complex);
        // Carriers contain their children.
        for (int k = 0; k <= s.complex.dim(); ++k)
            for (int i = 0; i < static_cast<int>(s.complex.count(k)); ++i) CHECK(s.carrier[k][i].dim >= k);
    }
}

TEST_CASE("boundary restriction")
{
    auto tet = SimplicialComplex::build({{0, 1, 2, 3}});
    auto b = boundary_restrict(tet);
    CHECK(b.dim() == 2);
    CHECK(b.num_top() == 4);
    CHECK(b.manifold() == ManifoldFlag::closed_oriented);

    auto ann_geo = make_geometry("annulus");
        const auto& ann = ann_geo->complex();
    auto ba = boundary_restrict(ann);
    CHECK(ba.dim() == 1);
    CHECK(ba.num_top() == 16);
    CHECK(ba.manifold() == ManifoldFlag::closed_oriented);
    // Inner circle runs against the outer one: their winding around the axis is opposite.
    std::vector<Vertex> labels;
    int inner_turn = 0, outer_turn = 0;
    for (const auto& t : ba.oriented_tops()) {
        int a = t[0] % 8, c = t[1] % 8;
        int step = ((c - a + 8) % 8 == 1) ? 1 : -1;
        (t[0] < 8 ? inner_turn : outer_turn) += step;
    }
    CHECK(inner_turn == -outer_turn);
    CHECK(std::abs(inner_turn) == 8);

    auto torus = make_geometry("torus2-4chart");
    CHECK(boundary_restrict(torus->complex()).empty());
}

TEST_CASE("gluing")
{
    // Two discs with opposite orientation on the shared circle make a sphere.
    auto d1 = disc(10, {0, 1, 2, 3});
    auto d2 = disc(20, {0, 1, 2, 3}, true);
    auto g = glue_along_boundary(d1, d2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(g.complex.manifold() == ManifoldFlag::closed_oriented);
    CHECK(g.complex.euler_characteristic() == 2);

    // Same orientation on both sides is refused.
    CHECK_THROWS_AS(glue_along_boundary(d1, disc(20, {0, 1, 2, 3}), {{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                    InvalidInput);
    // Interior vertex in the matching.
    CHECK_THROWS_AS(glue_along_boundary(d1, d2, {{20, 0}}), InvalidInput);

    // Two annuli sharing one circle: bands A->B and B->C.
    auto a1 = band({0, 1, 2}, {3, 4, 5});
    auto a2 = band({13, 14, 15}, {6, 7, 8});
    auto ga = glue_along_boundary(a1, a2, {{13, 3}, {14, 4}, {15, 5}});
    CHECK(ga.complex.manifold() == ManifoldFlag::with_boundary);
    CHECK(ga.complex.euler_characteristic() == 0);
    CHECK(boundary_restrict(ga.complex).num_top() == 6);
    CHECK(ga.k2_vertex_map.at(6) == 6);

    // A solid torus capped by the cone over its boundary torus closes up.
    auto st_geo = make_geometry("solid-torus");
    const auto& st = st_geo->complex();
    auto bst = boundary_restrict(st);
    std::vector<VertexTuple> cone;
    std::map<Vertex, Vertex> id;
    for (auto t : bst.oriented_tops()) {
        std::swap(t[0], t[1]);
        t.insert(t.begin(), 1000);
        cone.push_back(t);
    }
    for (std::size_t i = 0; i < bst.count(0); ++i) id[bst.vertex_label(static_cast<int>(i))] = bst.vertex_label(static_cast<int>(i));
    auto capped = glue_along_boundary(st, SimplicialComplex::build(cone, ClosurePolicy::with_boundary), id);
    CHECK(capped.complex.manifold() == ManifoldFlag::closed_oriented);
}

TEST_CASE("disjoint union, relabel and reversal")
{
    auto [u, off] = disjoint_union(circle(3), circle(4));
    CHECK(u.num_top() == 7);
    CHECK(off >= 3);
    CHECK(u.manifold() == ManifoldFlag::closed_oriented);

    auto K = octahedron();
    auto R = reverse_orientation(K);
    CHECK(R.manifold() == ManifoldFlag::closed_oriented);
    for (int i = 0; i < static_cast<int>(K.num_top()); ++i) CHECK(R.orientation(2, i) == -K.orientation(2, i));
    CHECK(reverse_orientation(R).oriented_tops() == K.oriented_tops());

    auto L = relabel(circle(3), {{0, 10}, {1, 11}, {2, 12}});
    CHECK(L.find({10, 11}).has_value());
    CHECK(L.manifold() == ManifoldFlag::closed_oriented);
}
