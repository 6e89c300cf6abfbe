// Small complexes and hand-written reference evaluations shared by the unit tests.
#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "deligne/analytic.hpp"
#include "deligne/complex.hpp"
#include "deligne/cover.hpp"

namespace testsupport {

using namespace deligne;

inline SimplicialComplex circle(int n)
{
    std::vector<VertexTuple> tops;
    for (int i = 0; i < n; ++i) tops.push_back({i, (i + 1) % n});
    return SimplicialComplex::build(tops, ClosurePolicy::closed_oriented);
}

inline SimplicialComplex octahedron()
{
    std::vector<VertexTuple> tops;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                VertexTuple t{sx > 0 ? 0 : 1, sy > 0 ? 2 : 3, sz > 0 ? 4 : 5};
                if (sx * sy * sz < 0) std::swap(t[0], t[1]);
                tops.push_back(t);
            }
    return SimplicialComplex::build(tops, ClosurePolicy::closed_oriented);
}

/// Cone from center over the cycle ring[0] -> ring[1] -> ...; reversed flips every triangle.
inline SimplicialComplex disc(Vertex center, const std::vector<Vertex>& ring, bool reversed = false)
{
    std::vector<VertexTuple> tops;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        VertexTuple t{center, ring[i], ring[(i + 1) % n]};
        if (reversed) std::swap(t[1], t[2]);
        tops.push_back(t);
    }
    return SimplicialComplex::build(tops, ClosurePolicy::with_boundary);
}

/// Band between two parallel cycles of equal length.
inline SimplicialComplex band(const std::vector<Vertex>& inner, const std::vector<Vertex>& outer)
{
    std::vector<VertexTuple> tops;
    const std::size_t n = inner.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        tops.push_back({inner[i], inner[j], outer[j]});
        tops.push_back({inner[i], outer[j], outer[i]});
    }
    return SimplicialComplex::build(tops, ClosurePolicy::with_boundary);
}

/// Incidence recomputed from oriented vertex tuples: deleting entry j of the
/// oriented simplex gives (-1)^j times the face in that vertex order.
inline int oracle_incidence(const SimplicialComplex& K, int k, int i, int t)
{
    VertexTuple s = K.oriented(k, i);
    VertexTuple face = K.oriented(k - 1, t);
    for (int j = 0; j <= k; ++j) {
        VertexTuple f = s;
        f.erase(f.begin() + j);
        VertexTuple a = f, b = face;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) continue;
        // Relative sign of f against face: parity of f listed in face order.
        VertexTuple pos;
        for (Vertex v : f) pos.push_back(static_cast<int>(std::find(face.begin(), face.end(), v) - face.begin()));
        return ((j % 2) ? -1 : 1) * permutation_sign(pos);
    }
    return 0;
}

inline CoveredPtr share(CoveredComplex C) { return std::make_shared<const CoveredComplex>(std::move(C)); }

inline CoveredPtr single_chart(const SimplicialComplex& K)
{
    return share(attach_cover(K, 1, std::vector<std::vector<int>>(K.num_top(), std::vector<int>{0})));
}

inline double circ(double a, double b) { return circular_distance(a, b); }

}  // namespace testsupport

namespace testsupport {

/// Flag sum written out by recursion over facets.
template <class S>
S oracle_flag_sum(const BasicCochain<S>& c, const IndexMap& rho)
{
    const auto& K = c.base().complex();
    const int p = K.dim();
    S total = S(0);
    std::vector<int> word;
    std::function<void(int, int, int)> descend = [&](int k, int i, int sign) {
        word.push_back(rho(k, i));
        if (p - k <= c.degree()) total += S(sign) * c.eval(k, i, word);
        if (k > 0)
            for (const auto& f : K.facets(k, i)) descend(k - 1, f.index, sign * f.incidence);
        word.pop_back();
    };
    for (int t = 0; t < static_cast<int>(K.num_top()); ++t) descend(p, t, 1);
    return total;
}

/// Alternating sum over omitted positions.
template <class F>
auto alternating(const std::vector<int>& I, F&& value_at)
{
    decltype(value_at(I)) s{};
    for (std::size_t j = 0; j < I.size(); ++j) {
        std::vector<int> J = I;
        J.erase(J.begin() + static_cast<long>(j));
        if (j % 2) s -= value_at(J);
        else s += value_at(J);
    }
    return s;
}

/// All strictly increasing subsets of length m of a sorted set.
inline std::vector<std::vector<int>> subsets(const std::vector<int>& set, int m)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = start; j < set.size(); ++j) {
            cur.push_back(set[j]);
            rec(j + 1);
            cur.pop_back();
        }
    };
    if (m >= 0) rec(0);
    return out;
}

}  // namespace testsupport

namespace testsupport {

/// Subcomplex of g spanned by the listed simplices of dimension d, each
/// oriented so that its frame has positive volume in coordinates (c0, c1, ...).
inline SimplicialComplex oriented_subcomplex(const Geometry& g, int d, const std::vector<int>& simplices,
                                            const std::vector<int>& coords, ClosurePolicy policy)
{
    const auto& K = g.complex();
    std::vector<VertexTuple> tops;
    for (int i : simplices) {
        auto t = K.oriented(d, i);
        const auto& fr = g.frames[d][i];
        double det;
        if (d == 1) {
            det = fr[1][coords[0]] - fr[0][coords[0]];
        } else {
            double a0 = fr[1][coords[0]] - fr[0][coords[0]], a1 = fr[1][coords[1]] - fr[0][coords[1]];
            double b0 = fr[2][coords[0]] - fr[0][coords[0]], b1 = fr[2][coords[1]] - fr[0][coords[1]];
            det = a0 * b1 - a1 * b0;
        }
        if (det < 0) std::swap(t[0], t[1]);
        tops.push_back(t);
    }
    return SimplicialComplex::build(tops, policy);
}

/// Edges of the torus2 grid along coordinate dir at fixed index of the other coordinate.
inline SimplicialComplex torus2_loop(const Geometry& g, int dir, int at)
{
    const int n = 4;
    std::vector<int> edges;
    for (int s = 0; s < n; ++s) {
        int i0 = dir == 0 ? s : at, j0 = dir == 0 ? at : s;
        int i1 = dir == 0 ? (s + 1) % n : at, j1 = dir == 0 ? at : (s + 1) % n;
        Vertex a = i0 + n * j0, b = i1 + n * j1;
        edges.push_back(g.complex().index_of({std::min(a, b), std::max(a, b)}));
    }
    return oriented_subcomplex(g, 1, edges, {dir}, ClosurePolicy::closed_oriented);
}

}  // namespace testsupport

namespace testsupport {
inline deligne::VertexTuple sorted_copy(deligne::VertexTuple t)
{
    std::sort(t.begin(), t.end());
    return t;
}
}  // namespace testsupport
