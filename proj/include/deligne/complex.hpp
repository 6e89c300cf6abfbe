// Finite oriented simplicial complexes.
//
// A simplex is identified by its sorted vertex set; its orientation is a
// separate sign relative to the sorted order. Top simplices keep the
// orientation they were listed with, lower simplices use the sorted order.
#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace deligne {

using Vertex = int;
using VertexTuple = std::vector<Vertex>;

enum class ManifoldFlag { none, closed_oriented, with_boundary };

std::string to_string(ManifoldFlag f);
ManifoldFlag manifold_flag_from_string(const std::string& s);

/// Requested manifold property checked by build_complex.
enum class ClosurePolicy { infer, closed_oriented, with_boundary, pseudomanifold };

struct SimplexId {
    int dim = 0;
    int index = 0;
    auto operator<=>(const SimplexId&) const = default;
};

struct Facet {
    int index;      // index among (k-1)-simplices
    int incidence;  // +1 or -1
};

struct Flag {
    std::vector<int> chain;  // simplex indices at dims p, p-1, ..., q
    int sign = 1;
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Build from top simplices given as oriented vertex tuples. For dim 0 the
    /// optional point_signs give the orientation of each listed point.
    static SimplicialComplex build(const std::vector<VertexTuple>& tops,
                                   ClosurePolicy policy = ClosurePolicy::infer,
                                   const std::vector<int>& point_signs = {});

    int dim() const { return dim_; }
    bool empty() const { return dim_ < 0; }
    std::size_t count(int k) const;
    std::size_t num_top() const { return empty() ? 0 : count(dim_); }

    const VertexTuple& vertices(int k, int i) const { return simplices_[k][i]; }
    int orientation(int k, int i) const { return orient_[k][i]; }
    /// Vertex tuple in stored orientation (sorted, with the first two swapped if odd).
    VertexTuple oriented(int k, int i) const;
    Vertex vertex_label(int i) const { return simplices_[0][i][0]; }

    std::optional<int> find(const VertexTuple& vertex_set) const;
    int index_of(const VertexTuple& vertex_set) const;  // throws if missing

    const std::vector<Facet>& facets(int k, int i) const { return facets_[k][i]; }
    const std::vector<int>& cofaces(int k, int i) const { return cofaces_[k][i]; }

    int incidence(SimplexId sigma, SimplexId tau) const;

    ManifoldFlag manifold() const { return flag_; }
    long euler_characteristic() const;
    std::vector<VertexTuple> oriented_tops() const;
    std::vector<int> top_signs() const;  // dim 0 only: orientation of each point
    /// (dim-1)-simplices with exactly one coface.
    bool is_boundary_facet(int i) const;
    /// Simplices (any dim) contained in some boundary facet.
    bool on_boundary(int k, int i) const;
    Vertex max_vertex() const;

    void for_each_flag(int q, const std::function<void(const int* chain, int len, int sign)>& fn) const;

private:
    int dim_ = -1;
    std::vector<std::vector<VertexTuple>> simplices_;
    std::vector<std::map<VertexTuple, int>> lookup_;
    std::vector<std::vector<int>> orient_;
    std::vector<std::vector<std::vector<Facet>>> facets_;
    std::vector<std::vector<std::vector<int>>> cofaces_;
    std::vector<std::vector<char>> boundary_;
    ManifoldFlag flag_ = ManifoldFlag::closed_oriented;
};

/// Sign of the permutation sorting t; 0 if t has repeated entries.
int permutation_sign(const VertexTuple& t);

int incidence(const SimplicialComplex& K, SimplexId sigma, SimplexId tau);
std::vector<Flag> enumerate_flags(const SimplicialComplex& K, int q);

struct Subdivision {
    SimplicialComplex complex;
    /// carrier[k][i]: minimal parent simplex containing child simplex (k, i).
    std::vector<std::vector<SimplexId>> carrier;
    /// New vertex label -> parent simplex whose barycenter it is.
    std::map<Vertex, SimplexId> barycenter_of;
};

Subdivision barycentric_subdivide(const SimplicialComplex& K);

/// Boundary subcomplex with induced orientation; empty when K is closed.
SimplicialComplex boundary_restrict(const SimplicialComplex& K);

struct Gluing {
    SimplicialComplex complex;
    /// Where each vertex of K2 went in the glued complex.
    std::map<Vertex, Vertex> k2_vertex_map;
};

/// Identify boundary vertices of K2 with boundary vertices of K1 through
/// matching (K2 label -> K1 label). Unmatched K2 labels are kept when they do
/// not collide with K1 and renamed past the largest label otherwise.
Gluing glue_along_boundary(const SimplicialComplex& K1, const SimplicialComplex& K2,
                           const std::map<Vertex, Vertex>& matching);

/// Disjoint union; K2 labels are shifted by offset (returned).
std::pair<SimplicialComplex, Vertex> disjoint_union(const SimplicialComplex& K1,
                                                    const SimplicialComplex& K2);

/// Rename vertices; orientations follow the renamed tuples.
SimplicialComplex relabel(const SimplicialComplex& K, const std::map<Vertex, Vertex>& map);

/// Flip the orientation of every top simplex.
SimplicialComplex reverse_orientation(const SimplicialComplex& K);

}  // namespace deligne
