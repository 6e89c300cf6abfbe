// Combinatorial covers of a complex: admissible cover indices per simplex and
// index maps choosing one admissible index per simplex.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "deligne/complex.hpp"

namespace deligne {

class CoveredComplex {
public:
    CoveredComplex() = default;

    /// Admissible sets given for every simplex; validated for monotonicity.
    CoveredComplex(SimplicialComplex K, int num_sets, std::vector<std::vector<std::vector<int>>> admissible);

    const SimplicialComplex& complex() const { return complex_; }
    int num_sets() const { return num_sets_; }
    int dim() const { return complex_.dim(); }
    const std::vector<int>& admissible(int k, int i) const { return admissible_[k][i]; }
    bool admits(int k, int i, int alpha) const;

    bool same_as(const CoveredComplex& other) const;

private:
    SimplicialComplex complex_;
    int num_sets_ = 1;
    std::vector<std::vector<std::vector<int>>> admissible_;
};

using CoveredPtr = std::shared_ptr<const CoveredComplex>;

/// Lower simplices admit the union of the sets of the top simplices containing them.
CoveredComplex attach_cover(const SimplicialComplex& K, int num_sets,
                            const std::vector<std::vector<int>>& admissible_top);

class IndexMap {
public:
    IndexMap() = default;
    explicit IndexMap(std::vector<std::vector<int>> rho) : rho_(std::move(rho)) {}

    int operator()(int k, int i) const { return rho_[k][i]; }
    int& at(int k, int i) { return rho_[k][i]; }
    const std::vector<std::vector<int>>& data() const { return rho_; }
    bool operator==(const IndexMap&) const = default;

private:
    std::vector<std::vector<int>> rho_;
};

/// Throws unless every value is admissible for its simplex.
void check_index_map(const CoveredComplex& C, const IndexMap& rho);

IndexMap default_index_map(const CoveredComplex& C);

/// Uniform choice per simplex from a 64-bit Mersenne twister seeded with seed,
/// visiting simplices by (dim, index). Frozen simplices keep their values.
IndexMap random_index_map(const CoveredComplex& C, std::uint64_t seed,
                          const std::map<SimplexId, int>& frozen = {});

/// Random map that agrees with base on every simplex of the boundary.
IndexMap random_interior_perturbation(const CoveredComplex& C, const IndexMap& base, std::uint64_t seed);

/// Cover and index map induced on a subcomplex whose vertex labels are those of C.
CoveredComplex restrict_cover(const CoveredComplex& C, const SimplicialComplex& sub);
IndexMap restrict_index_map(const CoveredComplex& C, const IndexMap& rho, const CoveredComplex& sub);

std::pair<CoveredComplex, IndexMap> restrict_cover_to_boundary(const CoveredComplex& C, const IndexMap& rho);

/// Barycentric subdivision; children inherit the sets of their carriers.
CoveredComplex subdivide_cover(const CoveredComplex& C, const Subdivision& sd);

}  // namespace deligne
