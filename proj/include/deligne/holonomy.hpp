// Holonomy of a degree-p cocycle over a closed oriented p-complex, the same
// flag sum on complexes with boundary, and total curvature on (p+1)-complexes.
#pragma once

#include <cstddef>
#include <vector>

#include "deligne/cochain.hpp"

namespace deligne {

template <class S>
struct HolonomyValue {
    S raw = S(0);
    S reduced = S(0);
    std::vector<S> levels;  // entry n: sum over flags ending at codimension n
    std::size_t flag_count = 0;
    double radians() const { return Arith<S>::to_radians(reduced); }
};

/// Sum over flags sigma^p > ... > sigma^{p-n} of
/// sign * C^{p-n}(sigma^{p-n}, (rho(sigma^p), ..., rho(sigma^{p-n}))).
template <class S>
HolonomyValue<S> flag_sum(const BasicCochain<S>& c, const IndexMap& rho);

/// Closed oriented complex of dimension p; c must carry the cocycle flag.
template <class S>
HolonomyValue<S> holonomy(const BasicCochain<S>& c, const IndexMap& rho);

/// Dimension p, boundary allowed.
template <class S>
HolonomyValue<S> local_action(const BasicCochain<S>& c, const IndexMap& rho);

template <class S>
struct CurvatureValue {
    S total = S(0);
    std::int64_t nearest_integer = 0;  // of total / period
    double integrality_defect = 0;
    double index_dependence = 0;       // worst spread over admissible indices per simplex
};

/// Sum of discrete_d(C^p)(sigma, rho(sigma)) over top simplices of a closed
/// oriented (p+1)-complex.
template <class S>
CurvatureValue<S> curvature_total(const BasicCochain<S>& c, const IndexMap& rho, double tol);

/// Flag-sum pairing of an integer cocycle of length q+1 with a closed
/// oriented q-complex.
std::int64_t chern_pairing(const ChernCocycle& n, const CoveredComplex& C, const IndexMap& rho);

}  // namespace deligne
