// Transition angles between local actions for two index maps on a complex
// with boundary.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "deligne/holonomy.hpp"

namespace deligne {

/// Split of a flag sum into flags through a boundary facet and the rest.
template <class S>
struct Census {
    std::size_t boundary_flags = 0;
    std::size_t interior_flags = 0;
    S boundary_sum = S(0);
    S interior_sum = S(0);
};

template <class S>
struct TransitionValue {
    S raw = S(0);
    S reduced = S(0);
    Census<S> census;
    double radians() const { return Arith<S>::to_radians(reduced); }
};

/// local_action(rho1) - local_action(rho0).
template <class S>
TransitionValue<S> transition_general(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1);

/// Mixed-word formula over flags starting at codimension-one simplices. The
/// census boundary part comes from boundary facets; the interior part cancels.
template <class S>
TransitionValue<S> transition_boundary(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1);

template <class S>
struct EdgeFormulaValue {
    TransitionValue<S> value;         // from boundary edges only
    S general = S(0);                 // transition_general on the same input
    double agreement = 0;             // circular distance, radians
    double interior_cancellation = 0; // |interior part| of transition_boundary, radians
};

/// Degree 2: sum over boundary edges e with face b of
/// C^1(e, (rho0 e, rho1 e)) and the vertex words of e.
template <class S>
EdgeFormulaValue<S> transition_p2_boundary(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1);

template <class S>
struct TripleValue {
    S composed_general = S(0);   // G01 + G12 - G02 from transition_general
    S composed_patch = S(0);     // same combination of the mixed-word sums over patch faces
    S edge_formula = S(0);       // closed formula over edges of the patch boundary
    double agreement = 0;        // circular distance between composed_patch and edge_formula
    std::size_t patch_faces = 0;
    std::size_t patch_boundary_edges = 0;
};

/// Degree 3 on a 3-complex with boundary. patch selects boundary facets
/// (indices among 2-simplices); all boundary facets when empty.
template <class S>
TripleValue<S> transgress_p3_triple(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1,
                                    const IndexMap& rho2, const std::set<int>& patch = {});

}  // namespace deligne
