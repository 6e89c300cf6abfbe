// Geometric realizations of the built-in fixture complexes: vertex
// coordinates per simplex and a chart atlas of coordinate boxes.
//
// Angle coordinates are periodic. Each simplex carries its vertex
// coordinates unwrapped in one frame, and for every admissible chart the
// integer shift (in units of 2*pi) moving the frame into the chart box. The
// branch of an angle in chart alpha is frame value + 2*pi*shift.
#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "deligne/cover.hpp"

namespace deligne {

using Vec3 = std::array<double, 3>;
using Shift = std::array<int, 3>;

struct ChartBox {
    Vec3 lo{};
    Vec3 hi{};
    Vec3 center() const { return {(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2, (lo[2] + hi[2]) / 2}; }
};

class Geometry {
public:
    std::string name;
    int coord_dim = 1;
    std::array<bool, 3> periodic{};
    /// Frames are points of the octahedron |u_0|+|u_1|+|u_2| = 1, mapped onto
    /// the unit sphere by normalizing (sin(pi u_a / 2))_a.
    bool radial = false;
    std::vector<ChartBox> charts;
    CoveredPtr covered;
    /// frames[k][i]: coordinates of the vertices of (k, i) in stored orientation order.
    std::vector<std::vector<std::vector<Vec3>>> frames;
    /// shifts[k][i][a]: shift for the a-th admissible chart of (k, i).
    std::vector<std::vector<std::vector<Shift>>> shifts;

    const CoveredComplex& cover() const { return *covered; }
    const SimplicialComplex& complex() const { return covered->complex(); }
    Shift shift(int k, int i, int alpha) const;
    /// Realized point and Jacobian d(point)/d(coords) at frame coordinates u.
    void realize(const Vec3& u, Vec3& x, std::array<Vec3, 3>& J) const;
};

using GeometryPtr = std::shared_ptr<const Geometry>;

/// circle-2arc, circle-3arc, torus2-4chart, torus3-8chart, annulus,
/// solid-torus, sphere-octahedron-2chart, sphere-octahedron-5chart.
GeometryPtr make_geometry(const std::string& name);
const std::vector<std::string>& geometry_names();

/// Barycentric subdivision; children inherit the admissible charts of their carriers.
GeometryPtr subdivide_geometry(const Geometry& g);

/// Realization of a subcomplex whose vertex labels are those of g.
GeometryPtr restrict_geometry(const Geometry& g, const SimplicialComplex& sub, const std::string& name = "");

GeometryPtr boundary_geometry(const Geometry& g);

/// Signed volume of a top simplex in its frame (radial: det of the vertices).
double frame_volume(const Geometry& g, int i);

}  // namespace deligne
