#include "deligne/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

#include "deligne/errors.hpp"
#include "deligne/scalar.hpp"

namespace deligne {

namespace {

constexpr double kEps = 1e-9;
constexpr double kFar = 1e300;
constexpr double kPi = std::numbers::pi;

using LabelCoords = std::map<Vertex, Vec3>;

struct TopDraft {
    VertexTuple tuple;
    LabelCoords coords;
};

std::optional<Shift> fit(const Geometry& g, const std::vector<Vec3>& pts, const ChartBox& box)
{
    Shift s{0, 0, 0};
    for (int j = 0; j < 3; ++j) {
        double mn = kFar, mx = -kFar;
        for (const auto& p : pts) {
            mn = std::min(mn, p[j]);
            mx = std::max(mx, p[j]);
        }
        if (g.periodic[j]) {
            int n = static_cast<int>(std::ceil((box.lo[j] - kEps - mn) / kTwoPi));
            if (mx + kTwoPi * n > box.hi[j] + kEps) return std::nullopt;
            s[j] = n;
        } else if (mn < box.lo[j] - kEps || mx > box.hi[j] + kEps) {
            return std::nullopt;
        }
    }
    return s;
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

double signed_volume(const Geometry& g, const std::vector<Vec3>& v)
{
    const int d = static_cast<int>(v.size()) - 1;
    if (g.radial) {
        if (d != 2) throw InvalidInput("radial geometries carry 2-simplices");
        return det3(v[0], v[1], v[2]);
    }
    if (d != g.coord_dim) throw InvalidInput("top simplex dimension differs from the coordinate dimension");
    Vec3 e[3] = {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
    for (int j = 0; j < d; ++j) {
        e[j] = {0, 0, 0};
        for (int c = 0; c < d; ++c) e[j][c] = v[j + 1][c] - v[0][c];
    }
    if (d == 1) return e[0][0];
    if (d == 2) return e[0][0] * e[1][1] - e[0][1] * e[1][0];
    return det3(e[0], e[1], e[2]);
}

std::vector<Vec3> frame_of(const VertexTuple& t, const LabelCoords& c)
{
    std::vector<Vec3> out;
    for (Vertex v : t) out.push_back(c.at(v));
    return out;
}

/// Frames and shifts for every simplex from coordinates of the tops.
void finish(Geometry& g, const std::vector<LabelCoords>& top_coords)
{
    const auto& K = g.complex();
    const int p = K.dim();
    g.frames.assign(p + 1, {});
    g.shifts.assign(p + 1, {});
    for (int k = 0; k <= p; ++k) {
        for (std::size_t i = 0; i < K.count(k); ++i) {
            int d = k, j = static_cast<int>(i);
            while (d < p) j = K.cofaces(d++, j).front();
            auto frame = frame_of(K.oriented(k, static_cast<int>(i)), top_coords[j]);
            std::vector<Shift> sh;
            for (int alpha : g.cover().admissible(k, static_cast<int>(i))) {
                auto s = fit(g, frame, g.charts[alpha]);
                if (!s)
                    throw InvalidInput("simplex " + std::to_string(k) + "/" + std::to_string(i) +
                                       " does not fit chart " + std::to_string(alpha) + " under any branch shift");
                sh.push_back(*s);
            }
            g.frames[k].push_back(std::move(frame));
            g.shifts[k].push_back(std::move(sh));
        }
    }
}

GeometryPtr assemble(Geometry g, std::vector<TopDraft> tops, ClosurePolicy policy)
{
    std::vector<VertexTuple> tuples;
    std::map<VertexTuple, LabelCoords> by_set;
    for (auto& t : tops) {
        double vol = signed_volume(g, frame_of(t.tuple, t.coords));
        if (std::fabs(vol) < 1e-12) throw InvalidInput("degenerate simplex in " + g.name);
        if (vol < 0) std::swap(t.tuple[0], t.tuple[1]);
        VertexTuple key = t.tuple;
        std::sort(key.begin(), key.end());
        by_set[key] = t.coords;
        tuples.push_back(t.tuple);
    }
    SimplicialComplex K = SimplicialComplex::build(tuples, policy);
    const int p = K.dim();
    std::vector<LabelCoords> top_coords;
    std::vector<std::vector<int>> adm;
    for (std::size_t t = 0; t < K.count(p); ++t) {
        const auto& c = by_set.at(K.vertices(p, static_cast<int>(t)));
        auto frame = frame_of(K.vertices(p, static_cast<int>(t)), c);
        std::vector<int> a;
        for (std::size_t alpha = 0; alpha < g.charts.size(); ++alpha)
            if (fit(g, frame, g.charts[alpha])) a.push_back(static_cast<int>(alpha));
        adm.push_back(std::move(a));
        top_coords.push_back(c);
    }
    g.covered = std::make_shared<CoveredComplex>(attach_cover(K, static_cast<int>(g.charts.size()), adm));
    finish(g, top_coords);
    return std::make_shared<Geometry>(std::move(g));
}

ChartBox box1(double lo, double hi) { return {{lo, -kFar, -kFar}, {hi, kFar, kFar}}; }

/// Arc intervals per periodic coordinate, combined as a product atlas.
std::vector<ChartBox> product_atlas(const std::vector<std::vector<std::pair<double, double>>>& arcs_per_coord)
{
    std::vector<ChartBox> out(1, ChartBox{{-kFar, -kFar, -kFar}, {kFar, kFar, kFar}});
    for (std::size_t j = 0; j < arcs_per_coord.size(); ++j) {
        if (arcs_per_coord[j].empty()) continue;
        std::vector<ChartBox> next;
        // Index = a_0 + 2 a_1 + ...: earlier coordinates vary fastest.
        for (const auto& arc : arcs_per_coord[j])
            for (auto b : out) {
                b.lo[j] = arc.first;
                b.hi[j] = arc.second;
                next.push_back(b);
            }
        out = std::move(next);
    }
    return out;
}

GeometryPtr circle(const std::string& name, int n, std::vector<ChartBox> charts)
{
    Geometry g;
    g.name = name;
    g.coord_dim = 1;
    g.periodic = {true, false, false};
    g.charts = std::move(charts);
    std::vector<TopDraft> tops;
    for (int j = 0; j < n; ++j) {
        int b = (j + 1) % n;
        tops.push_back({{j, b}, {{j, {kTwoPi * j / n, 0, 0}}, {b, {kTwoPi * (j + 1) / n, 0, 0}}}});
    }
    return assemble(std::move(g), std::move(tops), ClosurePolicy::closed_oriented);
}

const std::vector<std::pair<double, double>> kTorusArcs = {{-kPi / 2, kPi}, {kPi / 2, 2 * kPi}};

GeometryPtr torus2()
{
    Geometry g;
    g.name = "torus2-4chart";
    g.coord_dim = 2;
    g.periodic = {true, true, false};
    g.charts = product_atlas({kTorusArcs, kTorusArcs});
    const int n = 4;
    const double h = kTwoPi / n;
    auto label = [&](int i, int j) { return (i % n) + n * (j % n); };
    std::vector<TopDraft> tops;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vertex v00 = label(i, j), v10 = label(i + 1, j), v11 = label(i + 1, j + 1), v01 = label(i, j + 1);
            LabelCoords c = {{v00, {i * h, j * h, 0}},
                             {v10, {(i + 1) * h, j * h, 0}},
                             {v11, {(i + 1) * h, (j + 1) * h, 0}},
                             {v01, {i * h, (j + 1) * h, 0}}};
            tops.push_back({{v00, v10, v11}, c});
            tops.push_back({{v00, v11, v01}, c});
        }
    return assemble(std::move(g), std::move(tops), ClosurePolicy::closed_oriented);
}

GeometryPtr torus3()
{
    Geometry g;
    g.name = "torus3-8chart";
    g.coord_dim = 3;
    g.periodic = {true, true, true};
    g.charts = product_atlas({kTorusArcs, kTorusArcs, kTorusArcs});
    const int n = 4;
    const double h = kTwoPi / n;
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<TopDraft> tops;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                for (const auto& pm : perms) {
                    int pos[3] = {i, j, l};
                    TopDraft t;
                    auto push = [&]() {
                        Vertex v = (pos[0] % n) + n * (pos[1] % n) + n * n * (pos[2] % n);
                        t.tuple.push_back(v);
                        t.coords[v] = {pos[0] * h, pos[1] * h, pos[2] * h};
                    };
                    push();
                    for (int s = 0; s < 3; ++s) {
                        ++pos[pm[s]];
                        push();
                    }
                    tops.push_back(std::move(t));
                }
    return assemble(std::move(g), std::move(tops), ClosurePolicy::closed_oriented);
}

GeometryPtr annulus()
{
    Geometry g;
    g.name = "annulus";
    g.coord_dim = 2;
    g.periodic = {true, false, false};
    for (int q = 0; q < 4; ++q) g.charts.push_back(box1(q * kPi / 2 - kPi / 4, (q + 1) * kPi / 2 + kPi / 4));
    const int n = 8;
    const double h = kTwoPi / n;
    const double radii[3] = {1.0, 1.5, 2.0};
    auto label = [&](int j, int i) { return (j % n) + n * i; };
    std::vector<TopDraft> tops;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < 2; ++i) {
            Vertex v00 = label(j, i), v10 = label(j + 1, i), v11 = label(j + 1, i + 1), v01 = label(j, i + 1);
            LabelCoords c = {{v00, {j * h, radii[i], 0}},
                             {v10, {(j + 1) * h, radii[i], 0}},
                             {v11, {(j + 1) * h, radii[i + 1], 0}},
                             {v01, {j * h, radii[i + 1], 0}}};
            tops.push_back({{v00, v10, v11}, c});
            tops.push_back({{v00, v11, v01}, c});
        }
    return assemble(std::move(g), std::move(tops), ClosurePolicy::with_boundary);
}

GeometryPtr solid_torus()
{
    Geometry g;
    g.name = "solid-torus";
    g.coord_dim = 3;
    g.periodic = {false, false, true};
    for (int q = 0; q < 4; ++q) {
        ChartBox b{{-kFar, -kFar, q * kPi / 2 - kPi / 4}, {kFar, kFar, (q + 1) * kPi / 2 + kPi / 4}};
        g.charts.push_back(b);
    }
    const int m = 2, levels = 8;
    const double h = kTwoPi / levels;
    auto disc = [&](int a, int b) { return a + (m + 1) * b; };
    auto xy = [&](int d) { return std::pair<double, double>{-1.0 + 2.0 * (d % (m + 1)) / m, -1.0 + 2.0 * (d / (m + 1)) / m}; };
    std::vector<std::array<int, 3>> triangles;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            triangles.push_back({disc(a, b), disc(a + 1, b), disc(a + 1, b + 1)});
            triangles.push_back({disc(a, b), disc(a + 1, b + 1), disc(a, b + 1)});
        }
    const int per_level = (m + 1) * (m + 1);
    std::vector<TopDraft> tops;
    for (auto tri : triangles) {
        std::sort(tri.begin(), tri.end());
        for (int l = 0; l < levels; ++l) {
            auto V = [&](int d, int lev) { return d + per_level * (lev % levels); };
            LabelCoords c;
            for (int d : tri)
                for (int lev : {l, l + 1}) {
                    auto [x, y] = xy(d);
                    c[V(d, lev)] = {x, y, lev * h};
                }
            const int A = tri[0], B = tri[1], Cc = tri[2];
            tops.push_back({{V(A, l), V(B, l), V(Cc, l), V(Cc, l + 1)}, c});
            tops.push_back({{V(A, l), V(B, l), V(B, l + 1), V(Cc, l + 1)}, c});
            tops.push_back({{V(A, l), V(A, l + 1), V(B, l + 1), V(Cc, l + 1)}, c});
        }
    }
    return assemble(std::move(g), std::move(tops), ClosurePolicy::with_boundary);
}

GeometryPtr sphere(int num_charts)
{
    Geometry g;
    g.name = num_charts == 2 ? "sphere-octahedron-2chart" : "sphere-octahedron-5chart";
    g.coord_dim = 3;
    g.radial = true;
    const double R = 1.5;
    g.charts.push_back({{-R, -R, 0}, {R, R, R}});
    if (num_charts == 2) {
        g.charts.push_back({{-R, -R, -R}, {R, R, 0}});
    } else {
        const int sx[4] = {1, -1, -1, 1}, sy[4] = {1, 1, -1, -1};
        for (int q = 0; q < 4; ++q) {
            ChartBox b;
            b.lo = {sx[q] > 0 ? 0 : -R, sy[q] > 0 ? 0 : -R, -R};
            b.hi = {sx[q] > 0 ? R : 0, sy[q] > 0 ? R : 0, 0};
            g.charts.push_back(b);
        }
    }
    // +x=0, -x=1, +y=2, -y=3, +z=4, -z=5
    LabelCoords c = {{0, {1, 0, 0}}, {1, {-1, 0, 0}}, {2, {0, 1, 0}}, {3, {0, -1, 0}}, {4, {0, 0, 1}}, {5, {0, 0, -1}}};
    std::vector<TopDraft> tops;
    for (int a : {0, 1})
        for (int b : {2, 3})
            for (int z : {4, 5}) tops.push_back({{a, b, z}, c});
    return assemble(std::move(g), std::move(tops), ClosurePolicy::closed_oriented);
}

}  // namespace

Shift Geometry::shift(int k, int i, int alpha) const
{
    const auto& adm = cover().admissible(k, i);
    auto it = std::lower_bound(adm.begin(), adm.end(), alpha);
    if (it == adm.end() || *it != alpha)
        throw InvalidInput("chart " + std::to_string(alpha) + " is not admissible for simplex " + std::to_string(k) +
                           "/" + std::to_string(i));
    return shifts[k][i][it - adm.begin()];
}

void Geometry::realize(const Vec3& u, Vec3& x, std::array<Vec3, 3>& J) const
{
    if (!radial) {
        x = u;
        J = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
        return;
    }
    // Octahedral map: s_a = sin(pi u_a / 2), then normalize. Edges of the
    // octahedron go to great-circle arcs at uniform angular speed.
    Vec3 s, ds;
    for (int a = 0; a < 3; ++a) {
        s[a] = std::sin(kPi * u[a] / 2);
        ds[a] = kPi / 2 * std::cos(kPi * u[a] / 2);
    }
    double r = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    for (int a = 0; a < 3; ++a) x[a] = s[a] / r;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) J[a][b] = ((a == b ? 1.0 : 0.0) - x[a] * x[b]) / r * ds[b];
}

const std::vector<std::string>& geometry_names()
{
    static const std::vector<std::string> names = {"circle-2arc",   "circle-3arc", "torus2-4chart",
                                                   "torus3-8chart", "annulus",     "solid-torus",
                                                   "sphere-octahedron-2chart", "sphere-octahedron-5chart"};
    return names;
}

GeometryPtr make_geometry(const std::string& name)
{
    if (name == "circle-2arc") return circle(name, 4, {box1(0, kPi), box1(kPi, kTwoPi)});
    if (name == "circle-3arc") {
        std::vector<ChartBox> arcs;
        for (int a = 0; a < 3; ++a) arcs.push_back(box1(kTwoPi * a / 3 - kPi / 3, kTwoPi * (a + 1) / 3 + kPi / 3));
        return circle(name, 6, arcs);
    }
    if (name == "torus2-4chart") return torus2();
    if (name == "torus3-8chart") return torus3();
    if (name == "annulus") return annulus();
    if (name == "solid-torus") return solid_torus();
    if (name == "sphere-octahedron-2chart") return sphere(2);
    if (name == "sphere-octahedron-5chart") return sphere(5);
    throw InvalidInput("unknown geometry '" + name + "'");
}

GeometryPtr subdivide_geometry(const Geometry& g)
{
    const auto& K = g.complex();
    const int p = K.dim();
    Subdivision sd = barycentric_subdivide(K);
    Geometry out;
    out.name = g.name + "/sd";
    out.coord_dim = g.coord_dim;
    out.periodic = g.periodic;
    out.radial = g.radial;
    out.charts = g.charts;
    out.covered = std::make_shared<CoveredComplex>(subdivide_cover(g.cover(), sd));
    const auto& S = sd.complex;
    std::vector<LabelCoords> top_coords;
    for (std::size_t c = 0; c < S.count(p); ++c) {
        const int T = sd.carrier[p][c].index;
        LabelCoords parent = [&] {
            LabelCoords m;
            auto t = K.oriented(p, T);
            for (std::size_t j = 0; j < t.size(); ++j) m[t[j]] = g.frames[p][T][j];
            return m;
        }();
        LabelCoords mine;
        for (Vertex v : S.vertices(p, static_cast<int>(c))) {
            SimplexId P = sd.barycenter_of.at(v);
            const auto& vs = K.vertices(P.dim, P.index);
            Vec3 acc{0, 0, 0};
            for (Vertex w : vs)
                for (int a = 0; a < 3; ++a) acc[a] += parent.at(w)[a];
            for (int a = 0; a < 3; ++a) acc[a] /= static_cast<double>(vs.size());
            mine[v] = acc;
        }
        top_coords.push_back(std::move(mine));
    }
    finish(out, top_coords);
    return std::make_shared<Geometry>(std::move(out));
}

GeometryPtr restrict_geometry(const Geometry& g, const SimplicialComplex& sub, const std::string& name)
{
    const auto& K = g.complex();
    Geometry out;
    out.name = name.empty() ? g.name + "/sub" : name;
    out.coord_dim = g.coord_dim;
    out.periodic = g.periodic;
    out.radial = g.radial;
    out.charts = g.charts;
    out.covered = std::make_shared<CoveredComplex>(restrict_cover(g.cover(), sub));
    if (sub.empty()) return std::make_shared<Geometry>(std::move(out));
    const int d = sub.dim();
    std::vector<LabelCoords> top_coords;
    for (std::size_t t = 0; t < sub.count(d); ++t) {
        int j = K.index_of(sub.vertices(d, static_cast<int>(t)));
        auto tuple = K.oriented(d, j);
        LabelCoords m;
        for (std::size_t a = 0; a < tuple.size(); ++a) m[tuple[a]] = g.frames[d][j][a];
        top_coords.push_back(std::move(m));
    }
    finish(out, top_coords);
    return std::make_shared<Geometry>(std::move(out));
}

GeometryPtr boundary_geometry(const Geometry& g)
{
    return restrict_geometry(g, boundary_restrict(g.complex()), g.name + "/boundary");
}

double frame_volume(const Geometry& g, int i)
{
    return signed_volume(g, g.frames[g.complex().dim()][i]);
}

}  // namespace deligne
