#include "deligne/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "deligne/errors.hpp"

namespace deligne {

namespace {

std::string tuple_str(const VertexTuple& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

VertexTuple sorted(VertexTuple t)
{
    std::sort(t.begin(), t.end());
    return t;
}

VertexTuple with_sign(VertexTuple t, int sign)
{
    if (sign < 0 && t.size() >= 2) std::swap(t[0], t[1]);
    return t;
}

}  // namespace

std::string to_string(ManifoldFlag f)
{
    switch (f) {
    case ManifoldFlag::closed_oriented: return "closed_oriented";
    case ManifoldFlag::with_boundary: return "with_boundary";
    default: return "none";
    }
}

ManifoldFlag manifold_flag_from_string(const std::string& s)
{
    if (s == "closed_oriented") return ManifoldFlag::closed_oriented;
    if (s == "with_boundary") return ManifoldFlag::with_boundary;
    if (s == "none") return ManifoldFlag::none;
    throw InvalidInput("unknown manifold flag '" + s + "'");
}

int permutation_sign(const VertexTuple& t)
{
    int sign = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (t[i] == t[j]) return 0;
            if (t[i] > t[j]) sign = -sign;
        }
    return sign;
}

SimplicialComplex SimplicialComplex::build(const std::vector<VertexTuple>& tops,
                                           ClosurePolicy policy,
                                           const std::vector<int>& point_signs)
{
    SimplicialComplex K;
    if (tops.empty()) return K;

    const std::size_t n = tops.front().size();
    if (n == 0) throw InvalidInput("empty vertex tuple");
    if (!point_signs.empty() && (n != 1 || point_signs.size() != tops.size()))
        throw InvalidInput("point signs are only meaningful for 0-dimensional complexes");

    std::map<VertexTuple, int> top_orient;
    for (std::size_t t = 0; t < tops.size(); ++t) {
        const auto& tup = tops[t];
        if (tup.size() != n)
            throw InvalidInput("mixed simplex dimensions: " + tuple_str(tup) + " vs size " +
                               std::to_string(n));
        int sign = permutation_sign(tup);
        if (sign == 0) throw InvalidInput("repeated vertex in simplex " + tuple_str(tup));
        if (n == 1) {
            sign = point_signs.empty() ? 1 : point_signs[t];
            if (sign != 1 && sign != -1) throw InvalidInput("point sign must be +1 or -1");
        }
        auto [it, fresh] = top_orient.emplace(sorted(tup), sign);
        if (!fresh) throw InvalidInput("duplicate simplex " + tuple_str(tup));
    }

    const int dim = static_cast<int>(n) - 1;
    K.dim_ = dim;
    std::vector<std::set<VertexTuple>> levels(dim + 1);
    for (const auto& [s, o] : top_orient) levels[dim].insert(s);
    for (int k = dim; k >= 1; --k)
        for (const auto& s : levels[k])
            for (int j = 0; j <= k; ++j) {
                VertexTuple f = s;
                f.erase(f.begin() + j);
                levels[k - 1].insert(std::move(f));
            }

    K.simplices_.resize(dim + 1);
    K.lookup_.resize(dim + 1);
    K.orient_.resize(dim + 1);
    K.facets_.resize(dim + 1);
    K.cofaces_.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        K.simplices_[k].assign(levels[k].begin(), levels[k].end());
        for (std::size_t i = 0; i < K.simplices_[k].size(); ++i)
            K.lookup_[k].emplace(K.simplices_[k][i], static_cast<int>(i));
        K.orient_[k].assign(K.simplices_[k].size(), 1);
        K.facets_[k].resize(K.simplices_[k].size());
        K.cofaces_[k].resize(K.simplices_[k].size());
    }
    for (std::size_t i = 0; i < K.simplices_[dim].size(); ++i)
        K.orient_[dim][i] = top_orient.at(K.simplices_[dim][i]);

    for (int k = 1; k <= dim; ++k)
        for (std::size_t i = 0; i < K.simplices_[k].size(); ++i) {
            const auto& s = K.simplices_[k][i];
            auto& fl = K.facets_[k][i];
            for (int j = 0; j <= k; ++j) {
                VertexTuple f = s;
                f.erase(f.begin() + j);
                int fi = K.lookup_[k - 1].at(f);
                int sign = ((j % 2) ? -1 : 1) * K.orient_[k][i] * K.orient_[k - 1][fi];
                fl.push_back({fi, sign});
                K.cofaces_[k - 1][fi].push_back(static_cast<int>(i));
            }
            std::sort(fl.begin(), fl.end(), [](const Facet& a, const Facet& b) { return a.index < b.index; });
        }

    K.boundary_.assign(dim + 1, {});
    for (int k = 0; k <= dim; ++k) K.boundary_[k].assign(K.simplices_[k].size(), 0);

    K.flag_ = ManifoldFlag::closed_oriented;
    if (dim >= 1) {
        bool has_boundary = false;
        bool bad = false;
        for (std::size_t f = 0; f < K.simplices_[dim - 1].size(); ++f) {
            const auto& cf = K.cofaces_[dim - 1][f];
            if (cf.size() > 2) bad = true;
            else if (cf.size() == 2) {
                int a = K.incidence({dim, cf[0]}, {dim - 1, static_cast<int>(f)});
                int b = K.incidence({dim, cf[1]}, {dim - 1, static_cast<int>(f)});
                if (a == b) bad = true;
            } else {
                has_boundary = true;
                K.boundary_[dim - 1][f] = 1;
            }
        }
        K.flag_ = bad ? ManifoldFlag::none
                      : (has_boundary ? ManifoldFlag::with_boundary : ManifoldFlag::closed_oriented);
        for (int k = dim - 1; k >= 1; --k)
            for (std::size_t i = 0; i < K.simplices_[k].size(); ++i)
                if (K.boundary_[k][i])
                    for (const auto& f : K.facets_[k][i]) K.boundary_[k - 1][f.index] = 1;
    }

    switch (policy) {
    case ClosurePolicy::closed_oriented:
        if (K.flag_ != ManifoldFlag::closed_oriented)
            throw InvalidInput("complex is not a closed oriented pseudomanifold (" + to_string(K.flag_) + ")");
        break;
    case ClosurePolicy::with_boundary:
        if (K.flag_ != ManifoldFlag::with_boundary)
            throw InvalidInput("complex is not an oriented pseudomanifold with boundary (" +
                               to_string(K.flag_) + ")");
        break;
    case ClosurePolicy::pseudomanifold:
        if (K.flag_ == ManifoldFlag::none) throw InvalidInput("complex is not an oriented pseudomanifold");
        break;
    case ClosurePolicy::infer: break;
    }
    return K;
}

std::size_t SimplicialComplex::count(int k) const
{
    if (k < 0 || k > dim_) return 0;
    return simplices_[k].size();
}

VertexTuple SimplicialComplex::oriented(int k, int i) const
{
    return with_sign(simplices_[k][i], orient_[k][i]);
}

std::optional<int> SimplicialComplex::find(const VertexTuple& vertex_set) const
{
    int k = static_cast<int>(vertex_set.size()) - 1;
    if (k < 0 || k > dim_) return std::nullopt;
    auto it = lookup_[k].find(sorted(vertex_set));
    if (it == lookup_[k].end()) return std::nullopt;
    return it->second;
}

int SimplicialComplex::index_of(const VertexTuple& vertex_set) const
{
    auto i = find(vertex_set);
    if (!i) throw InvalidInput("unknown simplex " + tuple_str(vertex_set));
    return *i;
}

int SimplicialComplex::incidence(SimplexId sigma, SimplexId tau) const
{
    if (sigma.dim < 0 || sigma.dim > dim_ || sigma.index < 0 ||
        sigma.index >= static_cast<int>(count(sigma.dim)))
        throw InvalidInput("unknown simplex identifier");
    if (tau.dim < 0 || tau.dim > dim_ || tau.index < 0 || tau.index >= static_cast<int>(count(tau.dim)))
        throw InvalidInput("unknown simplex identifier");
    if (tau.dim != sigma.dim - 1) return 0;
    for (const auto& f : facets_[sigma.dim][sigma.index])
        if (f.index == tau.index) return f.incidence;
    return 0;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (int k = 0; k <= dim_; ++k) chi += ((k % 2) ? -1L : 1L) * static_cast<long>(count(k));
    return chi;
}

std::vector<VertexTuple> SimplicialComplex::oriented_tops() const
{
    std::vector<VertexTuple> out;
    if (empty()) return out;
    for (std::size_t i = 0; i < count(dim_); ++i) out.push_back(oriented(dim_, static_cast<int>(i)));
    return out;
}

std::vector<int> SimplicialComplex::top_signs() const
{
    if (dim_ != 0) return {};
    return orient_[0];
}

bool SimplicialComplex::is_boundary_facet(int i) const
{
    return dim_ >= 1 && boundary_[dim_ - 1][i] && cofaces_[dim_ - 1][i].size() == 1;
}

bool SimplicialComplex::on_boundary(int k, int i) const
{
    if (k < 0 || k >= dim_) return false;
    return boundary_[k][i] != 0;
}

Vertex SimplicialComplex::max_vertex() const
{
    if (empty()) return -1;
    return simplices_[0].back()[0];
}

void SimplicialComplex::for_each_flag(int q, const std::function<void(const int*, int, int)>& fn) const
{
    if (empty()) return;
    if (q < 0 || q > dim_) throw InvalidInput("flag level q out of range");
    const int len = dim_ - q + 1;
    std::vector<int> chain(len);
    std::function<void(int, int)> rec = [&](int pos, int sign) {
        if (pos == len) {
            fn(chain.data(), len, sign);
            return;
        }
        int k = dim_ - pos + 1;  // dimension of the previous element
        for (const auto& f : facets_[k][chain[pos - 1]]) {
            chain[pos] = f.index;
            rec(pos + 1, sign * f.incidence);
        }
    };
    for (std::size_t t = 0; t < count(dim_); ++t) {
        chain[0] = static_cast<int>(t);
        // Points carry their orientation as a sign; higher tops in their vertex order.
        rec(1, dim_ == 0 ? orient_[0][t] : 1);
    }
}

int incidence(const SimplicialComplex& K, SimplexId sigma, SimplexId tau)
{
    return K.incidence(sigma, tau);
}

std::vector<Flag> enumerate_flags(const SimplicialComplex& K, int q)
{
    std::vector<Flag> out;
    K.for_each_flag(q, [&](const int* c, int len, int sign) { out.push_back({std::vector<int>(c, c + len), sign}); });
    return out;
}

Subdivision barycentric_subdivide(const SimplicialComplex& K)
{
    Subdivision out;
    if (K.empty()) return out;
    const int dim = K.dim();
    std::vector<int> offset(dim + 2, 0);
    for (int k = 0; k <= dim; ++k) offset[k + 1] = offset[k] + static_cast<int>(K.count(k));
    auto id = [&](int k, int i) { return offset[k] + i; };
    for (int k = 0; k <= dim; ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) out.barycenter_of[id(k, static_cast<int>(i))] = {k, static_cast<int>(i)};

    std::vector<VertexTuple> tops;
    std::vector<int> signs;
    for (std::size_t t = 0; t < K.count(dim); ++t) {
        VertexTuple perm = K.vertices(dim, static_cast<int>(t));
        do {
            VertexTuple child;
            for (int j = 0; j <= dim; ++j) {
                VertexTuple face(perm.begin(), perm.begin() + j + 1);
                child.push_back(id(j, K.index_of(face)));
            }
            int sign = permutation_sign(perm) * K.orientation(dim, static_cast<int>(t));
            if (dim == 0) signs.push_back(sign);
            tops.push_back(with_sign(child, sign));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.complex = SimplicialComplex::build(tops, ClosurePolicy::infer, signs);
    out.carrier.resize(dim + 1);
    for (int k = 0; k <= dim; ++k)
        for (std::size_t i = 0; i < out.complex.count(k); ++i) {
            const auto& vs = out.complex.vertices(k, static_cast<int>(i));
            out.carrier[k].push_back(out.barycenter_of.at(vs.back()));
        }
    return out;
}

SimplicialComplex boundary_restrict(const SimplicialComplex& K)
{
    if (K.dim() <= 0) return {};
    const int d = K.dim() - 1;
    std::vector<VertexTuple> tops;
    std::vector<int> signs;
    for (std::size_t f = 0; f < K.count(d); ++f) {
        if (!K.is_boundary_facet(static_cast<int>(f))) continue;
        int top = K.cofaces(d, static_cast<int>(f)).front();
        int sign = K.incidence({d + 1, top}, {d, static_cast<int>(f)}) * K.orientation(d, static_cast<int>(f));
        tops.push_back(with_sign(K.vertices(d, static_cast<int>(f)), sign));
        if (d == 0) signs.push_back(sign);
    }
    return SimplicialComplex::build(tops, ClosurePolicy::closed_oriented, signs);
}

Gluing glue_along_boundary(const SimplicialComplex& K1, const SimplicialComplex& K2,
                           const std::map<Vertex, Vertex>& matching)
{
    if (K1.empty() || K2.empty()) throw InvalidInput("cannot glue empty complexes");
    if (K1.dim() != K2.dim()) throw InvalidInput("glued complexes must have equal dimension");
    SimplicialComplex B1 = boundary_restrict(K1);
    SimplicialComplex B2 = boundary_restrict(K2);
    if (B1.empty() || B2.empty()) throw InvalidInput("non-isomorphic boundaries: a glued piece is closed");

    std::set<Vertex> image;
    for (const auto& [v2, v1] : matching) {
        if (!B2.find({v2})) throw InvalidInput("matched vertex " + std::to_string(v2) + " is not on the boundary of K2");
        if (!B1.find({v1})) throw InvalidInput("matched vertex " + std::to_string(v1) + " is not on the boundary of K1");
        if (!image.insert(v1).second) throw InvalidInput("vertex matching is not injective");
    }

    Gluing g;
    Vertex next = std::max(K1.max_vertex(), K2.max_vertex()) + 1;
    for (std::size_t i = 0; i < K2.count(0); ++i) {
        Vertex v = K2.vertex_label(static_cast<int>(i));
        auto m = matching.find(v);
        if (m != matching.end()) g.k2_vertex_map[v] = m->second;
        else if (K1.find({v}) || image.count(v)) g.k2_vertex_map[v] = next++;
        else g.k2_vertex_map[v] = v;
    }

    const int d = B1.dim();
    std::set<int> hit;
    for (std::size_t t = 0; t < B2.count(d); ++t) {
        const auto& vs = B2.vertices(d, static_cast<int>(t));
        if (!std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return matching.count(v) > 0; })) continue;
        VertexTuple mapped;
        for (Vertex v : B2.oriented(d, static_cast<int>(t))) mapped.push_back(matching.at(v));
        auto idx = B1.find(mapped);
        if (!idx) throw InvalidInput("non-isomorphic boundaries: " + tuple_str(mapped) + " is not a boundary face of K1");
        int s2 = (d == 0 ? B2.orientation(0, static_cast<int>(t)) : permutation_sign(mapped));
        if (s2 * B1.orientation(d, *idx) != -1)
            throw InvalidInput("orientation mismatch on glued face " + tuple_str(mapped));
        hit.insert(*idx);
    }
    for (std::size_t t = 0; t < B1.count(d); ++t) {
        const auto& vs = B1.vertices(d, static_cast<int>(t));
        if (std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return image.count(v) > 0; }) &&
            !hit.count(static_cast<int>(t)))
            throw InvalidInput("non-isomorphic boundaries: " + tuple_str(vs) + " has no partner in K2");
    }
    if (hit.empty()) throw InvalidInput("non-isomorphic boundaries: matching identifies no boundary face");

    std::vector<VertexTuple> tops = K1.oriented_tops();
    std::vector<int> signs = K1.top_signs();
    for (const auto& t : K2.oriented_tops()) {
        VertexTuple m;
        for (Vertex v : t) m.push_back(g.k2_vertex_map.at(v));
        tops.push_back(m);
    }
    for (int s : K2.top_signs()) signs.push_back(s);
    g.complex = SimplicialComplex::build(tops, ClosurePolicy::pseudomanifold, signs);
    return g;
}

std::pair<SimplicialComplex, Vertex> disjoint_union(const SimplicialComplex& K1, const SimplicialComplex& K2)
{
    if (K1.empty()) return {K2, 0};
    if (K2.empty()) return {K1, 0};
    if (K1.dim() != K2.dim()) throw InvalidInput("disjoint union needs equal dimensions");
    Vertex offset = K1.max_vertex() + 1 - K2.vertex_label(0);
    std::vector<VertexTuple> tops = K1.oriented_tops();
    std::vector<int> signs = K1.top_signs();
    for (auto t : K2.oriented_tops()) {
        for (auto& v : t) v += offset;
        tops.push_back(t);
    }
    for (int s : K2.top_signs()) signs.push_back(s);
    return {SimplicialComplex::build(tops, ClosurePolicy::infer, signs), offset};
}

SimplicialComplex relabel(const SimplicialComplex& K, const std::map<Vertex, Vertex>& map)
{
    std::vector<VertexTuple> tops = K.oriented_tops();
    for (auto& t : tops)
        for (auto& v : t) {
            auto it = map.find(v);
            if (it == map.end()) throw InvalidInput("relabel map misses vertex " + std::to_string(v));
            v = it->second;
        }
    return SimplicialComplex::build(tops, ClosurePolicy::infer, K.top_signs());
}

SimplicialComplex reverse_orientation(const SimplicialComplex& K)
{
    if (K.empty()) return K;
    std::vector<VertexTuple> tops = K.oriented_tops();
    std::vector<int> signs = K.top_signs();
    if (K.dim() == 0)
        for (auto& s : signs) s = -s;
    else
        for (auto& t : tops) std::swap(t[0], t[1]);
    return SimplicialComplex::build(tops, ClosurePolicy::infer, signs);
}

}  // namespace deligne
