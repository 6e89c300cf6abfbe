#include "deligne/transgression.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "deligne/errors.hpp"

namespace deligne {

namespace {

template <class S>
void require_shape(const BasicCochain<S>& c, const char* what)
{
    const auto& K = c.base().complex();
    if (K.dim() != c.degree())
        throw InvalidInput(std::string(what) + " needs a complex of dimension " + std::to_string(c.degree()) +
                           ", got " + std::to_string(K.dim()));
    if (K.manifold() == ManifoldFlag::none) throw InvalidInput(std::string(what) + " needs an oriented pseudomanifold");
    if (!c.flagged_cocycle()) throw InvalidInput(std::string(what) + " needs a cochain flagged as cocycle");
}

template <class S>
S signed_value(int sign, const S& v)
{
    return sign > 0 ? v : S(-v);
}

/// Mixed-word sums grouped by the codimension-one simplex b of each flag.
/// fn(b, sign-weighted contribution) is called once per flag.
template <class S, class F>
void mixed_word_flags(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1, F&& fn)
{
    const auto& K = c.base().complex();
    const int p = c.degree();
    std::vector<int> chain(p + 1);
    int word[kMaxIndexLength];
    std::function<void(int, int)> rec = [&](int n, int sign) {
        const int k = p - n;
        S acc = S(0);
        for (int r = 1; r <= n; ++r) {
            int len = 0;
            for (int j = 1; j <= r; ++j) word[len++] = rho0(p - j, chain[j]);
            for (int j = r; j <= n; ++j) word[len++] = rho1(p - j, chain[j]);
            S v = c.eval(k, chain[n], std::span<const int>(word, len));
            if (r % 2) acc += v;
            else acc -= v;
        }
        fn(chain[1], signed_value(sign, acc));
        if (k == 0) return;
        for (const auto& f : K.facets(k, chain[n])) {
            chain[n + 1] = f.index;
            rec(n + 1, sign * f.incidence);
        }
    };
    for (std::size_t t = 0; t < K.count(p); ++t) {
        chain[0] = static_cast<int>(t);
        for (const auto& f : K.facets(p, static_cast<int>(t))) {
            chain[1] = f.index;
            rec(1, f.incidence);
        }
    }
}

template <class S>
void finish(TransitionValue<S>& v, std::vector<S>& bterms, std::vector<S>& iterms)
{
    v.census.boundary_flags = bterms.size();
    v.census.interior_flags = iterms.size();
    v.census.boundary_sum = pairwise_sum(bterms);
    v.census.interior_sum = pairwise_sum(iterms);
}

}  // namespace

template <class S>
TransitionValue<S> transition_general(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1)
{
    require_shape(c, "transition");
    const auto& K = c.base().complex();
    const int p = c.degree();
    HolonomyValue<S> h0 = local_action(c, rho0);
    HolonomyValue<S> h1 = local_action(c, rho1);
    TransitionValue<S> out;
    out.raw = h1.raw - h0.raw;
    out.reduced = Arith<S>::reduce(out.raw);

    std::vector<S> bterms, iterms;
    std::vector<int> chain(p + 1);
    int w0[kMaxIndexLength], w1[kMaxIndexLength];
    std::function<void(int, int, bool)> rec = [&](int n, int sign, bool touches) {
        const int k = p - n;
        w0[n] = rho0(k, chain[n]);
        w1[n] = rho1(k, chain[n]);
        S d = c.eval(k, chain[n], std::span<const int>(w1, n + 1)) - c.eval(k, chain[n], std::span<const int>(w0, n + 1));
        (touches ? bterms : iterms).push_back(signed_value(sign, d));
        if (k == 0) return;
        for (const auto& f : K.facets(k, chain[n])) {
            chain[n + 1] = f.index;
            bool t = (n == 0) ? K.is_boundary_facet(f.index) : touches;
            rec(n + 1, sign * f.incidence, t);
        }
    };
    for (std::size_t t = 0; t < K.count(p); ++t) {
        chain[0] = static_cast<int>(t);
        bool touches = false;
        for (const auto& f : K.facets(p, static_cast<int>(t))) touches = touches || K.is_boundary_facet(f.index);
        rec(0, 1, touches);
    }
    finish(out, bterms, iterms);
    return out;
}

template <class S>
TransitionValue<S> transition_boundary(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1)
{
    require_shape(c, "transition");
    check_index_map(c.base(), rho0);
    check_index_map(c.base(), rho1);
    const auto& K = c.base().complex();
    std::vector<S> bterms, iterms;
    mixed_word_flags(c, rho0, rho1, [&](int b, const S& v) { (K.is_boundary_facet(b) ? bterms : iterms).push_back(v); });
    TransitionValue<S> out;
    finish(out, bterms, iterms);
    out.raw = out.census.boundary_sum + out.census.interior_sum;
    out.reduced = Arith<S>::reduce(out.raw);
    return out;
}

template <class S>
EdgeFormulaValue<S> transition_p2_boundary(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1)
{
    if (c.degree() != 2) throw InvalidInput("the boundary edge formula needs degree 2");
    require_shape(c, "transition");
    check_index_map(c.base(), rho0);
    check_index_map(c.base(), rho1);
    const auto& K = c.base().complex();
    std::vector<S> terms;
    for (std::size_t e = 0; e < K.count(1); ++e) {
        const int ei = static_cast<int>(e);
        if (!K.is_boundary_facet(ei)) continue;
        const int b = K.cofaces(1, ei).front();
        const int s = K.incidence({2, b}, {1, ei});
        const int a0 = rho0(1, ei), a1 = rho1(1, ei);
        int w[3] = {a0, a1, 0};
        S acc = c.eval(1, ei, std::span<const int>(w, 2));
        for (const auto& f : K.facets(1, ei)) {
            const int v = f.index;
            int u1[3] = {a0, a1, rho1(0, v)};
            int u0[3] = {a0, rho0(0, v), rho1(0, v)};
            S d = c.eval(0, v, std::span<const int>(u1, 3)) - c.eval(0, v, std::span<const int>(u0, 3));
            acc += signed_value(f.incidence, d);
        }
        terms.push_back(signed_value(s, acc));
    }
    EdgeFormulaValue<S> out;
    out.value.raw = pairwise_sum(terms);
    out.value.reduced = Arith<S>::reduce(out.value.raw);
    out.value.census.boundary_flags = terms.size();
    out.value.census.boundary_sum = out.value.raw;
    TransitionValue<S> g = transition_general(c, rho0, rho1);
    TransitionValue<S> tb = transition_boundary(c, rho0, rho1);
    out.general = g.raw;
    out.agreement = circular_distance(out.value.raw, g.raw);
    out.interior_cancellation = std::fabs(Arith<S>::to_radians(tb.census.interior_sum));
    return out;
}

template <class S>
TripleValue<S> transgress_p3_triple(const BasicCochain<S>& c, const IndexMap& rho0, const IndexMap& rho1,
                                    const IndexMap& rho2, const std::set<int>& patch)
{
    if (c.degree() != 3) throw InvalidInput("the triple transition needs degree 3");
    require_shape(c, "transition");
    const auto& K = c.base().complex();
    std::set<int> faces;
    if (patch.empty()) {
        for (std::size_t f = 0; f < K.count(2); ++f)
            if (K.is_boundary_facet(static_cast<int>(f))) faces.insert(static_cast<int>(f));
    } else {
        for (int f : patch) {
            if (f < 0 || f >= static_cast<int>(K.count(2)) || !K.is_boundary_facet(f))
                throw InvalidInput("patch face " + std::to_string(f) + " is not a boundary face");
            faces.insert(f);
        }
    }

    TripleValue<S> out;
    out.patch_faces = faces.size();
    out.composed_general = transition_general(c, rho0, rho1).raw + transition_general(c, rho1, rho2).raw -
                           transition_general(c, rho0, rho2).raw;

    std::vector<S> terms;
    auto collect = [&](const IndexMap& a, const IndexMap& b, int sign) {
        mixed_word_flags(c, a, b, [&](int face, const S& v) {
            if (faces.count(face)) terms.push_back(signed_value(sign, v));
        });
    };
    collect(rho0, rho1, 1);
    collect(rho1, rho2, 1);
    collect(rho0, rho2, -1);
    out.composed_patch = pairwise_sum(terms);

    // Edges of the patch that meet exactly one patch face.
    std::map<int, std::vector<int>> edge_faces;
    for (int f : faces)
        for (const auto& e : K.facets(2, f)) edge_faces[e.index].push_back(f);
    std::vector<S> eterms;
    for (const auto& [e, fs] : edge_faces) {
        if (fs.size() != 1) continue;
        ++out.patch_boundary_edges;
        const int b = fs.front();
        const int top = K.cofaces(2, b).front();
        const int s = K.incidence({3, top}, {2, b}) * K.incidence({2, b}, {1, e});
        const int e0 = rho0(1, e), e1 = rho1(1, e), e2 = rho2(1, e);
        int w[4] = {e0, e1, e2, 0};
        S acc = S(-c.eval(1, e, std::span<const int>(w, 3)));
        for (const auto& f : K.facets(1, e)) {
            const int v = f.index;
            const int v0 = rho0(0, v), v1 = rho1(0, v), v2 = rho2(0, v);
            int a[4] = {e0, v0, v1, v2};
            int b2[4] = {e0, e1, v1, v2};
            int d[4] = {e0, e1, e2, v2};
            S x = c.eval(0, v, std::span<const int>(b2, 4)) - c.eval(0, v, std::span<const int>(a, 4)) -
                  c.eval(0, v, std::span<const int>(d, 4));
            acc += signed_value(f.incidence, x);
        }
        eterms.push_back(signed_value(s, acc));
    }
    out.edge_formula = pairwise_sum(eterms);
    out.agreement = circular_distance(out.composed_patch, out.edge_formula);
    return out;
}

#define DELIGNE_INSTANTIATE(S)                                                                                  \
    template TransitionValue<S> transition_general<S>(const BasicCochain<S>&, const IndexMap&, const IndexMap&);  \
    template TransitionValue<S> transition_boundary<S>(const BasicCochain<S>&, const IndexMap&, const IndexMap&); \
    template EdgeFormulaValue<S> transition_p2_boundary<S>(const BasicCochain<S>&, const IndexMap&,               \
                                                           const IndexMap&);                                      \
    template TripleValue<S> transgress_p3_triple<S>(const BasicCochain<S>&, const IndexMap&, const IndexMap&,     \
                                                    const IndexMap&, const std::set<int>&);

DELIGNE_INSTANTIATE(double)
DELIGNE_INSTANTIATE(Rational)

}  // namespace deligne
