#include "deligne/holonomy.hpp"

#include <algorithm>
#include <functional>

#include "deligne/errors.hpp"

namespace deligne {

template <class S>
HolonomyValue<S> flag_sum(const BasicCochain<S>& c, const IndexMap& rho)
{
    const auto& C = c.base();
    const auto& K = C.complex();
    const int p = c.degree();
    if (K.dim() != p)
        throw InvalidInput("holonomy needs a complex of dimension " + std::to_string(p) + ", got " +
                           std::to_string(K.dim()));
    check_index_map(C, rho);
    std::vector<std::vector<S>> terms(p + 1);
    HolonomyValue<S> h;
    int word[kMaxIndexLength];
    std::vector<int> chain(p + 1);
    std::function<void(int, int)> rec = [&](int n, int sign) {
        const int k = p - n;
        word[n] = rho(k, chain[n]);
        terms[n].push_back(sign > 0 ? c.eval(k, chain[n], std::span<const int>(word, n + 1))
                                    : S(-c.eval(k, chain[n], std::span<const int>(word, n + 1))));
        ++h.flag_count;
        if (k == 0) return;
        for (const auto& f : K.facets(k, chain[n])) {
            chain[n + 1] = f.index;
            rec(n + 1, sign * f.incidence);
        }
    };
    for (std::size_t t = 0; t < K.count(p); ++t) {
        chain[0] = static_cast<int>(t);
        rec(0, p == 0 ? K.top_signs()[t] : 1);
    }
    h.levels.resize(p + 1);
    for (int n = 0; n <= p; ++n) h.levels[n] = pairwise_sum(terms[n]);
    h.raw = pairwise_sum(h.levels);
    h.reduced = Arith<S>::reduce(h.raw);
    return h;
}

template <class S>
HolonomyValue<S> holonomy(const BasicCochain<S>& c, const IndexMap& rho)
{
    const auto& K = c.base().complex();
    if (K.dim() != c.degree())
        throw InvalidInput("holonomy needs a complex of dimension " + std::to_string(c.degree()) + ", got " +
                           std::to_string(K.dim()));
    if (K.manifold() != ManifoldFlag::closed_oriented)
        throw InvalidInput("holonomy needs a closed oriented complex (" + to_string(K.manifold()) + ")");
    if (!c.flagged_cocycle()) throw InvalidInput("holonomy needs a cochain flagged as cocycle");
    return flag_sum(c, rho);
}

template <class S>
HolonomyValue<S> local_action(const BasicCochain<S>& c, const IndexMap& rho)
{
    const auto& K = c.base().complex();
    if (K.dim() != c.degree())
        throw InvalidInput("local action needs a complex of dimension " + std::to_string(c.degree()) + ", got " +
                           std::to_string(K.dim()));
    if (K.manifold() == ManifoldFlag::none) throw InvalidInput("local action needs an oriented pseudomanifold");
    if (!c.flagged_cocycle()) throw InvalidInput("local action needs a cochain flagged as cocycle");
    return flag_sum(c, rho);
}

template <class S>
CurvatureValue<S> curvature_total(const BasicCochain<S>& c, const IndexMap& rho, double tol)
{
    using A = Arith<S>;
    const auto& C = c.base();
    const auto& K = C.complex();
    const int p = c.degree();
    if (K.dim() != p + 1)
        throw InvalidInput("curvature needs a complex of dimension " + std::to_string(p + 1) + ", got " +
                           std::to_string(K.dim()));
    if (K.manifold() != ManifoldFlag::closed_oriented) throw InvalidInput("curvature needs a closed oriented complex");
    if (!c.flagged_cocycle()) throw InvalidInput("curvature needs a cochain flagged as cocycle");
    check_index_map(C, rho);
    CurvatureValue<S> out;
    std::vector<S> terms;
    for (std::size_t t = 0; t < K.count(p + 1); ++t) {
        const int ti = static_cast<int>(t);
        int alpha = rho(p + 1, ti);
        S chosen = discrete_d(c, p + 1, ti, std::span<const int>(&alpha, 1));
        for (int beta : C.admissible(p + 1, ti)) {
            S other = discrete_d(c, p + 1, ti, std::span<const int>(&beta, 1));
            double spread = A::magnitude(S(other - chosen));
            out.index_dependence = std::max(out.index_dependence, spread);
            if (!A::within(S(other - chosen), tol))
                throw ValidationFailure("curvature depends on the admissible index at top simplex " +
                                            std::to_string(ti),
                                        spread);
        }
        terms.push_back(chosen);
    }
    out.total = pairwise_sum(terms);
    out.nearest_integer = A::nearest_multiple(out.total);
    out.integrality_defect = A::integrality_defect(out.total);
    return out;
}

std::int64_t chern_pairing(const ChernCocycle& n, const CoveredComplex& C, const IndexMap& rho)
{
    const auto& K = C.complex();
    const int q = n.length - 1;
    if (K.dim() != q) throw InvalidInput("pairing needs a complex of dimension " + std::to_string(q));
    if (K.manifold() != ManifoldFlag::closed_oriented) throw InvalidInput("pairing needs a closed oriented complex");
    check_index_map(C, rho);
    std::int64_t total = 0;
    int word[kMaxIndexLength];
    K.for_each_flag(0, [&](const int* chain, int len, int sign) {
        for (int j = 0; j < len; ++j) word[j] = rho(q - j, chain[j]);
        total += sign * n.eval(chain[len - 1], std::span<const int>(word, len));
    });
    return total;
}

#define DELIGNE_INSTANTIATE(S)                                                           \
    template HolonomyValue<S> flag_sum<S>(const BasicCochain<S>&, const IndexMap&);     \
    template HolonomyValue<S> holonomy<S>(const BasicCochain<S>&, const IndexMap&);     \
    template HolonomyValue<S> local_action<S>(const BasicCochain<S>&, const IndexMap&); \
    template CurvatureValue<S> curvature_total<S>(const BasicCochain<S>&, const IndexMap&, double);

DELIGNE_INSTANTIATE(double)
DELIGNE_INSTANTIATE(Rational)

}  // namespace deligne
