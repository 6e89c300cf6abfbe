#include "deligne/cochain.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "deligne/errors.hpp"

namespace deligne {

namespace detail {

std::uint64_t binomial(int n, int k)
{
    static const auto table = [] {
        std::vector<std::vector<std::uint64_t>> t(65, std::vector<std::uint64_t>(65, 0));
        for (int a = 0; a <= 64; ++a) {
            t[a][0] = 1;
            for (int b = 1; b <= a; ++b) t[a][b] = t[a - 1][b - 1] + (b <= a - 1 ? t[a - 1][b] : 0);
        }
        return t;
    }();
    if (k < 0 || n < 0 || k > n) return 0;
    return table[n][k];
}

int sort_with_sign(int* v, int n)
{
    int sign = 1;
    for (int i = 1; i < n; ++i) {
        int x = v[i];
        int j = i - 1;
        while (j >= 0 && v[j] > x) {
            v[j + 1] = v[j];
            --j;
            sign = -sign;
        }
        v[j + 1] = x;
    }
    for (int i = 1; i < n; ++i)
        if (v[i] == v[i - 1]) return 0;
    return sign;
}

}  // namespace detail

namespace {

std::string index_str(std::span<const int> I)
{
    std::string s = "(";
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(I[i]);
    }
    return s + ")";
}

std::string where(int k, int i, std::span<const int> I)
{
    return "simplex " + std::to_string(k) + "/" + std::to_string(i) + " index " + index_str(I);
}

template <class S>
S sign_times(int sign, const S& v)
{
    if (sign > 0) return v;
    if (sign < 0) return S(-v);
    return S(0);
}

/// Enumerate strictly increasing multi-indices of length m from adm.
template <class F>
void for_each_combination(const std::vector<int>& adm, int m, F&& fn)
{
    const int a = static_cast<int>(adm.size());
    if (m > a || m <= 0) return;
    int pos[kMaxIndexLength];
    int idx[kMaxIndexLength];
    for (int j = 0; j < m; ++j) pos[j] = j;
    while (true) {
        for (int j = 0; j < m; ++j) idx[j] = adm[pos[j]];
        fn(std::span<const int>(idx, m));
        int j = m - 1;
        while (j >= 0 && pos[j] == a - m + j) --j;
        if (j < 0) break;
        ++pos[j];
        for (int l = j + 1; l < m; ++l) pos[l] = pos[l - 1] + 1;
    }
}

void require_same_base(const CoveredComplex& a, const CoveredComplex& b)
{
    if (!a.same_as(b)) throw InvalidInput("cochains live on different covered complexes");
}

}  // namespace

template <class S>
BasicCochain<S>::BasicCochain(CoveredPtr base, int degree) : base_(std::move(base)), degree_(degree)
{
    if (!base_) throw InvalidInput("cochain needs a covered complex");
    if (degree_ < 0) throw InvalidInput("cochain degree must be non-negative");
    if (degree_ + 2 > kMaxIndexLength) throw InvalidInput("cochain degree too large");
    const auto& K = base_->complex();
    const int levels = degree_ + 1;
    offset_.resize(levels);
    values_.resize(levels);
    for (int k = 0; k < levels; ++k) {
        std::size_t n = K.count(k);
        offset_[k].assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            int a = static_cast<int>(base_->admissible(k, static_cast<int>(i)).size());
            offset_[k][i + 1] = offset_[k][i] + detail::binomial(a, index_length(k));
        }
        values_[k].assign(offset_[k][n], S(0));
    }
}

template <class S>
int BasicCochain<S>::top_level() const
{
    return std::min(degree_, base_->dim());
}

template <class S>
std::size_t BasicCochain<S>::slot(int k, int i, std::span<const int> sorted) const
{
    if (k < 0 || k > degree_ || i < 0 || i >= static_cast<int>(base_->complex().count(k)))
        throw InvalidInput("cochain access outside the complex");
    if (static_cast<int>(sorted.size()) != index_length(k))
        throw InvalidInput("multi-index of wrong length at " + where(k, i, sorted));
    const auto& adm = base_->admissible(k, i);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        auto it = std::lower_bound(adm.begin(), adm.end(), sorted[j]);
        if (it == adm.end() || *it != sorted[j])
            throw InvalidInput("inadmissible cover index at " + where(k, i, sorted));
        rank += detail::binomial(static_cast<int>(it - adm.begin()), static_cast<int>(j) + 1);
    }
    return offset_[k][i] + rank;
}

template <class S>
const S& BasicCochain<S>::at(int k, int i, std::span<const int> sorted) const
{
    return values_[k][slot(k, i, sorted)];
}

template <class S>
S& BasicCochain<S>::at(int k, int i, std::span<const int> sorted)
{
    return values_[k][slot(k, i, sorted)];
}

template <class S>
S BasicCochain<S>::eval(int k, int i, std::span<const int> ordered) const
{
    int buf[kMaxIndexLength];
    const int m = static_cast<int>(ordered.size());
    if (m > kMaxIndexLength) throw InvalidInput("multi-index too long");
    std::copy(ordered.begin(), ordered.end(), buf);
    int sign = detail::sort_with_sign(buf, m);
    if (sign == 0) return S(0);
    return sign_times(sign, at(k, i, std::span<const int>(buf, m)));
}

template <class S>
bool BasicCochain<S>::operator==(const BasicCochain& o) const
{
    return degree_ == o.degree_ && base_->same_as(*o.base_) && values_ == o.values_;
}

template class BasicCochain<double>;
template class BasicCochain<Rational>;

template <class S>
BasicCochain<S> build_cochain(CoveredPtr base, int degree, const std::vector<Entry<S>>& entries)
{
    BasicCochain<S> c(base, degree);
    std::map<std::tuple<int, int, std::vector<int>>, S> seen;
    for (const auto& e : entries) {
        if (e.k < 0 || e.k > degree) throw InvalidInput("entry level out of range");
        if (static_cast<int>(e.indices.size()) != c.index_length(e.k))
            throw InvalidInput("entry multi-index has wrong length at level " + std::to_string(e.k));
        std::vector<int> idx = e.indices;
        int sign = detail::sort_with_sign(idx.data(), static_cast<int>(idx.size()));
        if (sign == 0) throw InvalidInput("entry with repeated cover index at " + where(e.k, e.simplex, e.indices));
        S v = sign_times(sign, e.value);
        auto key = std::make_tuple(e.k, e.simplex, idx);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second != v) throw InvalidInput("conflicting duplicate entries at " + where(e.k, e.simplex, idx));
            continue;
        }
        seen.emplace(key, v);
        c.at(e.k, e.simplex, idx) = v;
    }
    return c;
}

template <class S>
S cech_delta(const BasicCochain<S>& c, int k, int i, std::span<const int> I)
{
    const int n = static_cast<int>(I.size());
    if (n != c.index_length(k) + 1) throw InvalidInput("cech_delta: multi-index of wrong length");
    int buf[kMaxIndexLength];
    S total = S(0);
    for (int j = 0; j < n; ++j) {
        int m = 0;
        for (int l = 0; l < n; ++l)
            if (l != j) buf[m++] = I[l];
        S v = c.eval(k, i, std::span<const int>(buf, m));
        if (j % 2) total -= v;
        else total += v;
    }
    return total;
}

template <class S>
S discrete_d(const BasicCochain<S>& c, int k, int i, std::span<const int> I)
{
    if (k < 1) throw InvalidInput("discrete_d needs a simplex of dimension at least 1");
    S total = S(0);
    for (const auto& f : c.base().complex().facets(k, i)) {
        S v = c.eval(k - 1, f.index, I);
        if (f.incidence > 0) total += v;
        else total -= v;
    }
    return total;
}

double CocycleReport::worst() const
{
    double w = integrality_worst;
    for (double x : level_worst) w = std::max(w, x);
    return w;
}

template <class S>
CocycleReport validate_cocycle(const BasicCochain<S>& c, double tol)
{
    using A = Arith<S>;
    CocycleReport r;
    r.degree = c.degree();
    r.tolerance = tol;
    r.exact = A::exact;
    const auto& C = c.base();
    const auto& K = C.complex();
    const int p = c.degree();
    r.level_worst.assign(p, 0.0);

    for (std::size_t v = 0; v < K.count(0); ++v) {
        const int vi = static_cast<int>(v);
        for_each_combination(C.admissible(0, vi), p + 2, [&](std::span<const int> J) {
            S x = cech_delta(c, 0, vi, J);
            double defect = A::integrality_defect(x);
            r.integrality_worst = std::max(r.integrality_worst, defect);
            std::int64_t n = A::nearest_multiple(x);
            bool ok = A::exact ? (defect == 0.0 && x == A::period() * S(n)) : defect <= tol;
            if (n != 0 || !ok) r.witnesses.push_back({vi, {J.begin(), J.end()}, n, defect});
            if (!ok) r.failures.push_back({"integrality", 0, vi, {J.begin(), J.end()}, defect});
        });
    }
    for (int k = 1; k <= std::min(p, K.dim()); ++k) {
        const int sign = ((p - k) % 2) ? -1 : 1;
        for (std::size_t s = 0; s < K.count(k); ++s) {
            const int si = static_cast<int>(s);
            for_each_combination(C.admissible(k, si), p - k + 2, [&](std::span<const int> I) {
                S d = discrete_d(c, k, si, I);
                S res = cech_delta(c, k, si, I) - (sign > 0 ? d : S(-d));
                double mag = A::magnitude(res);
                r.level_worst[k - 1] = std::max(r.level_worst[k - 1], mag);
                if (!A::within(res, tol)) r.failures.push_back({"level", k, si, {I.begin(), I.end()}, mag});
            });
        }
    }
    return r;
}

template <class S>
BasicCochain<S> certify(const BasicCochain<S>& c, double tol)
{
    CocycleReport r = validate_cocycle(c, tol);
    if (!r.passed()) {
        std::ostringstream os;
        const auto& f = r.failures.front();
        os << "not a cocycle: worst residual " << r.worst() << ", first failure " << f.condition << " at "
           << where(f.k, f.simplex, f.indices);
        throw ValidationFailure(os.str(), r.worst());
    }
    BasicCochain<S> out = c;
    out.set_cocycle_flag(true);
    return out;
}

template <class S>
BasicCochain<S> tensor(const BasicCochain<S>& a, const BasicCochain<S>& b)
{
    require_same_base(a.base(), b.base());
    if (a.degree() != b.degree()) throw InvalidInput("tensor needs equal degrees");
    BasicCochain<S> out = a;
    const auto& K = a.base().complex();
    for (int k = 0; k <= a.top_level(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            const int ii = static_cast<int>(i);
            out.for_each_entry_mut(k, ii, [&](std::span<const int> I, S& v) { v += b.at(k, ii, I); });
        }
    out.set_cocycle_flag(a.flagged_cocycle() && b.flagged_cocycle());
    return out;
}

template <class S>
BasicCochain<S> scale(const BasicCochain<S>& c, const S& factor)
{
    BasicCochain<S> out = c;
    const auto& K = c.base().complex();
    for (int k = 0; k <= c.top_level(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i)
            out.for_each_entry_mut(k, static_cast<int>(i), [&](std::span<const int>, S& v) { v *= factor; });
    out.set_cocycle_flag(false);
    return out;
}

template <class S>
BasicCochain<S> dual(const BasicCochain<S>& c)
{
    BasicCochain<S> out = scale(c, S(-1));
    out.set_cocycle_flag(c.flagged_cocycle());
    return out;
}

template <class S>
BasicCochain<S> coboundary(const BasicCochain<S>& b)
{
    const int p = b.degree() + 1;
    BasicCochain<S> out(b.base_ptr(), p);
    const auto& C = b.base();
    const auto& K = C.complex();
    for (int k = 0; k <= out.top_level(); ++k) {
        const int sign = ((p - k) % 2) ? -1 : 1;
        for (std::size_t i = 0; i < K.count(k); ++i) {
            const int ii = static_cast<int>(i);
            out.for_each_entry_mut(k, ii, [&](std::span<const int> I, S& v) {
                S x = S(0);
                if (k <= p - 1) x += cech_delta(b, k, ii, I);
                if (k >= 1) {
                    S d = discrete_d(b, k, ii, I);
                    if (sign > 0) x += d;
                    else x -= d;
                }
                v = x;
            });
        }
    }
    out.set_cocycle_flag(true);
    return out;
}

template <class S>
BasicCochain<S> exact_shift(const BasicCochain<S>& c, const BasicCochain<S>& b)
{
    require_same_base(c.base(), b.base());
    if (b.degree() + 1 != c.degree()) throw InvalidInput("exact_shift needs b of degree p-1");
    BasicCochain<S> out = tensor(c, coboundary(b));
    out.set_cocycle_flag(c.flagged_cocycle());
    return out;
}

template <class S>
TrivializationReport<S> verify_trivialization(const BasicCochain<S>& c, const BasicCochain<S>& b, double tol)
{
    using A = Arith<S>;
    require_same_base(c.base(), b.base());
    if (b.degree() + 1 != c.degree()) throw InvalidInput("trivialization needs b of degree p-1");
    const int p = c.degree();
    const auto& C = c.base();
    const auto& K = C.complex();
    BasicCochain<S> D = coboundary(b);
    TrivializationReport<S> r;
    r.level_worst.assign(p, 0.0);
    for (int k = 0; k <= std::min(p - 1, K.dim()); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            const int ii = static_cast<int>(i);
            c.for_each_entry(k, ii, [&](std::span<const int> I, const S& v) {
                S diff = v - D.at(k, ii, I);
                double mag;
                bool ok;
                if (k == 0) {
                    mag = A::integrality_defect(diff) * A::to_radians(A::period());
                    ok = A::exact ? mag == 0.0 : mag <= tol;
                } else {
                    mag = A::magnitude(diff);
                    ok = A::within(diff, tol);
                }
                r.level_worst[k] = std::max(r.level_worst[k], mag);
                if (!ok) r.failures.push_back({"level", k, ii, {I.begin(), I.end()}, mag});
            });
        }
    if (K.dim() >= p) {
        std::vector<S> tops;
        for (std::size_t i = 0; i < K.count(p); ++i) {
            const int ii = static_cast<int>(i);
            bool first = true;
            S ref = S(0);
            c.for_each_entry(p, ii, [&](std::span<const int> I, const S& v) {
                S res = v - D.at(p, ii, I);
                if (first) {
                    ref = res;
                    first = false;
                } else {
                    r.index_dependence = std::max(r.index_dependence, A::magnitude(S(res - ref)));
                }
            });
            r.top_residual.push_back(ref);
        }
        if (K.dim() == p) r.residual_total = pairwise_sum(r.top_residual);
    }
    bool tops_ok = true;
    for (const auto& x : r.top_residual) tops_ok = tops_ok && A::within(x, tol);
    r.trivial = r.failures.empty() && tops_ok;
    return r;
}

std::int64_t ChernCocycle::eval(int vertex, std::span<const int> ordered) const
{
    int buf[kMaxIndexLength];
    const int m = static_cast<int>(ordered.size());
    std::copy(ordered.begin(), ordered.end(), buf);
    int sign = detail::sort_with_sign(buf, m);
    if (sign == 0) return 0;
    const auto& vals = values[vertex];
    auto it = vals.find(std::vector<int>(buf, buf + m));
    if (it == vals.end()) throw InvalidInput("Chern cocycle evaluated at an inadmissible index");
    return sign * it->second;
}

template <class S>
ChernCocycle chern_cocycle(const BasicCochain<S>& c, double tol)
{
    using A = Arith<S>;
    const auto& C = c.base();
    const auto& K = C.complex();
    const int p = c.degree();
    ChernCocycle n;
    n.length = p + 2;
    n.values.resize(K.count(0));
    for (std::size_t v = 0; v < K.count(0); ++v) {
        const int vi = static_cast<int>(v);
        for_each_combination(C.admissible(0, vi), p + 2, [&](std::span<const int> J) {
            S x = cech_delta(c, 0, vi, J);
            double defect = A::integrality_defect(x);
            if ((A::exact && defect != 0.0) || defect > tol)
                throw ValidationFailure("integrality violated at " + where(0, vi, J), defect);
            n.values[v][std::vector<int>(J.begin(), J.end())] = -A::nearest_multiple(x);
        });
    }
    for (std::size_t v = 0; v < K.count(0); ++v) {
        const int vi = static_cast<int>(v);
        for_each_combination(C.admissible(0, vi), p + 3, [&](std::span<const int> L) {
            std::int64_t s = 0;
            int buf[kMaxIndexLength];
            for (int j = 0; j < p + 3; ++j) {
                int m = 0;
                for (int l = 0; l < p + 3; ++l)
                    if (l != j) buf[m++] = L[l];
                std::int64_t x = n.eval(vi, std::span<const int>(buf, m));
                s += (j % 2) ? -x : x;
            }
            if (s != 0) throw ValidationFailure("integer cocycle is not closed at " + where(0, vi, L));
        });
    }
    return n;
}

template <>
BasicCochain<double> random_cochain<double>(CoveredPtr base, int degree, std::uint64_t seed)
{
    BasicCochain<double> c(base, degree);
    std::mt19937_64 rng(seed);
    const auto& K = base->complex();
    for (int k = 0; k <= c.top_level(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i)
            c.for_each_entry_mut(k, static_cast<int>(i), [&](std::span<const int>, double& v) {
                v = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
            });
    return c;
}

template <>
BasicCochain<Rational> random_cochain<Rational>(CoveredPtr base, int degree, std::uint64_t seed)
{
    BasicCochain<Rational> c(base, degree);
    std::mt19937_64 rng(seed);
    const auto& K = base->complex();
    for (int k = 0; k <= c.top_level(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i)
            c.for_each_entry_mut(k, static_cast<int>(i), [&](std::span<const int>, Rational& v) {
                long num = static_cast<long>(rng() % 25) - 12;
                long den = static_cast<long>(rng() % 12) + 1;
                v = Rational(num, den);
            });
    return c;
}

template <class S>
BasicCochain<S> transfer_cochain(const BasicCochain<S>& src, CoveredPtr target, const std::map<Vertex, Vertex>& vertex_map)
{
    BasicCochain<S> out(target, src.degree());
    const auto& T = target->complex();
    const auto& K = src.base().complex();
    for (int k = 0; k <= out.top_level(); ++k)
        for (std::size_t i = 0; i < T.count(k); ++i) {
            const int ii = static_cast<int>(i);
            VertexTuple t = T.oriented(k, ii);
            if (!vertex_map.empty())
                for (auto& v : t) {
                    auto it = vertex_map.find(v);
                    if (it == vertex_map.end()) throw InvalidInput("vertex map misses vertex " + std::to_string(v));
                    v = it->second;
                }
            auto j = K.find(t);
            if (!j) throw InvalidInput("target simplex has no counterpart in the source complex");
            int sign = 1;
            if (k >= 1) sign = permutation_sign(t) * K.orientation(k, *j);
            out.for_each_entry_mut(k, ii, [&](std::span<const int> I, S& v) { v = sign_times(sign, src.at(k, *j, I)); });
        }
    out.set_cocycle_flag(src.flagged_cocycle() && out.top_level() == src.top_level());
    return out;
}

template <class S>
BasicCochain<S> reverse_orientation(const BasicCochain<S>& c)
{
    const auto& C = c.base();
    std::vector<std::vector<std::vector<int>>> adm(C.dim() + 1);
    for (int k = 0; k <= C.dim(); ++k)
        for (std::size_t i = 0; i < C.complex().count(k); ++i) adm[k].push_back(C.admissible(k, static_cast<int>(i)));
    auto base = std::make_shared<const CoveredComplex>(reverse_orientation(C.complex()), C.num_sets(), adm);
    BasicCochain<S> out = transfer_cochain(c, base);
    // integrals over top simplices change sign with their orientation
    out.set_cocycle_flag(c.flagged_cocycle());
    return out;
}

template <class S>
BasicCochain<S> disjoint_union(const BasicCochain<S>& a, const BasicCochain<S>& b)
{
    if (a.degree() != b.degree()) throw InvalidInput("disjoint union needs equal degrees");
    const auto& Ca = a.base();
    const auto& Cb = b.base();
    auto [K, offset] = disjoint_union(Ca.complex(), Cb.complex());
    std::vector<std::vector<std::vector<int>>> adm(K.dim() + 1);
    for (int k = 0; k <= K.dim(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            VertexTuple t = K.vertices(k, static_cast<int>(i));
            auto ja = Ca.complex().find(t);
            if (ja) {
                adm[k].push_back(Ca.admissible(k, *ja));
                continue;
            }
            for (auto& v : t) v -= offset;
            adm[k].push_back(Cb.admissible(k, Cb.complex().index_of(t)));
        }
    auto base = std::make_shared<const CoveredComplex>(K, std::max(Ca.num_sets(), Cb.num_sets()), adm);
    BasicCochain<S> out(base, a.degree());
    for (int k = 0; k <= out.top_level(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            const int ii = static_cast<int>(i);
            VertexTuple t = K.vertices(k, ii);
            const BasicCochain<S>* src = &a;
            auto j = Ca.complex().find(t);
            if (!j) {
                for (auto& v : t) v -= offset;
                src = &b;
                j = Cb.complex().find(t);
            }
            out.for_each_entry_mut(k, ii, [&](std::span<const int> I, S& v) { v = src->at(k, *j, I); });
        }
    out.set_cocycle_flag(a.flagged_cocycle() && b.flagged_cocycle());
    return out;
}

Cochain to_float(const RationalCochain& c)
{
    Cochain out(c.base_ptr(), c.degree());
    const auto& K = c.base().complex();
    for (int k = 0; k <= c.top_level(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            const int ii = static_cast<int>(i);
            out.for_each_entry_mut(k, ii, [&](std::span<const int> I, double& v) {
                v = Arith<Rational>::to_radians(c.at(k, ii, I));
            });
        }
    out.set_cocycle_flag(c.flagged_cocycle());
    return out;
}

#define DELIGNE_INSTANTIATE(S)                                                                                   \
    template BasicCochain<S> build_cochain<S>(CoveredPtr, int, const std::vector<Entry<S>>&);                  \
    template S cech_delta<S>(const BasicCochain<S>&, int, int, std::span<const int>);                          \
    template S discrete_d<S>(const BasicCochain<S>&, int, int, std::span<const int>);                          \
    template CocycleReport validate_cocycle<S>(const BasicCochain<S>&, double);                                \
    template BasicCochain<S> certify<S>(const BasicCochain<S>&, double);                                       \
    template BasicCochain<S> tensor<S>(const BasicCochain<S>&, const BasicCochain<S>&);                        \
    template BasicCochain<S> dual<S>(const BasicCochain<S>&);                                                  \
    template BasicCochain<S> scale<S>(const BasicCochain<S>&, const S&);                                       \
    template BasicCochain<S> coboundary<S>(const BasicCochain<S>&);                                            \
    template BasicCochain<S> exact_shift<S>(const BasicCochain<S>&, const BasicCochain<S>&);                   \
    template TrivializationReport<S> verify_trivialization<S>(const BasicCochain<S>&, const BasicCochain<S>&, \
                                                              double);                                         \
    template ChernCocycle chern_cocycle<S>(const BasicCochain<S>&, double);                                    \
    template BasicCochain<S> transfer_cochain<S>(const BasicCochain<S>&, CoveredPtr,                           \
                                                 const std::map<Vertex, Vertex>&);                             \
    template BasicCochain<S> reverse_orientation<S>(const BasicCochain<S>&);                                   \
    template BasicCochain<S> disjoint_union<S>(const BasicCochain<S>&, const BasicCochain<S>&);

DELIGNE_INSTANTIATE(double)
DELIGNE_INSTANTIATE(Rational)

}  // namespace deligne
