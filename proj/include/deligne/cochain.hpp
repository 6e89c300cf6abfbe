// Discrete Deligne cochains of degree p on a covered complex.
//
// Component C^k (k = 0..p) assigns a value to each k-simplex and each strictly
// increasing multi-index of length p-k+1 drawn from the simplex's admissible
// set. C^0 holds logarithm lifts, C^k for k >= 1 holds integrals over the
// simplex in its stored orientation. Evaluation at an arbitrary ordered
// multi-index is totally antisymmetric.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "deligne/cover.hpp"
#include "deligne/scalar.hpp"

namespace deligne {

constexpr int kMaxIndexLength = 10;

template <class S>
class BasicCochain {
public:
    BasicCochain() = default;
    /// Zero cochain.
    BasicCochain(CoveredPtr base, int degree);

    int degree() const { return degree_; }
    const CoveredComplex& base() const { return *base_; }
    const CoveredPtr& base_ptr() const { return base_; }
    int index_length(int k) const { return degree_ - k + 1; }
    /// Highest k with stored entries: min(p, dim).
    int top_level() const;

    /// Stored value at a strictly increasing admissible multi-index.
    const S& at(int k, int i, std::span<const int> sorted) const;
    S& at(int k, int i, std::span<const int> sorted);

    /// Antisymmetric evaluation at an ordered multi-index; repeated index gives 0.
    S eval(int k, int i, std::span<const int> ordered) const;

    /// Visit stored entries of simplex (k, i) in lexicographic multi-index order.
    template <class F>
    void for_each_entry(int k, int i, F&& fn) const;
    template <class F>
    void for_each_entry_mut(int k, int i, F&& fn);

    bool flagged_cocycle() const { return cocycle_; }
    void set_cocycle_flag(bool v) { cocycle_ = v; }

    bool operator==(const BasicCochain& o) const;

private:
    std::size_t slot(int k, int i, std::span<const int> sorted) const;
    template <class F>
    void visit(int k, int i, F&& fn) const;

    CoveredPtr base_;
    int degree_ = 0;
    bool cocycle_ = false;
    std::vector<std::vector<std::size_t>> offset_;
    std::vector<std::vector<S>> values_;
};

using Cochain = BasicCochain<double>;
using RationalCochain = BasicCochain<Rational>;

template <class S>
struct Entry {
    int k = 0;
    int simplex = 0;
    std::vector<int> indices;  // any order; sign absorbed on storage
    S value{};
};

template <class S>
BasicCochain<S> build_cochain(CoveredPtr base, int degree, const std::vector<Entry<S>>& entries);

/// (delta C^k)(sigma, I) for I of length p-k+2.
template <class S>
S cech_delta(const BasicCochain<S>& c, int k, int i, std::span<const int> I);

/// Sum over facets tau of the k-simplex sigma of incidence * C^{k-1}(tau, I).
template <class S>
S discrete_d(const BasicCochain<S>& c, int k, int i, std::span<const int> I);

struct CocycleFailure {
    std::string condition;  // "integrality" or "level"
    int k = 0;
    int simplex = 0;
    std::vector<int> indices;
    double residual = 0;
};

struct IntegralityWitness {
    int vertex = 0;  // vertex index
    std::vector<int> indices;
    std::int64_t value = 0;  // nearest integer of delta C^0 / period
    double defect = 0;
};

struct CocycleReport {
    int degree = 0;
    double tolerance = 0;
    bool exact = false;
    double integrality_worst = 0;
    std::vector<double> level_worst;  // entry k-1 for k = 1..p
    std::vector<CocycleFailure> failures;
    std::vector<IntegralityWitness> witnesses;  // nonzero integers only
    bool passed() const { return failures.empty(); }
    double worst() const;
};

template <class S>
CocycleReport validate_cocycle(const BasicCochain<S>& c, double tol);

/// Copy flagged as cocycle; throws ValidationFailure when validation fails.
template <class S>
BasicCochain<S> certify(const BasicCochain<S>& c, double tol);

template <class S>
BasicCochain<S> tensor(const BasicCochain<S>& a, const BasicCochain<S>& b);
template <class S>
BasicCochain<S> dual(const BasicCochain<S>& c);
template <class S>
BasicCochain<S> scale(const BasicCochain<S>& c, const S& factor);

/// D(b) for a degree-(p-1) cochain b.
template <class S>
BasicCochain<S> coboundary(const BasicCochain<S>& b);
/// c + D(b).
template <class S>
BasicCochain<S> exact_shift(const BasicCochain<S>& c, const BasicCochain<S>& b);

template <class S>
struct TrivializationReport {
    std::vector<double> level_worst;  // k = 0..p-1; level 0 compared modulo the period
    std::vector<CocycleFailure> failures;
    std::vector<S> top_residual;      // per p-simplex, at the minimal admissible index
    double index_dependence = 0;      // spread of the top residual over admissible indices
    S residual_total = S(0);
    bool trivial = false;
};

template <class S>
TrivializationReport<S> verify_trivialization(const BasicCochain<S>& c, const BasicCochain<S>& b, double tol);

/// Integer Cech cocycle n = -round(delta C^0 / period) at vertices.
struct ChernCocycle {
    int length = 0;  // multi-index length p+2
    std::vector<std::map<std::vector<int>, std::int64_t>> values;  // per vertex, sorted index -> n
    std::int64_t eval(int vertex, std::span<const int> ordered) const;
};

template <class S>
ChernCocycle chern_cocycle(const BasicCochain<S>& c, double tol);

/// Uniform random values in [-1, 1] (double) or small rationals (exact).
template <class S>
BasicCochain<S> random_cochain(CoveredPtr base, int degree, std::uint64_t seed);

/// Pull values back to target, whose vertex v corresponds to source vertex
/// vertex_map[v] (identity when the map is empty). Integrals pick up the
/// orientation sign between the two stored orientations.
template <class S>
BasicCochain<S> transfer_cochain(const BasicCochain<S>& src, CoveredPtr target,
                                 const std::map<Vertex, Vertex>& vertex_map = {});

/// Same data on the complex with every top simplex reversed.
template <class S>
BasicCochain<S> reverse_orientation(const BasicCochain<S>& c);

/// Cochain on the disjoint union of the two bases (second base shifted as in disjoint_union).
template <class S>
BasicCochain<S> disjoint_union(const BasicCochain<S>& a, const BasicCochain<S>& b);

/// Exact cochain in turns to floating point radians.
Cochain to_float(const RationalCochain& c);

// ---------------------------------------------------------------------------

namespace detail {
std::uint64_t binomial(int n, int k);
/// Sort in place tracking the parity; returns 0 on a repeated entry.
int sort_with_sign(int* v, int n);
}  // namespace detail

template <class S>
template <class F>
void BasicCochain<S>::visit(int k, int i, F&& fn) const
{
    const auto& adm = base_->admissible(k, i);
    const int a = static_cast<int>(adm.size());
    const int m = index_length(k);
    if (m > a || m <= 0) return;
    int pos[kMaxIndexLength];
    int idx[kMaxIndexLength];
    for (int j = 0; j < m; ++j) pos[j] = j;
    while (true) {
        std::size_t rank = 0;
        for (int j = 0; j < m; ++j) {
            idx[j] = adm[pos[j]];
            rank += detail::binomial(pos[j], j + 1);
        }
        fn(std::span<const int>(idx, m), offset_[k][i] + rank);
        int j = m - 1;
        while (j >= 0 && pos[j] == a - m + j) --j;
        if (j < 0) break;
        ++pos[j];
        for (int l = j + 1; l < m; ++l) pos[l] = pos[l - 1] + 1;
    }
}

template <class S>
template <class F>
void BasicCochain<S>::for_each_entry(int k, int i, F&& fn) const
{
    visit(k, i, [&](std::span<const int> I, std::size_t s) { fn(I, values_[k][s]); });
}

template <class S>
template <class F>
void BasicCochain<S>::for_each_entry_mut(int k, int i, F&& fn)
{
    visit(k, i, [&](std::span<const int> I, std::size_t s) { fn(I, values_[k][s]); });
}

extern template class BasicCochain<double>;
extern template class BasicCochain<Rational>;

}  // namespace deligne
