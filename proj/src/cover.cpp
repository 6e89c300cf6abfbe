#include "deligne/cover.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "deligne/errors.hpp"

namespace deligne {

CoveredComplex::CoveredComplex(SimplicialComplex K, int num_sets,
                               std::vector<std::vector<std::vector<int>>> admissible)
    : complex_(std::move(K)), num_sets_(num_sets), admissible_(std::move(admissible))
{
    if (num_sets_ < 1) throw InvalidInput("num_sets must be at least 1");
    if (num_sets_ > 64) throw InvalidInput("at most 64 cover sets are supported");
    const int dim = complex_.dim();
    if (static_cast<int>(admissible_.size()) != dim + 1) throw InvalidInput("admissible sets do not match the complex");
    for (int k = 0; k <= dim; ++k) {
        if (admissible_[k].size() != complex_.count(k)) throw InvalidInput("admissible sets do not match the complex");
        for (std::size_t i = 0; i < complex_.count(k); ++i) {
            auto& a = admissible_[k][i];
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
            if (a.empty())
                throw InvalidInput("empty admissible set at simplex " + std::to_string(k) + "/" + std::to_string(i) +
                                   " (triangulation not subordinate to the cover)");
            if (a.front() < 0 || a.back() >= num_sets_) throw InvalidInput("cover index out of range");
        }
    }
    for (int k = 1; k <= dim; ++k)
        for (std::size_t i = 0; i < complex_.count(k); ++i)
            for (const auto& f : complex_.facets(k, static_cast<int>(i))) {
                const auto& big = admissible_[k][i];
                const auto& small = admissible_[k - 1][f.index];
                if (!std::includes(small.begin(), small.end(), big.begin(), big.end()))
                    throw InvalidInput("admissible sets are not monotone at simplex " + std::to_string(k) + "/" +
                                       std::to_string(i));
            }
}

bool CoveredComplex::admits(int k, int i, int alpha) const
{
    const auto& a = admissible_[k][i];
    return std::binary_search(a.begin(), a.end(), alpha);
}

bool CoveredComplex::same_as(const CoveredComplex& other) const
{
    if (this == &other) return true;
    if (num_sets_ != other.num_sets_ || dim() != other.dim()) return false;
    if (complex_.oriented_tops() != other.complex_.oriented_tops()) return false;
    if (complex_.top_signs() != other.complex_.top_signs()) return false;
    return admissible_ == other.admissible_;
}

CoveredComplex attach_cover(const SimplicialComplex& K, int num_sets, const std::vector<std::vector<int>>& admissible_top)
{
    const int dim = K.dim();
    std::vector<std::vector<std::vector<int>>> adm(dim + 1);
    if (dim < 0) return CoveredComplex(K, num_sets, adm);
    if (admissible_top.size() != K.count(dim))
        throw InvalidInput("cover assigns " + std::to_string(admissible_top.size()) + " top sets, complex has " +
                           std::to_string(K.count(dim)));
    for (int k = 0; k <= dim; ++k) adm[k].resize(K.count(k));
    adm[dim] = admissible_top;
    for (int k = dim; k >= 1; --k)
        for (std::size_t i = 0; i < K.count(k); ++i)
            for (const auto& f : K.facets(k, static_cast<int>(i))) {
                auto& dst = adm[k - 1][f.index];
                dst.insert(dst.end(), adm[k][i].begin(), adm[k][i].end());
            }
    return CoveredComplex(K, num_sets, std::move(adm));
}

void check_index_map(const CoveredComplex& C, const IndexMap& rho)
{
    const auto& d = rho.data();
    if (static_cast<int>(d.size()) != C.dim() + 1) throw InvalidInput("index map does not match the complex");
    for (int k = 0; k <= C.dim(); ++k) {
        if (d[k].size() != C.complex().count(k)) throw InvalidInput("index map does not match the complex");
        for (std::size_t i = 0; i < d[k].size(); ++i)
            if (!C.admits(k, static_cast<int>(i), d[k][i]))
                throw InvalidInput("index map value " + std::to_string(d[k][i]) + " not admissible at " +
                                   std::to_string(k) + "/" + std::to_string(i));
    }
}

IndexMap default_index_map(const CoveredComplex& C)
{
    std::vector<std::vector<int>> rho(C.dim() + 1);
    for (int k = 0; k <= C.dim(); ++k)
        for (std::size_t i = 0; i < C.complex().count(k); ++i)
            rho[k].push_back(C.admissible(k, static_cast<int>(i)).front());
    return IndexMap(std::move(rho));
}

IndexMap random_index_map(const CoveredComplex& C, std::uint64_t seed, const std::map<SimplexId, int>& frozen)
{
    for (const auto& [id, v] : frozen) {
        if (id.dim < 0 || id.dim > C.dim() || id.index < 0 ||
            id.index >= static_cast<int>(C.complex().count(id.dim)))
            throw InvalidInput("frozen simplex does not exist");
        if (!C.admits(id.dim, id.index, v))
            throw InvalidInput("frozen value " + std::to_string(v) + " not admissible at " + std::to_string(id.dim) +
                               "/" + std::to_string(id.index));
    }
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> rho(C.dim() + 1);
    for (int k = 0; k <= C.dim(); ++k)
        for (std::size_t i = 0; i < C.complex().count(k); ++i) {
            const auto& a = C.admissible(k, static_cast<int>(i));
            // Draw for every simplex so that frozen entries do not shift the stream.
            int pick = a[static_cast<std::size_t>(rng() % a.size())];
            auto it = frozen.find({k, static_cast<int>(i)});
            rho[k].push_back(it == frozen.end() ? pick : it->second);
        }
    return IndexMap(std::move(rho));
}

IndexMap random_interior_perturbation(const CoveredComplex& C, const IndexMap& base, std::uint64_t seed)
{
    std::map<SimplexId, int> frozen;
    const auto& K = C.complex();
    for (int k = 0; k < K.dim(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i)
            if (K.on_boundary(k, static_cast<int>(i))) frozen[{k, static_cast<int>(i)}] = base(k, static_cast<int>(i));
    return random_index_map(C, seed, frozen);
}

CoveredComplex restrict_cover(const CoveredComplex& C, const SimplicialComplex& sub)
{
    std::vector<std::vector<std::vector<int>>> adm(sub.dim() + 1);
    for (int k = 0; k <= sub.dim(); ++k)
        for (std::size_t i = 0; i < sub.count(k); ++i) {
            int j = C.complex().index_of(sub.vertices(k, static_cast<int>(i)));
            adm[k].push_back(C.admissible(k, j));
        }
    return CoveredComplex(sub, C.num_sets(), std::move(adm));
}

IndexMap restrict_index_map(const CoveredComplex& C, const IndexMap& rho, const CoveredComplex& sub)
{
    std::vector<std::vector<int>> out(sub.dim() + 1);
    for (int k = 0; k <= sub.dim(); ++k)
        for (std::size_t i = 0; i < sub.complex().count(k); ++i)
            out[k].push_back(rho(k, C.complex().index_of(sub.complex().vertices(k, static_cast<int>(i)))));
    return IndexMap(std::move(out));
}

std::pair<CoveredComplex, IndexMap> restrict_cover_to_boundary(const CoveredComplex& C, const IndexMap& rho)
{
    SimplicialComplex B = boundary_restrict(C.complex());
    CoveredComplex sub = restrict_cover(C, B);
    IndexMap r = restrict_index_map(C, rho, sub);
    return {std::move(sub), std::move(r)};
}

CoveredComplex subdivide_cover(const CoveredComplex& C, const Subdivision& sd)
{
    const auto& K = sd.complex;
    std::vector<std::vector<std::vector<int>>> adm(K.dim() + 1);
    for (int k = 0; k <= K.dim(); ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            SimplexId p = sd.carrier[k][i];
            adm[k].push_back(C.admissible(p.dim, p.index));
        }
    return CoveredComplex(K, C.num_sets(), std::move(adm));
}

}  // namespace deligne
