#include "deligne/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "deligne/errors.hpp"

namespace deligne {

namespace {

bool is_primitive(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump_number(const Json& j, std::string& out)
{
    if (j.is_number_integer() || j.is_number_unsigned()) {
        out += j.dump();
        return;
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void dump(const Json& j, int indent, std::string& out)
{
    const std::string pad(2 * (indent + 1), ' ');
    const std::string close(2 * indent, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            dump(it.value(), indent + 1, out);
        }
        out += "\n" + close + "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        if (std::all_of(j.begin(), j.end(), is_primitive)) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump(j[i], indent + 1, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            dump(j[i], indent + 1, out);
        }
        out += "\n" + close + "]";
    } else if (j.is_number()) {
        dump_number(j, out);
    } else {
        out += j.dump();
    }
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what)
{
    throw InvalidInput(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) schema_error(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(where, std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) schema_error(where, "expected an integer");
    return j.get<int>();
}

std::vector<int> as_int_list(const Json& j, const std::string& where)
{
    if (!j.is_array()) schema_error(where, "expected an array of integers");
    std::vector<int> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

std::pair<int, int> parse_key(const std::string& key, const std::string& where)
{
    auto slash = key.find('/');
    try {
        if (slash == std::string::npos) throw std::invalid_argument(key);
        std::size_t used = 0;
        int k = std::stoi(key.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument(key);
        std::string rest = key.substr(slash + 1);
        int i = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(key);
        return {k, i};
    } catch (const std::exception&) {
        schema_error(where, "bad simplex key '" + key + "', expected \"dim/index\"");
    }
}

std::string key_of(int k, int i) { return std::to_string(k) + "/" + std::to_string(i); }

template <class S>
Json cochain_json(const BasicCochain<S>& c)
{
    struct Row {
        int k, i;
        std::vector<int> idx;
        Json value;
    };
    std::vector<Row> rows;
    const auto& K = c.base().complex();
    for (int k = 0; k <= c.top_level(); ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            c.for_each_entry(k, i, [&](std::span<const int> I, const S& v) {
                if (v != S(0)) rows.push_back({k, i, {I.begin(), I.end()}, scalar_json(v)});
            });
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return std::tie(a.k, a.i, a.idx) < std::tie(b.k, b.i, b.idx); });
    Json entries = Json::array();
    for (auto& r : rows)
        entries.push_back({{"k", r.k}, {"indices", r.idx}, {"simplex", {r.k, r.i}}, {"value", r.value}});
    Json j{{"degree", c.degree()}, {"entries", entries}};
    if constexpr (Arith<S>::exact) j["unit"] = "turns";
    return j;
}

template <class S>
S read_value(const Json& v, const std::string& where);

template <>
double read_value<double>(const Json& v, const std::string& where)
{
    if (!v.is_number()) schema_error(where, "expected a number");
    return v.get<double>();
}

template <>
Rational read_value<Rational>(const Json& v, const std::string& where)
{
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (!v.is_string()) schema_error(where, "expected a \"p/q\" string");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const InvalidInput& e) {
        schema_error(where, e.what());
    }
}

template <class S>
BasicCochain<S> cochain_from(CoveredPtr base, const Json& j)
{
    const std::string where = "cochain";
    int degree = as_int(field(j, "degree", where), where + ".degree");
    if (degree < 0) schema_error(where + ".degree", "must be nonnegative");
    const Json& entries = field(j, "entries", where);
    if (!entries.is_array()) schema_error(where + ".entries", "expected an array");
    const auto& K = base->complex();
    std::vector<Entry<S>> out;
    for (std::size_t n = 0; n < entries.size(); ++n) {
        const std::string at = where + ".entries[" + std::to_string(n) + "]";
        const Json& e = entries[n];
        Entry<S> entry;
        entry.k = as_int(field(e, "k", at), at + ".k");
        auto simplex = as_int_list(field(e, "simplex", at), at + ".simplex");
        if (simplex.size() != 2 || simplex[0] != entry.k) schema_error(at + ".simplex", "expected [k, index]");
        entry.simplex = simplex[1];
        if (entry.k < 0 || entry.k > K.dim() || entry.simplex < 0 ||
            entry.simplex >= static_cast<int>(K.count(entry.k)))
            schema_error(at + ".simplex", "no such simplex");
        entry.indices = as_int_list(field(e, "indices", at), at + ".indices");
        if (!std::is_sorted(entry.indices.begin(), entry.indices.end()) ||
            std::adjacent_find(entry.indices.begin(), entry.indices.end()) != entry.indices.end())
            schema_error(at + ".indices", "must be strictly increasing");
        entry.value = read_value<S>(field(e, "value", at), at + ".value");
        out.push_back(std::move(entry));
    }
    try {
        return build_cochain<S>(std::move(base), degree, out);
    } catch (const InvalidInput& e) {
        schema_error(where, e.what());
    }
}

}  // namespace

std::string canonical_dump(const Json& j)
{
    std::string out;
    dump(j, 0, out);
    out += "\n";
    return out;
}

Json parse_json(const std::string& text, const std::string& where)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(where + ": " + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput(path + ": cannot write");
    out << text;
}

Json complex_to_json(const SimplicialComplex& K)
{
    Json tops = Json::array();
    for (const auto& t : K.oriented_tops()) tops.push_back(t);
    Json flags = Json::array();
    if (K.manifold() != ManifoldFlag::none) flags.push_back(to_string(K.manifold()));
    Json j{{"dim", K.dim()}, {"top_simplices", tops}, {"flags", flags}};
    if (K.dim() == 0) j["point_signs"] = K.top_signs();
    return j;
}

SimplicialComplex complex_from_json(const Json& j)
{
    const std::string where = "complex";
    int dim = as_int(field(j, "dim", where), where + ".dim");
    const Json& tops = field(j, "top_simplices", where);
    if (!tops.is_array()) schema_error(where + ".top_simplices", "expected an array");
    std::vector<VertexTuple> t;
    for (std::size_t i = 0; i < tops.size(); ++i) {
        const std::string at = where + ".top_simplices[" + std::to_string(i) + "]";
        t.push_back(as_int_list(tops[i], at));
        if (static_cast<int>(t.back().size()) != dim + 1)
            schema_error(at, "expected " + std::to_string(dim + 1) + " vertices");
    }
    ClosurePolicy policy = ClosurePolicy::infer;
    if (j.contains("flags")) {
        const Json& flags = j["flags"];
        if (!flags.is_array()) schema_error(where + ".flags", "expected an array of strings");
        for (const auto& f : flags) {
            if (!f.is_string()) schema_error(where + ".flags", "expected an array of strings");
            auto s = f.get<std::string>();
            if (s == "closed_oriented") policy = ClosurePolicy::closed_oriented;
            else if (s == "with_boundary") policy = ClosurePolicy::with_boundary;
            else if (s == "pseudomanifold") policy = ClosurePolicy::pseudomanifold;
            else schema_error(where + ".flags", "unknown flag '" + s + "'");
        }
    }
    std::vector<int> signs;
    if (j.contains("point_signs")) signs = as_int_list(j["point_signs"], where + ".point_signs");
    try {
        return SimplicialComplex::build(t, policy, signs);
    } catch (const InvalidInput& e) {
        schema_error(where, e.what());
    }
}

Json cover_to_json(const CoveredComplex& C)
{
    const auto& K = C.complex();
    Json tops = Json::object();
    std::vector<std::vector<int>> top_sets;
    for (int i = 0; i < static_cast<int>(K.num_top()); ++i) {
        tops[std::to_string(i)] = C.admissible(K.dim(), i);
        top_sets.push_back(C.admissible(K.dim(), i));
    }
    Json j{{"num_sets", C.num_sets()}, {"admissible_top", tops}};
    if (!K.empty() && !attach_cover(K, C.num_sets(), top_sets).same_as(C)) {
        Json all = Json::object();
        for (int k = 0; k < K.dim(); ++k)
            for (int i = 0; i < static_cast<int>(K.count(k)); ++i) all[key_of(k, i)] = C.admissible(k, i);
        j["admissible"] = all;
    }
    return j;
}

CoveredComplex cover_from_json(const SimplicialComplex& K, const Json& j)
{
    const std::string where = "cover";
    int n = as_int(field(j, "num_sets", where), where + ".num_sets");
    if (n < 1) schema_error(where + ".num_sets", "must be positive");
    const Json& tops = field(j, "admissible_top", where);
    if (!tops.is_object()) schema_error(where + ".admissible_top", "expected an object");
    const int ntop = static_cast<int>(K.num_top());
    std::vector<std::vector<int>> sets(ntop);
    std::vector<char> seen(ntop, 0);
    for (auto it = tops.begin(); it != tops.end(); ++it) {
        const std::string at = where + ".admissible_top." + it.key();
        int i = -1;
        try {
            std::size_t used = 0;
            i = std::stoi(it.key(), &used);
            if (used != it.key().size()) i = -1;
        } catch (const std::exception&) {
        }
        if (i < 0 || i >= ntop) schema_error(at, "not a top simplex index");
        sets[i] = as_int_list(it.value(), at);
        seen[i] = 1;
    }
    for (int i = 0; i < ntop; ++i)
        if (!seen[i]) schema_error(where + ".admissible_top", "missing top simplex " + std::to_string(i));
    try {
        if (!j.contains("admissible")) return attach_cover(K, n, sets);
        std::vector<std::vector<std::vector<int>>> adm(K.dim() + 1);
        for (int k = 0; k <= K.dim(); ++k) adm[k].resize(K.count(k));
        adm[K.dim()] = sets;
        const Json& all = j["admissible"];
        if (!all.is_object()) schema_error(where + ".admissible", "expected an object");
        for (auto it = all.begin(); it != all.end(); ++it) {
            const std::string at = where + ".admissible." + it.key();
            auto [k, i] = parse_key(it.key(), at);
            if (k < 0 || k >= K.dim() || i < 0 || i >= static_cast<int>(K.count(k)))
                schema_error(at, "no such lower simplex");
            adm[k][i] = as_int_list(it.value(), at);
        }
        return CoveredComplex(K, n, std::move(adm));
    } catch (const InvalidInput& e) {
        if (std::string(e.what()).rfind(where, 0) == 0) throw;
        schema_error(where, e.what());
    }
}

Json index_map_to_json(const IndexMap& rho)
{
    Json j = Json::object();
    const auto& d = rho.data();
    for (int k = 0; k < static_cast<int>(d.size()); ++k)
        for (int i = 0; i < static_cast<int>(d[k].size()); ++i) j[key_of(k, i)] = d[k][i];
    return j;
}

IndexMap index_map_from_json(const CoveredComplex& C, const Json& j)
{
    const std::string where = "index_map";
    if (!j.is_object()) schema_error(where, "expected an object");
    const auto& K = C.complex();
    std::vector<std::vector<int>> rho(K.dim() + 1);
    std::vector<std::vector<char>> seen(K.dim() + 1);
    for (int k = 0; k <= K.dim(); ++k) {
        rho[k].assign(K.count(k), 0);
        seen[k].assign(K.count(k), 0);
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string at = where + "." + it.key();
        auto [k, i] = parse_key(it.key(), at);
        if (k < 0 || k > K.dim() || i < 0 || i >= static_cast<int>(K.count(k))) schema_error(at, "no such simplex");
        rho[k][i] = as_int(it.value(), at);
        seen[k][i] = 1;
    }
    for (int k = 0; k <= K.dim(); ++k)
        for (int i = 0; i < static_cast<int>(K.count(k)); ++i)
            if (!seen[k][i]) schema_error(where, "missing simplex " + key_of(k, i));
    IndexMap m(std::move(rho));
    try {
        check_index_map(C, m);
    } catch (const InvalidInput& e) {
        schema_error(where, e.what());
    }
    return m;
}

Json cochain_to_json(const Cochain& c) { return cochain_json(c); }
Json cochain_to_json(const RationalCochain& c) { return cochain_json(c); }

bool cochain_is_exact(const Json& j)
{
    if (!j.is_object() || !j.contains("unit")) return false;
    const Json& u = j["unit"];
    if (u == "turns") return true;
    if (u == "radians") return false;
    schema_error("cochain.unit", "expected \"turns\" or \"radians\"");
}

Cochain cochain_from_json(CoveredPtr base, const Json& j)
{
    if (cochain_is_exact(j)) return to_float(cochain_from<Rational>(std::move(base), j));
    return cochain_from<double>(std::move(base), j);
}

RationalCochain rational_cochain_from_json(CoveredPtr base, const Json& j)
{
    if (!cochain_is_exact(j)) schema_error("cochain.unit", "exact arithmetic needs values in turns");
    return cochain_from<Rational>(std::move(base), j);
}

Json scalar_json(double v) { return v; }
Json scalar_json(const Rational& v) { return Arith<Rational>::to_string(v); }

Json report_json(const CocycleReport& r)
{
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"condition", f.condition},
                            {"k", f.k},
                            {"simplex", {f.k, f.simplex}},
                            {"indices", f.indices},
                            {"residual", f.residual}});
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"vertex", w.vertex}, {"indices", w.indices}, {"value", w.value}, {"defect", w.defect}});
    return {{"kind", "cocycle_report"},
            {"degree", r.degree},
            {"tolerance", r.tolerance},
            {"exact", r.exact},
            {"passed", r.passed()},
            {"worst_residual", r.worst()},
            {"integrality_worst", r.integrality_worst},
            {"level_worst", r.level_worst},
            {"failures", failures},
            {"integrality_witnesses", witnesses}};
}

template <class S>
Json holonomy_json(const HolonomyValue<S>& h)
{
    Json levels = Json::array();
    for (const auto& l : h.levels) levels.push_back(scalar_json(l));
    return {{"kind", "holonomy"},
            {"unit", Arith<S>::unit},
            {"raw", scalar_json(h.raw)},
            {"reduced", scalar_json(h.reduced)},
            {"angle", h.radians()},
            {"levels", levels},
            {"flag_count", h.flag_count}};
}

template <class S>
Json transition_json(const TransitionValue<S>& t)
{
    return {{"unit", Arith<S>::unit},
            {"raw", scalar_json(t.raw)},
            {"reduced", scalar_json(t.reduced)},
            {"angle", t.radians()},
            {"census",
             {{"boundary_flags", t.census.boundary_flags},
              {"interior_flags", t.census.interior_flags},
              {"boundary_sum", scalar_json(t.census.boundary_sum)},
              {"interior_sum", scalar_json(t.census.interior_sum)}}}};
}

template <class S>
Json curvature_json(const CurvatureValue<S>& c)
{
    return {{"kind", "curvature"},
            {"unit", Arith<S>::unit},
            {"total", scalar_json(c.total)},
            {"total_over_period", static_cast<double>(c.total / Arith<S>::period())},
            {"nearest_integer", c.nearest_integer},
            {"integrality_defect", c.integrality_defect},
            {"index_dependence", c.index_dependence}};
}

template Json holonomy_json(const HolonomyValue<double>&);
template Json holonomy_json(const HolonomyValue<Rational>&);
template Json transition_json(const TransitionValue<double>&);
template Json transition_json(const TransitionValue<Rational>&);
template Json curvature_json(const CurvatureValue<double>&);
template Json curvature_json(const CurvatureValue<Rational>&);

}  // namespace deligne
