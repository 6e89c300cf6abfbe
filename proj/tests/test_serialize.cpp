#include <string>

#include "deligne/errors.hpp"
#include "deligne/serialize.hpp"
#include "support.hpp"

using namespace deligne;
using namespace testsupport;

namespace {

std::string error_of(auto&& fn)
{
    try {
        fn();
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("canonical dump layout")
{
    auto j = parse_json(R"({"b": [1, 2.5, "x"], "a": {"z": null, "y": [[1], []]}, "c": {}, "d": 0.1})", "t");
    const std::string expect = "{\n"
                               "  \"a\": {\n"
                               "    \"y\": [\n"
                               "      [1],\n"
                               "      []\n"
                               "    ],\n"
                               "    \"z\": null\n"
                               "  },\n"
                               "  \"b\": [1, 2.5, \"x\"],\n"
                               "  \"c\": {},\n"
                               "  \"d\": 0.10000000000000001\n"
                               "}\n";
    CHECK(canonical_dump(j) == expect);
    CHECK(canonical_dump(Json(std::nan(""))) == "null\n");
    CHECK(canonical_dump(Json(-3)) == "-3\n");
    // Seventeen digits round trip every double.
    for (double v : {kTwoPi, 1.0 / 3.0, -1e-300, 123456789.123456789}) CHECK(parse_json(canonical_dump(Json(v)), "t").get<double>() == v);
    CHECK(starts_with(error_of([] { parse_json("{", "input.json"); }), "input.json: "));
}

TEST_CASE("complex and cover round trips")
{
    for (const auto& name : geometry_names()) {
        auto g = make_geometry(name);
        CAPTURE(name);
        auto K = complex_from_json(parse_json(canonical_dump(complex_to_json(g->complex())), "t"));
        CHECK(K.oriented_tops() == g->complex().oriented_tops());
        CHECK(K.manifold() == g->complex().manifold());
        auto C = cover_from_json(K, cover_to_json(g->cover()));
        CHECK(C.same_as(g->cover()));
        CHECK(!cover_to_json(g->cover()).contains("admissible"));
    }
    // Subdivision keeps carrier sets, which are smaller than the union closure.
    auto sd = subdivide_geometry(*make_geometry("torus2-4chart"));
    auto j = cover_to_json(sd->cover());
    auto C = cover_from_json(sd->complex(), j);
    CHECK(C.same_as(sd->cover()));

    auto pt = SimplicialComplex::build({{3}, {5}}, ClosurePolicy::infer, {1, -1});
    auto back = complex_from_json(complex_to_json(pt));
    CHECK(back.top_signs() == pt.top_signs());
}

TEST_CASE("index map and cochain round trips")
{
    auto g = make_geometry("torus2-4chart");
    auto rho = random_index_map(g->cover(), 17);
    CHECK(index_map_from_json(g->cover(), index_map_to_json(rho)) == rho);

    auto c = random_cochain<double>(g->covered, 2, 4);
    auto jc = parse_json(canonical_dump(cochain_to_json(c)), "t");
    CHECK(!cochain_is_exact(jc));
    CHECK(cochain_from_json(g->covered, jc) == c);

    auto r = random_cochain<Rational>(g->covered, 2, 4);
    auto jr = parse_json(canonical_dump(cochain_to_json(r)), "t");
    CHECK(cochain_is_exact(jr));
    CHECK(rational_cochain_from_json(g->covered, jr) == r);
    CHECK(cochain_from_json(g->covered, jr) == to_float(r));
    CHECK_THROWS_AS(rational_cochain_from_json(g->covered, jc), InvalidInput);

    // Entries are sorted and zero values omitted.
    auto z = BasicCochain<double>(g->covered, 2);
    CHECK(cochain_to_json(z)["entries"].empty());
}

TEST_CASE("schema errors name their location")
{
    auto g = make_geometry("circle-3arc");
    auto K = complex_to_json(g->complex());
    K["top_simplices"][1] = {0, 1, 2};
    CHECK(starts_with(error_of([&] { complex_from_json(K); }), "complex.top_simplices[1]: "));
    K = complex_to_json(g->complex());
    K["top_simplices"][2][0] = "a";
    CHECK(starts_with(error_of([&] { complex_from_json(K); }), "complex.top_simplices[2][0]: "));
    K = complex_to_json(g->complex());
    K["flags"] = {"smooth"};
    CHECK(starts_with(error_of([&] { complex_from_json(K); }), "complex.flags: "));
    CHECK(starts_with(error_of([] { complex_from_json(Json::object()); }), "complex: missing field 'dim'"));

    auto cv = cover_to_json(g->cover());
    cv["admissible_top"].erase("1");
    CHECK(starts_with(error_of([&] { cover_from_json(g->complex(), cv); }), "cover.admissible_top: "));
    cv = cover_to_json(g->cover());
    cv["admissible_top"]["9"] = {0};
    CHECK(starts_with(error_of([&] { cover_from_json(g->complex(), cv); }), "cover.admissible_top.9: "));

    auto im = index_map_to_json(default_index_map(g->cover()));
    im["0/x"] = 0;
    CHECK(starts_with(error_of([&] { index_map_from_json(g->cover(), im); }), "index_map.0/x: "));
    im = index_map_to_json(default_index_map(g->cover()));
    im.erase("1/0");
    CHECK(error_of([&] { index_map_from_json(g->cover(), im); }) == "index_map: missing simplex 1/0");

    auto c = cochain_to_json(random_cochain<double>(g->covered, 1, 1));
    c["entries"][3]["value"] = "one";
    CHECK(starts_with(error_of([&] { cochain_from_json(g->covered, c); }), "cochain.entries[3].value: "));
    c = cochain_to_json(random_cochain<double>(g->covered, 1, 1));
    c["entries"][0]["indices"] = {1, 0};
    CHECK(starts_with(error_of([&] { cochain_from_json(g->covered, c); }), "cochain.entries[0].indices: "));
    c = cochain_to_json(random_cochain<double>(g->covered, 1, 1));
    c["entries"][0]["simplex"] = {0, 99};
    CHECK(starts_with(error_of([&] { cochain_from_json(g->covered, c); }), "cochain.entries[0].simplex: "));
    c["unit"] = "degrees";
    CHECK(starts_with(error_of([&] { cochain_from_json(g->covered, c); }), "cochain.unit: "));
}

TEST_CASE("report encodings")
{
    auto g = make_geometry("circle-3arc");
    auto c = certify(exact_shift(BasicCochain<Rational>(g->covered, 1), random_cochain<Rational>(g->covered, 0, 2)), 0);
    auto h = holonomy_json(holonomy(c, default_index_map(g->cover())));
    CHECK(h["unit"] == "turns");
    CHECK(h["reduced"] == "0");
    auto rep = report_json(validate_cocycle(c, 0.0));
    CHECK(rep["passed"] == true);
    CHECK(rep["kind"] == "cocycle_report");
}
