#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deligne/cli.hpp"
#include "deligne/serialize.hpp"
#include "support.hpp"

using namespace deligne;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
    Json json() const { return parse_json(out, "report"); }
};

struct Workdir {
    fs::path root;
    explicit Workdir(const std::string& tag)
    {
        root = fs::temp_directory_path() / ("deligne_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~Workdir() { fs::remove_all(root); }
    std::string operator()(const std::string& rel) const { return (root / rel).string(); }
    std::vector<std::string> files(const std::string& dir) const
    {
        return {(*this)(dir + "/complex.json"), (*this)(dir + "/cover.json"), (*this)(dir + "/cochain.json")};
    }
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("fixture then holonomy")
{
    Workdir w("flat");
    auto f = call({"fixture", "flat_circle", "--params", "theta=1.0", "--out-dir", w("fc")});
    REQUIRE(f.code == 0);
    CHECK(f.json()["validation"]["passed"] == true);
    auto h = call(cat({"holonomy"}, w.files("fc")));
    REQUIRE(h.code == 0);
    CHECK(h.json()["angle"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.json()["kind"] == "holonomy");

    auto r = call(cat({"--arithmetic", "rational", "fixture", "torsion", "--params", "p=2,w=1/7", "--out-dir", w("t")}, {}));
    REQUIRE(r.code == 0);
    auto hr = call(cat({"--arithmetic", "rational", "--seed", "4", "holonomy", "--index-map", "random"}, w.files("t")));
    REQUIRE(hr.code == 0);
    CHECK(hr.json()["reduced"] == "1/7");
}

TEST_CASE("validate the zero cochain")
{
    Workdir w("zero");
    REQUIRE(call({"fixture", "zero", "--params", "p=2", "--out-dir", w("z")}).code == 0);
    auto v = call(cat({"validate"}, w.files("z")));
    CHECK(v.code == 0);
    CHECK(v.json()["worst_residual"] == 0);
    for (const auto& x : v.json()["level_worst"]) CHECK(x == 0);
}

TEST_CASE("transgress with the boundary formula on an annulus")
{
    Workdir w("annulus");
    REQUIRE(call({"cup", "--lhs", "winding:w=1,coord=0", "--rhs", "linear:c=0.7,coord=1", "--third",
                  "winding:w=2,coord=0", "--association", "explicit", "--geometry", "annulus", "--out-dir", w("a")})
                .code == 0);
    for (std::string seed : {"1", "5", "9"}) {
        auto t = call(cat({"--seed", seed, "transgress"}, cat(w.files("a"), {"--boundary-formula"})));
        CHECK(t.code == 0);
        auto j = t.json();
        CHECK(j["worst_residual"].get<double>() <= 1e-9);
        CHECK(j["edge_formula"]["agreement"].get<double>() <= 1e-9);
    }
}

TEST_CASE("exit codes")
{
    Workdir w("codes");
    REQUIRE(call({"fixture", "winding_function", "--params", "w=2", "--out-dir", w("f")}).code == 0);
    REQUIRE(call({"fixture", "flat_circle", "--params", "theta=0.3", "--out-dir", w("c")}).code == 0);
    REQUIRE(call({"fixture", "torsion", "--params", "p=2,w=0.3", "--out-dir", w("t")}).code == 0);
    auto files = w.files("c");
    auto tfiles = w.files("t");

    CHECK(call({}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"--help"}).code == 0);
    CHECK(call(cat({"--tolerance", "-1", "validate"}, files)).code == 1);
    CHECK(call(cat({"--quad-order", "0", "validate"}, files)).code == 1);
    CHECK(call(cat({"--arithmetic", "interval", "validate"}, files)).code == 1);

    auto r = call(cat({"holonomy", "--index-map", "random"}, files));
    CHECK(r.code == 1);
    CHECK(r.err.find("seed") != std::string::npos);
    CHECK(call(cat({"holonomy", "--index-map", "random:3"}, files)).code == 0);

    auto missing = call({"validate", w("nope.json"), files[1], files[2]});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("nope.json") != std::string::npos);

    // Schema violation reports the location.
    auto cj = read_json_file(files[2]);
    cj["entries"][0]["indices"] = "x";
    write_text_file(w("bad.json"), canonical_dump(cj));
    auto bad = call({"validate", files[0], files[1], w("bad.json")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("cochain.entries[0].indices") != std::string::npos);

    // A perturbed vertex entry breaks integrality: exit 2 with the worst residual.
    cj = read_json_file(tfiles[2]);
    cj["entries"][0]["value"] = cj["entries"][0]["value"].get<double>() + 1e-3;
    write_text_file(w("perturbed.json"), canonical_dump(cj));
    auto v = call({"validate", tfiles[0], tfiles[1], w("perturbed.json")});
    CHECK(v.code == 2);
    CHECK(v.err.find("worst residual") != std::string::npos);
    CHECK(v.json()["passed"] == false);
    auto hv = call({"holonomy", tfiles[0], tfiles[1], w("perturbed.json")});
    CHECK(hv.code == 2);

    // Rational mode needs exact files.
    CHECK(call(cat({"--arithmetic", "rational", "validate"}, files)).code == 1);
}

TEST_CASE("reports are byte identical across runs")
{
    Workdir w("det");
    auto a = call({"fixture", "monopole", "--params", "k=2", "--out-dir", w("m1")});
    auto b = call({"fixture", "monopole", "--params", "k=2", "--out-dir", w("m2")});
    REQUIRE(a.code == 0);
    for (const char* f : {"complex.json", "cover.json", "cochain.json"})
        CHECK(slurp(w(std::string("m1/") + f)) == slurp(w(std::string("m2/") + f)));
    auto c1 = call(cat({"--seed", "8", "curvature", "--index-map", "random"}, w.files("m1")));
    auto c2 = call(cat({"--seed", "8", "curvature", "--index-map", "random"}, w.files("m2")));
    CHECK(c1.code == 0);
    CHECK(c1.out == c2.out);
    CHECK(c1.json()["chern_pairing"] == 2);

    REQUIRE(call({"cup", "--lhs", "winding:w=1,coord=0", "--rhs", "linear:c=0.4,coord=1", "--third",
                  "winding:w=1,coord=0", "--association", "explicit", "--geometry", "annulus", "--out-dir", w("a")})
                .code == 0);
    auto o1 = call(cat({"--seed", "8", "--output", w("r1.json"), "transgress", "--boundary-formula"}, w.files("a")));
    auto o2 = call(cat({"--seed", "8", "--output", w("r2.json"), "transgress", "--boundary-formula"}, w.files("a")));
    CHECK(o1.code == 0);
    CHECK(o1.out.empty());
    CHECK(slurp(w("r1.json")) == slurp(w("r2.json")));
    CHECK(!slurp(w("r1.json")).empty());
}

TEST_CASE("config file from the environment")
{
    Workdir w("cfg");
    REQUIRE(call({"fixture", "flat_circle", "--params", "theta=0.5", "--out-dir", w("c")}).code == 0);
    write_text_file(w("cfg.json"), R"({"seed": 12, "format": "text"})");
    write_text_file(w("other.json"), R"({"seed": 3})");
    write_text_file(w("broken.json"), R"({"sed": 3})");
    ::setenv("DELIGNE_CONFIG", w("cfg.json").c_str(), 1);
    auto r = call(cat({"holonomy", "--index-map", "random"}, w.files("c")));
    CHECK(r.code == 0);
    CHECK(r.out.find("angle: 0.5") != std::string::npos);
    auto j = call(cat({"--config", w("other.json"), "holonomy", "--index-map", "random"}, w.files("c")));
    CHECK(j.code == 0);
    CHECK(j.json()["angle"].get<double>() == doctest::Approx(0.5));
    ::setenv("DELIGNE_CONFIG", w("broken.json").c_str(), 1);
    CHECK(call(cat({"validate"}, w.files("c"))).code == 1);
    ::unsetenv("DELIGNE_CONFIG");
}

TEST_CASE("shift, subdivide and glue commands")
{
    Workdir w("ops");
    REQUIRE(call({"--arithmetic", "rational", "fixture", "torsion", "--params", "p=1,w=2/5", "--out-dir", w("t")}).code == 0);
    auto files = w.files("t");
    auto base = call(cat({"--arithmetic", "rational", "holonomy"}, files)).json()["reduced"];

    // Gauge shift by an exact 0-cochain leaves the holonomy alone.
    auto c = read_json_file(files[2]);
    Json b{{"degree", 0}, {"unit", "turns"}, {"entries", Json::array()}};
    b["entries"].push_back({{"k", 0}, {"indices", {0}}, {"simplex", {0, 0}}, {"value", "1/3"}});
    b["entries"].push_back({{"k", 0}, {"indices", {1}}, {"simplex", {0, 1}}, {"value", "-2/9"}});
    write_text_file(w("b.json"), canonical_dump(b));
    auto s = call(cat({"--arithmetic", "rational", "shift"}, cat(files, {w("b.json")})));
    REQUIRE(s.code == 0);
    CHECK(s.json() != c);
    write_text_file(w("shifted.json"), s.out);
    auto hs = call({"--arithmetic", "rational", "holonomy", files[0], files[1], w("shifted.json")});
    CHECK(hs.json()["reduced"] == base);

    // Subdivision doubles the edges and keeps the chart count.
    auto sd = call({"subdivide", files[0], "--cover", files[1], "--cover-output", w("sd_cover.json")});
    REQUIRE(sd.code == 0);
    write_text_file(w("sd_complex.json"), sd.out);
    CHECK(sd.json()["top_simplices"].size() == 2 * read_json_file(files[0])["top_simplices"].size());
    CHECK(read_json_file(w("sd_cover.json"))["num_sets"] == read_json_file(files[1])["num_sets"]);

    // Two arcs glued at both ends give a closed circle.
    write_text_file(w("arc1.json"), R"({"dim": 1, "top_simplices": [[0, 1], [1, 2]], "flags": ["with_boundary"]})");
    write_text_file(w("arc2.json"), R"({"dim": 1, "top_simplices": [[10, 11], [11, 12]], "flags": ["with_boundary"]})");
    auto g = call({"glue", w("arc1.json"), w("arc2.json"), "--match", "10:2,12:0", "--map-output", w("map.json")});
    REQUIRE(g.code == 0);
    CHECK(g.json()["flags"] == Json::array({"closed_oriented"}));
    CHECK(read_json_file(w("map.json"))["10"] == 2);
    CHECK(call({"glue", w("arc1.json"), w("arc2.json"), "--match", "10:0,12:2"}).code == 1);
}
