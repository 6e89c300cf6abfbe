// Batch front end shared by the deligne executable and the tests.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace deligne {

struct RunConfig {
    double tolerance = 1e-9;
    int quad_order = 8;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string arithmetic = "float";  // float | rational
    std::string format = "json";       // json | text
    std::string output;                // report path; stdout when empty
};

/// Load a config file: an object with any of tolerance, quad_order, seed,
/// arithmetic, format, output.
RunConfig load_config(const std::string& path);

/// args excludes the program name. Returns 0 on success, 2 on validation
/// failure, 1 on usage errors. The config file named by DELIGNE_CONFIG
/// supplies defaults unless --config is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deligne
