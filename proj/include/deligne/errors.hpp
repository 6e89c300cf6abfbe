// Exception types shared by the library and the command line front end.
#pragma once

#include <stdexcept>
#include <string>

namespace deligne {

/// Bad input: malformed data, violated preconditions, unsupported requests.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Data parsed fine but failed a numerical check (cocycle residual, integrality).
class ValidationFailure : public std::runtime_error {
public:
    explicit ValidationFailure(const std::string& what, double worst = 0.0)
        : std::runtime_error(what), worst_(worst) {}
    double worst() const { return worst_; }

private:
    double worst_;
};

}  // namespace deligne
