#include "deligne/scalar.hpp"

#include <cstdio>

#include "deligne/errors.hpp"

namespace deligne {

std::string Arith<double>::to_string(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Arith<Rational>::to_string(const Rational& v)
{
    return v.str();
}

Rational parse_rational(const std::string& s)
{
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(BigInt(s));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rational(BigInt(digits), den);
    } catch (const std::exception&) {
        throw InvalidInput("not a rational number: '" + s + "'");
    }
}

}  // namespace deligne
