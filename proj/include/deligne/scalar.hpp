// Arithmetic back ends. Floating point values are radians (period 2*pi);
// exact values are rationals measured in turns (period 1), so integrality and
// reduction modulo the period are exact.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace deligne {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class S>
struct Arith;

template <>
struct Arith<double> {
    static constexpr bool exact = false;
    static constexpr const char* unit = "radians";
    static double period() { return kTwoPi; }
    static double from_int(std::int64_t n) { return static_cast<double>(n); }
    static double to_radians(double v) { return v; }
    static double magnitude(double v) { return std::fabs(v); }
    /// Nearest integer to v / period.
    static std::int64_t nearest_multiple(double v) { return static_cast<std::int64_t>(std::llround(v / kTwoPi)); }
    /// Distance of v / period from the nearest integer.
    static double integrality_defect(double v)
    {
        double x = v / kTwoPi;
        return std::fabs(x - std::round(x));
    }
    /// Representative in (-pi, pi].
    static double reduce(double v)
    {
        double r = v - kTwoPi * std::round(v / kTwoPi);
        if (r <= -std::numbers::pi) r += kTwoPi;
        if (r > std::numbers::pi) r -= kTwoPi;
        return r;
    }
    static bool within(double residual, double tol) { return std::fabs(residual) <= tol; }
    static std::string to_string(double v);
};

inline BigInt floor_div(const Rational& v)
{
    BigInt n = boost::multiprecision::numerator(v);
    BigInt d = boost::multiprecision::denominator(v);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

template <>
struct Arith<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* unit = "turns";
    static Rational period() { return Rational(1); }
    static Rational from_int(std::int64_t n) { return Rational(n); }
    static double to_radians(const Rational& v) { return static_cast<double>(v) * kTwoPi; }
    static double magnitude(const Rational& v) { return std::fabs(static_cast<double>(v)); }
    static std::int64_t nearest_multiple(const Rational& v)
    {
        return static_cast<std::int64_t>(floor_div(v + Rational(1, 2)));
    }
    static double integrality_defect(const Rational& v)
    {
        Rational r = v - Rational(floor_div(v + Rational(1, 2)));
        return std::fabs(static_cast<double>(r));
    }
    /// Representative in (-1/2, 1/2].
    static Rational reduce(const Rational& v)
    {
        Rational shifted = Rational(1, 2) - v;
        return v + Rational(floor_div(shifted));
    }
    /// Exact mode ignores the tolerance: only zero passes.
    static bool within(const Rational& residual, double) { return residual == 0; }
    static std::string to_string(const Rational& v);
};

Rational parse_rational(const std::string& s);

/// Pairwise (tree) summation in a fixed order.
template <class S>
S pairwise_sum(const std::vector<S>& v, std::size_t lo, std::size_t hi)
{
    if (hi - lo <= 8) {
        S s = S(0);
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <class S>
S pairwise_sum(const std::vector<S>& v)
{
    return pairwise_sum(v, 0, v.size());
}

/// Wraparound-aware distance between two angles, in radians.
template <class S>
double circular_distance(const S& a, const S& b)
{
    return std::fabs(Arith<S>::to_radians(Arith<S>::reduce(S(a - b))));
}

}  // namespace deligne
