// Closed-form local data for fixture classes, their cup products, and
// discretization onto a realized covered complex by simplex quadrature.
//
// Forms are stored as 8 coefficients indexed by the bitmask of the basis
// differentials (bit j = dx_j) in the realized coordinates of the geometry.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "deligne/cochain.hpp"
#include "deligne/geometry.hpp"

namespace deligne {

using Form = std::array<double, 8>;

Form wedge(const Form& a, const Form& b);
Form scaled(const Form& a, double s);
Form differential(int coord, double coefficient);  // coefficient * dx_coord

/// Point of a simplex in the frame of that simplex.
struct SamplePoint {
    const Geometry* geometry = nullptr;
    int k = 0;
    int simplex = 0;
    Vec3 u{};  // frame coordinates
    Vec3 x{};  // realized coordinates
    int shift(int alpha, int coord) const { return geometry->shift(k, simplex, alpha)[coord]; }
    /// Branch of the periodic coordinate in chart alpha.
    double angle(int alpha, int coord) const { return u[coord] + kTwoPi * shift(alpha, coord); }
};

/// Angle in radians with an optional exact value in turns.
struct Angle {
    double radians = 0;
    std::optional<Rational> turns;
    static Angle from_radians(double r) { return {r, std::nullopt}; }
    static Angle from_turns(const Rational& t) { return {static_cast<double>(t) * kTwoPi, t}; }
    /// Decimal radians, or exact turns when exact is set ("p/q", integer or decimal).
    static Angle parse(const std::string& s, bool exact);
    std::string describe() const;
};

/// Circle-valued function f with chosen logarithm branch per chart.
class AngleFunction {
public:
    enum class Kind { winding, linear, constant };

    static AngleFunction winding(int w, int coord);
    static AngleFunction linear(double c, int coord);
    static AngleFunction constant(Angle c);

    Kind kind() const { return kind_; }
    double log(int alpha, const SamplePoint& pt) const;
    Form dlog(const SamplePoint& pt) const;
    /// n_{ab} = (log_b f - log_a f) / 2pi.
    long jump(int a, int b, const SamplePoint& pt) const;
    std::optional<Rational> exact_log() const;  // constants with exact turns only
    void check(const Geometry& g) const;
    std::string describe() const;

private:
    Kind kind_ = Kind::constant;
    int coord_ = 0;
    long w_ = 0;
    double c_ = 0;
    Angle angle_;
};

/// Degree-1 local data (G_{ab}, A_a) with integer m_{abc} = -(delta G)_{abc} / 2pi.
class LineClass {
public:
    virtual ~LineClass() = default;
    virtual std::string describe() const = 0;
    virtual void check(const Geometry&) const {}
    virtual double transition(int a, int b, const SamplePoint& pt) const = 0;
    virtual Form connection(int a, const SamplePoint& pt) const = 0;
    virtual Form curvature(const SamplePoint& pt) const = 0;
    virtual long chern(int a, int b, int c, const SamplePoint& pt) const = 0;
    virtual std::optional<Rational> exact_transition(int, int, const SamplePoint&) const { return std::nullopt; }
    virtual bool flat_and_discrete() const { return false; }
};

using LinePtr = std::shared_ptr<const LineClass>;

/// G_{ab} = -theta * n_{ab} for the winding jumps of the first coordinate; A = 0.
LinePtr flat_circle_line(Angle theta);
/// Charge k on the 5-chart octahedral sphere.
LinePtr monopole_line(long k);
/// f cup g: (n^f_{ab} log_b g, log_a f dlog g / 2pi).
LinePtr function_cup_line(const AngleFunction& f, const AngleFunction& g);

class Presentation {
public:
    virtual ~Presentation() = default;
    virtual int degree() const = 0;
    virtual std::string describe() const = 0;
    virtual void check(const Geometry&) const {}
    /// Component k at a multi-index of length degree-k+1, as a k-form.
    virtual Form component(int k, std::span<const int> idx, const SamplePoint& pt) const = 0;
    /// True when every form component vanishes identically and C^0 has exact values.
    virtual bool discrete() const { return false; }
    virtual Rational exact_vertex(std::span<const int> idx, const SamplePoint& pt) const;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

PresentationPtr function_presentation(const AngleFunction& f);
PresentationPtr line_presentation(LinePtr L);
PresentationPtr cup_function_line(const AngleFunction& f, LinePtr L);
PresentationPtr cup_line_function(LinePtr L, const AngleFunction& f);
PresentationPtr cup_line_line(LinePtr L, LinePtr J);
/// Explicit f cup g cup h components.
PresentationPtr triple_product(const AngleFunction& f, const AngleFunction& g, const AngleFunction& h);
/// w * n^(0) cup ... cup n^(p-1) from the winding jumps of coordinates 0..p-1; forms vanish.
PresentationPtr torsion_class(Angle w, int p);
PresentationPtr zero_class(int p);

using Operand = std::variant<AngleFunction, LinePtr, PresentationPtr>;

int operand_degree(const Operand& a);
PresentationPtr to_presentation(const Operand& a);
std::string describe(const Operand& a);

/// function cup function, function cup line, line cup function, line cup line.
Operand cup_product(const Operand& a, const Operand& b);

using Params = std::map<std::string, std::string>;

struct Fixture {
    Operand value;
    std::string geometry;  // default chart system
};

/// flat_circle(theta), winding_function(w, coord), monopole(k), torsion(w, p), zero(p).
/// Angles are radians, or turns when exact is set.
Fixture generate_fixture(const std::string& name, const Params& params, bool exact = false);

/// Operand from "name:key=value,key=value" with names winding, linear,
/// constant, flat_circle, monopole.
Operand parse_operand(const std::string& spec, bool exact = false);

struct Discretization {
    Cochain cochain;           // flagged as cocycle
    double error_estimate = 0; // max |value(order) - value(order + 4)|
    double tolerance = 0;      // used for validation
    CocycleReport report;
};

/// Gauss-Legendre product rules collapsed onto the simplex, quad_order points
/// per direction. Throws ValidationFailure when the result is not a cocycle
/// within the quadrature tolerance.
Discretization discretize(const Presentation& a, GeometryPtr g, int quad_order, double base_tol = 1e-10);

/// Exact cochain in turns; requires a discrete presentation.
RationalCochain discretize_exact(const Presentation& a, GeometryPtr g);

/// Nodes and weights of the collapsed rule on the standard k-simplex.
struct SimplexRule {
    std::vector<Vec3> points;
    std::vector<double> weights;
};
const SimplexRule& simplex_rule(int k, int order);

// ---------------------------------------------------------------------------

double evaluate_form(const Form& w, int k, const std::array<Vec3, 3>& tangents);

/// Integral over simplex (k, i) of the k-form field form_at(SamplePoint).
template <class F>
double integrate_form(const Geometry& g, int k, int i, int order, F&& form_at)
{
    const auto& frame = g.frames[k][i];
    SamplePoint pt{&g, k, i, frame[0], frame[0]};
    std::array<Vec3, 3> J;
    if (k == 0) {
        g.realize(pt.u, pt.x, J);
        return form_at(pt)[0];
    }
    Vec3 e[3]{};
    for (int j = 0; j < k; ++j)
        for (int a = 0; a < 3; ++a) e[j][a] = frame[j + 1][a] - frame[0][a];
    const auto& rule = simplex_rule(k, order);
    std::vector<double> terms;
    terms.reserve(rule.points.size());
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        for (int a = 0; a < 3; ++a) {
            pt.u[a] = frame[0][a];
            for (int j = 0; j < k; ++j) pt.u[a] += rule.points[q][j] * e[j][a];
        }
        g.realize(pt.u, pt.x, J);
        std::array<Vec3, 3> v{};
        for (int j = 0; j < k; ++j)
            for (int a = 0; a < 3; ++a) v[j][a] = J[a][0] * e[j][0] + J[a][1] * e[j][1] + J[a][2] * e[j][2];
        terms.push_back(rule.weights[q] * evaluate_form(form_at(pt), k, v));
    }
    return pairwise_sum(terms);
}

}  // namespace deligne
