#include "deligne/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "deligne/errors.hpp"

namespace deligne {

// ---------------------------------------------------------------- forms

Form wedge(const Form& a, const Form& b)
{
    Form out{};
    for (int A = 0; A < 8; ++A) {
        if (a[A] == 0) continue;
        for (int B = 0; B < 8; ++B) {
            if (b[B] == 0 || (A & B)) continue;
            int inversions = 0;
            for (int i = 0; i < 3; ++i)
                if (A & (1 << i))
                    for (int j = 0; j < i; ++j)
                        if (B & (1 << j)) ++inversions;
            out[A | B] += (inversions % 2 ? -1.0 : 1.0) * a[A] * b[B];
        }
    }
    return out;
}

Form scaled(const Form& a, double s)
{
    Form out;
    for (int i = 0; i < 8; ++i) out[i] = a[i] * s;
    return out;
}

Form differential(int coord, double coefficient)
{
    Form out{};
    out[1 << coord] = coefficient;
    return out;
}

namespace {

Form scalar(double v)
{
    Form out{};
    out[0] = v;
    return out;
}

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0);
    w.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        x[i] = (1 - z) / 2;
        w[i] = 1 / ((1 - z * z) * dp * dp);
    }
}

}  // namespace

const SimplexRule& simplex_rule(int k, int order)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, SimplexRule> cache;
    if (k < 1 || k > 3) throw InvalidInput("quadrature supports simplices of dimension 1 to 3");
    if (order < 1) throw InvalidInput("quadrature order must be at least 1");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({k, order});
    if (it != cache.end()) return it->second;
    std::vector<double> x, w;
    gauss_legendre(order, x, w);
    SimplexRule r;
    for (int i = 0; i < order; ++i) {
        if (k == 1) {
            r.points.push_back({x[i], 0, 0});
            r.weights.push_back(w[i]);
            continue;
        }
        for (int j = 0; j < order; ++j) {
            double t1 = x[i], t2 = (1 - x[i]) * x[j];
            if (k == 2) {
                r.points.push_back({t1, t2, 0});
                r.weights.push_back(w[i] * w[j] * (1 - x[i]));
                continue;
            }
            for (int l = 0; l < order; ++l) {
                double t3 = (1 - x[i]) * (1 - x[j]) * x[l];
                r.points.push_back({t1, t2, t3});
                r.weights.push_back(w[i] * w[j] * w[l] * (1 - x[i]) * (1 - x[i]) * (1 - x[j]));
            }
        }
    }
    return cache.emplace(std::pair{k, order}, std::move(r)).first->second;
}

double evaluate_form(const Form& w, int k, const std::array<Vec3, 3>& v)
{
    double total = 0;
    for (int mask = 1; mask < 8; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != k || w[mask] == 0) continue;
        int rows[3], n = 0;
        for (int b = 0; b < 3; ++b)
            if (mask & (1 << b)) rows[n++] = b;
        double det;
        if (k == 1) {
            det = v[0][rows[0]];
        } else if (k == 2) {
            det = v[0][rows[0]] * v[1][rows[1]] - v[1][rows[0]] * v[0][rows[1]];
        } else {
            auto m = [&](int r, int c) { return v[c][rows[r]]; };
            det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        }
        total += w[mask] * det;
    }
    return total;
}

// ---------------------------------------------------------------- angles and functions

Angle Angle::parse(const std::string& s, bool exact)
{
    if (exact) return from_turns(parse_rational(s));
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidInput("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InvalidInput("not a number: '" + s + "'");
    return from_radians(v);
}

std::string Angle::describe() const
{
    if (turns) return Arith<Rational>::to_string(*turns) + " turns";
    return Arith<double>::to_string(radians);
}

AngleFunction AngleFunction::winding(int w, int coord)
{
    AngleFunction f;
    f.kind_ = Kind::winding;
    f.w_ = w;
    f.coord_ = coord;
    return f;
}

AngleFunction AngleFunction::linear(double c, int coord)
{
    AngleFunction f;
    f.kind_ = Kind::linear;
    f.c_ = c;
    f.coord_ = coord;
    return f;
}

AngleFunction AngleFunction::constant(Angle c)
{
    AngleFunction f;
    f.kind_ = Kind::constant;
    f.angle_ = c;
    return f;
}

double AngleFunction::log(int alpha, const SamplePoint& pt) const
{
    switch (kind_) {
    case Kind::winding: return static_cast<double>(w_) * pt.angle(alpha, coord_);
    case Kind::linear: return c_ * pt.x[coord_];
    case Kind::constant: return angle_.radians;
    }
    return 0;
}

Form AngleFunction::dlog(const SamplePoint&) const
{
    switch (kind_) {
    case Kind::winding: return differential(coord_, static_cast<double>(w_));
    case Kind::linear: return differential(coord_, c_);
    case Kind::constant: return Form{};
    }
    return Form{};
}

long AngleFunction::jump(int a, int b, const SamplePoint& pt) const
{
    if (kind_ != Kind::winding) return 0;
    return w_ * (pt.shift(b, coord_) - pt.shift(a, coord_));
}

std::optional<Rational> AngleFunction::exact_log() const
{
    if (kind_ == Kind::constant) return angle_.turns;
    return std::nullopt;
}

void AngleFunction::check(const Geometry& g) const
{
    if (kind_ == Kind::constant) return;
    if (coord_ < 0 || coord_ >= 3) throw InvalidInput(describe() + ": coordinate out of range");
    if (kind_ == Kind::winding) {
        if (g.radial || coord_ >= g.coord_dim || !g.periodic[coord_])
            throw InvalidInput(describe() + ": coordinate " + std::to_string(coord_) + " of " + g.name +
                               " is not an angle");
    } else if (!g.radial && coord_ >= g.coord_dim) {
        throw InvalidInput(describe() + ": " + g.name + " has " + std::to_string(g.coord_dim) + " coordinates");
    }
}

std::string AngleFunction::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::winding: os << "winding(w=" << w_ << ",coord=" << coord_ << ")"; break;
    case Kind::linear: os << "linear(c=" << Arith<double>::to_string(c_) << ",coord=" << coord_ << ")"; break;
    case Kind::constant: os << "constant(c=" << angle_.describe() << ")"; break;
    }
    return os.str();
}

// ---------------------------------------------------------------- line classes

namespace {

class FlatCircleLine final : public LineClass {
public:
    explicit FlatCircleLine(Angle theta) : theta_(std::move(theta)) {}
    std::string describe() const override { return "flat_circle(theta=" + theta_.describe() + ")"; }
    void check(const Geometry& g) const override
    {
        if (g.radial || !g.periodic[0]) throw InvalidInput("flat_circle needs an angle as first coordinate");
    }
    double transition(int a, int b, const SamplePoint& pt) const override
    {
        return -theta_.radians * (pt.shift(b, 0) - pt.shift(a, 0));
    }
    Form connection(int, const SamplePoint&) const override { return Form{}; }
    Form curvature(const SamplePoint&) const override { return Form{}; }
    long chern(int, int, int, const SamplePoint&) const override { return 0; }
    std::optional<Rational> exact_transition(int a, int b, const SamplePoint& pt) const override
    {
        if (!theta_.turns) return std::nullopt;
        return Rational(-*theta_.turns * (pt.shift(b, 0) - pt.shift(a, 0)));
    }
    bool flat_and_discrete() const override { return theta_.turns.has_value(); }

private:
    Angle theta_;
};

/// Chart 0 is the northern hemisphere, charts 1..4 the southern quadrant sectors.
class MonopoleLine final : public LineClass {
public:
    explicit MonopoleLine(long k) : k_(k) {}
    std::string describe() const override { return "monopole(k=" + std::to_string(k_) + ")"; }
    void check(const Geometry& g) const override
    {
        if (!g.radial || g.charts.size() != 5)
            throw InvalidInput("monopole needs sphere-octahedron-5chart: a single southern chart has no "
                               "single-valued azimuth on the equator band");
    }
    double transition(int a, int b, const SamplePoint& pt) const override
    {
        if (a == b) return 0;
        if (a == 0) return -static_cast<double>(k_) * azimuth(b, pt);
        if (b == 0) return static_cast<double>(k_) * azimuth(a, pt);
        return 0;
    }
    Form connection(int a, const SamplePoint& pt) const override
    {
        const double x = pt.x[0], y = pt.x[1], z = pt.x[2];
        const double s = a == 0 ? 0.5 * k_ / (1 + z) : -0.5 * k_ / (1 - z);
        Form f{};
        f[1] = -s * y;
        f[2] = s * x;
        return f;
    }
    Form curvature(const SamplePoint& pt) const override
    {
        const double x = pt.x[0], y = pt.x[1], z = pt.x[2];
        Form f{};
        if (z >= 0) {
            const double h = 0.5 * k_;
            f[3] = h * 2 / (1 + z);
            f[6] = h * x / ((1 + z) * (1 + z));
            f[5] = -h * y / ((1 + z) * (1 + z));
        } else {
            const double h = -0.5 * k_;
            f[3] = h * 2 / (1 - z);
            f[5] = h * y / ((1 - z) * (1 - z));
            f[6] = -h * x / ((1 - z) * (1 - z));
        }
        return f;
    }
    long chern(int a, int b, int c, const SamplePoint& pt) const override
    {
        auto g = [&](int i, int j) -> long {
            if (i == j) return 0;
            if (i == 0) return -k_ * branch(j, pt);
            if (j == 0) return k_ * branch(i, pt);
            return 0;
        };
        return -(g(b, c) - g(a, c) + g(a, b));
    }

private:
    static double center(int chart, const SamplePoint& pt)
    {
        auto c = pt.geometry->charts[chart].center();
        return std::atan2(c[1], c[0]);
    }
    static long branch(int chart, const SamplePoint& pt)
    {
        double phi = std::atan2(pt.x[1], pt.x[0]);
        return std::lround((center(chart, pt) - phi) / kTwoPi);
    }
    static double azimuth(int chart, const SamplePoint& pt)
    {
        return std::atan2(pt.x[1], pt.x[0]) + kTwoPi * static_cast<double>(branch(chart, pt));
    }
    long k_;
};

class FunctionCupLine final : public LineClass {
public:
    FunctionCupLine(AngleFunction f, AngleFunction g) : f_(std::move(f)), g_(std::move(g)) {}
    std::string describe() const override { return "cup(" + f_.describe() + "," + g_.describe() + ")"; }
    void check(const Geometry& geo) const override
    {
        f_.check(geo);
        g_.check(geo);
    }
    double transition(int a, int b, const SamplePoint& pt) const override
    {
        return static_cast<double>(f_.jump(a, b, pt)) * g_.log(b, pt);
    }
    Form connection(int a, const SamplePoint& pt) const override
    {
        return scaled(g_.dlog(pt), f_.log(a, pt) / kTwoPi);
    }
    Form curvature(const SamplePoint& pt) const override
    {
        return scaled(wedge(f_.dlog(pt), g_.dlog(pt)), 1 / kTwoPi);
    }
    long chern(int a, int b, int c, const SamplePoint& pt) const override
    {
        return f_.jump(a, b, pt) * g_.jump(b, c, pt);
    }
    std::optional<Rational> exact_transition(int a, int b, const SamplePoint& pt) const override
    {
        auto h = g_.exact_log();
        if (!h) return std::nullopt;
        return Rational(*h * f_.jump(a, b, pt));
    }
    bool flat_and_discrete() const override { return g_.exact_log().has_value(); }

private:
    AngleFunction f_, g_;
};

}  // namespace

LinePtr flat_circle_line(Angle theta) { return std::make_shared<FlatCircleLine>(std::move(theta)); }
LinePtr monopole_line(long k) { return std::make_shared<MonopoleLine>(k); }
LinePtr function_cup_line(const AngleFunction& f, const AngleFunction& g)
{
    return std::make_shared<FunctionCupLine>(f, g);
}

// ---------------------------------------------------------------- presentations

Rational Presentation::exact_vertex(std::span<const int>, const SamplePoint&) const
{
    throw InvalidInput(describe() + " has no exact values");
}

namespace {

class FunctionPresentation final : public Presentation {
public:
    explicit FunctionPresentation(AngleFunction f) : f_(std::move(f)) {}
    int degree() const override { return 0; }
    std::string describe() const override { return f_.describe(); }
    void check(const Geometry& g) const override { f_.check(g); }
    Form component(int, std::span<const int> idx, const SamplePoint& pt) const override
    {
        return scalar(f_.log(idx[0], pt));
    }
    bool discrete() const override { return f_.exact_log().has_value(); }
    Rational exact_vertex(std::span<const int>, const SamplePoint&) const override { return *f_.exact_log(); }

private:
    AngleFunction f_;
};

class LinePresentation final : public Presentation {
public:
    explicit LinePresentation(LinePtr L) : L_(std::move(L)) {}
    int degree() const override { return 1; }
    std::string describe() const override { return L_->describe(); }
    void check(const Geometry& g) const override { L_->check(g); }
    Form component(int k, std::span<const int> idx, const SamplePoint& pt) const override
    {
        if (k == 0) return scalar(L_->transition(idx[0], idx[1], pt));
        return L_->connection(idx[0], pt);
    }
    bool discrete() const override { return L_->flat_and_discrete(); }
    Rational exact_vertex(std::span<const int> idx, const SamplePoint& pt) const override
    {
        return *L_->exact_transition(idx[0], idx[1], pt);
    }

private:
    LinePtr L_;
};

class CupFunctionLine final : public Presentation {
public:
    CupFunctionLine(AngleFunction f, LinePtr L) : f_(std::move(f)), L_(std::move(L)) {}
    int degree() const override { return 2; }
    std::string describe() const override { return "cup(" + f_.describe() + "," + L_->describe() + ")"; }
    void check(const Geometry& g) const override
    {
        f_.check(g);
        L_->check(g);
    }
    Form component(int k, std::span<const int> I, const SamplePoint& pt) const override
    {
        switch (k) {
        case 0: return scalar(static_cast<double>(f_.jump(I[0], I[1], pt)) * L_->transition(I[1], I[2], pt));
        case 1: return scaled(L_->connection(I[1], pt), static_cast<double>(f_.jump(I[0], I[1], pt)));
        default: return scaled(L_->curvature(pt), f_.log(I[0], pt) / kTwoPi);
        }
    }

private:
    AngleFunction f_;
    LinePtr L_;
};

class CupLineFunction final : public Presentation {
public:
    CupLineFunction(LinePtr L, AngleFunction f) : L_(std::move(L)), f_(std::move(f)) {}
    int degree() const override { return 2; }
    std::string describe() const override { return "cup(" + L_->describe() + "," + f_.describe() + ")"; }
    void check(const Geometry& g) const override
    {
        f_.check(g);
        L_->check(g);
    }
    Form component(int k, std::span<const int> I, const SamplePoint& pt) const override
    {
        switch (k) {
        case 0: return scalar(static_cast<double>(L_->chern(I[0], I[1], I[2], pt)) * f_.log(I[2], pt));
        case 1: return scaled(f_.dlog(pt), L_->transition(I[0], I[1], pt) / kTwoPi);
        default: return scaled(wedge(L_->connection(I[0], pt), f_.dlog(pt)), 1 / kTwoPi);
        }
    }

private:
    LinePtr L_;
    AngleFunction f_;
};

class CupLineLine final : public Presentation {
public:
    CupLineLine(LinePtr L, LinePtr J) : L_(std::move(L)), J_(std::move(J)) {}
    int degree() const override { return 3; }
    std::string describe() const override { return "cup(" + L_->describe() + "," + J_->describe() + ")"; }
    void check(const Geometry& g) const override
    {
        L_->check(g);
        J_->check(g);
    }
    Form component(int k, std::span<const int> I, const SamplePoint& pt) const override
    {
        switch (k) {
        case 0:
            return scalar(static_cast<double>(L_->chern(I[0], I[1], I[2], pt)) * J_->transition(I[2], I[3], pt));
        case 1: return scaled(J_->connection(I[2], pt), static_cast<double>(L_->chern(I[0], I[1], I[2], pt)));
        case 2: return scaled(J_->curvature(pt), L_->transition(I[0], I[1], pt) / kTwoPi);
        default: return scaled(wedge(L_->connection(I[0], pt), J_->curvature(pt)), 1 / kTwoPi);
        }
    }

private:
    LinePtr L_, J_;
};

class TriplePresentation final : public Presentation {
public:
    TriplePresentation(AngleFunction f, AngleFunction g, AngleFunction h)
        : f_(std::move(f)), g_(std::move(g)), h_(std::move(h))
    {
    }
    int degree() const override { return 2; }
    std::string describe() const override
    {
        return "triple(" + f_.describe() + "," + g_.describe() + "," + h_.describe() + ")";
    }
    void check(const Geometry& geo) const override
    {
        f_.check(geo);
        g_.check(geo);
        h_.check(geo);
    }
    Form component(int k, std::span<const int> I, const SamplePoint& pt) const override
    {
        switch (k) {
        case 0: {
            double n = static_cast<double>(f_.jump(I[0], I[1], pt) * g_.jump(I[1], I[2], pt));
            return scalar(n * h_.log(I[2], pt));
        }
        case 1:
            return scaled(h_.dlog(pt), static_cast<double>(f_.jump(I[0], I[1], pt)) * g_.log(I[1], pt) / kTwoPi);
        default:
            return scaled(wedge(g_.dlog(pt), h_.dlog(pt)), f_.log(I[0], pt) / (kTwoPi * kTwoPi));
        }
    }
    bool discrete() const override { return h_.exact_log().has_value(); }
    Rational exact_vertex(std::span<const int> I, const SamplePoint& pt) const override
    {
        return *h_.exact_log() * (f_.jump(I[0], I[1], pt) * g_.jump(I[1], I[2], pt));
    }

private:
    AngleFunction f_, g_, h_;
};

class TorsionPresentation final : public Presentation {
public:
    TorsionPresentation(Angle w, int p) : w_(std::move(w)), p_(p) {}
    int degree() const override { return p_; }
    std::string describe() const override
    {
        return "torsion(w=" + w_.describe() + ",p=" + std::to_string(p_) + ")";
    }
    void check(const Geometry& g) const override
    {
        if (g.radial || g.coord_dim < p_) throw InvalidInput("torsion of degree " + std::to_string(p_) + " needs " +
                                                             std::to_string(p_) + " angle coordinates");
        for (int j = 0; j < p_; ++j)
            if (!g.periodic[j]) throw InvalidInput("torsion: coordinate " + std::to_string(j) + " is not an angle");
    }
    Form component(int k, std::span<const int> I, const SamplePoint& pt) const override
    {
        if (k > 0) return Form{};
        return scalar(w_.radians * static_cast<double>(product(I, pt)));
    }
    bool discrete() const override { return w_.turns.has_value(); }
    Rational exact_vertex(std::span<const int> I, const SamplePoint& pt) const override
    {
        return *w_.turns * product(I, pt);
    }

private:
    long product(std::span<const int> I, const SamplePoint& pt) const
    {
        long n = 1;
        for (int j = 0; j < p_; ++j) n *= pt.shift(I[j + 1], j) - pt.shift(I[j], j);
        return n;
    }
    Angle w_;
    int p_;
};

class ZeroPresentation final : public Presentation {
public:
    explicit ZeroPresentation(int p) : p_(p) {}
    int degree() const override { return p_; }
    std::string describe() const override { return "zero(p=" + std::to_string(p_) + ")"; }
    Form component(int, std::span<const int>, const SamplePoint&) const override { return Form{}; }
    bool discrete() const override { return true; }
    Rational exact_vertex(std::span<const int>, const SamplePoint&) const override { return Rational(0); }

private:
    int p_;
};

}  // namespace

PresentationPtr function_presentation(const AngleFunction& f) { return std::make_shared<FunctionPresentation>(f); }
PresentationPtr line_presentation(LinePtr L) { return std::make_shared<LinePresentation>(std::move(L)); }
PresentationPtr cup_function_line(const AngleFunction& f, LinePtr L)
{
    return std::make_shared<CupFunctionLine>(f, std::move(L));
}
PresentationPtr cup_line_function(LinePtr L, const AngleFunction& f)
{
    return std::make_shared<CupLineFunction>(std::move(L), f);
}
PresentationPtr cup_line_line(LinePtr L, LinePtr J) { return std::make_shared<CupLineLine>(std::move(L), std::move(J)); }
PresentationPtr triple_product(const AngleFunction& f, const AngleFunction& g, const AngleFunction& h)
{
    return std::make_shared<TriplePresentation>(f, g, h);
}
PresentationPtr torsion_class(Angle w, int p)
{
    if (p < 1) throw InvalidInput("torsion degree must be at least 1");
    return std::make_shared<TorsionPresentation>(std::move(w), p);
}
PresentationPtr zero_class(int p)
{
    if (p < 0) throw InvalidInput("degree must be nonnegative");
    return std::make_shared<ZeroPresentation>(p);
}

int operand_degree(const Operand& a)
{
    if (std::holds_alternative<AngleFunction>(a)) return 0;
    if (std::holds_alternative<LinePtr>(a)) return 1;
    return std::get<PresentationPtr>(a)->degree();
}

PresentationPtr to_presentation(const Operand& a)
{
    if (auto f = std::get_if<AngleFunction>(&a)) return function_presentation(*f);
    if (auto L = std::get_if<LinePtr>(&a)) return line_presentation(*L);
    return std::get<PresentationPtr>(a);
}

std::string describe(const Operand& a) { return to_presentation(a)->describe(); }

Operand cup_product(const Operand& a, const Operand& b)
{
    auto fa = std::get_if<AngleFunction>(&a);
    auto fb = std::get_if<AngleFunction>(&b);
    auto la = std::get_if<LinePtr>(&a);
    auto lb = std::get_if<LinePtr>(&b);
    if (fa && fb) return function_cup_line(*fa, *fb);
    if (fa && lb) return cup_function_line(*fa, *lb);
    if (la && fb) return cup_line_function(*la, *fb);
    if (la && lb) return cup_line_line(*la, *lb);
    throw InvalidInput("unsupported cup product: degrees " + std::to_string(operand_degree(a)) + " and " +
                       std::to_string(operand_degree(b)));
}

// ---------------------------------------------------------------- fixtures

namespace {

long parse_integer(const std::string& key, const std::string& s)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidInput("parameter " + key + " must be an integer, got '" + s + "'");
    return v;
}

double parse_real(const std::string& key, const std::string& s)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidInput("parameter " + key + " must be a number, got '" + s + "'");
    return v;
}

class ParamReader {
public:
    ParamReader(std::string what, const Params& p) : what_(std::move(what)), p_(p) {}
    std::string get(const std::string& key, const std::string& fallback)
    {
        seen_.push_back(key);
        auto it = p_.find(key);
        return it == p_.end() ? fallback : it->second;
    }
    long integer(const std::string& key, long fallback)
    {
        auto s = get(key, "");
        return s.empty() ? fallback : parse_integer(key, s);
    }
    void done() const
    {
        for (const auto& [k, v] : p_)
            if (std::find(seen_.begin(), seen_.end(), k) == seen_.end())
                throw InvalidInput(what_ + ": unknown parameter '" + k + "'");
    }

private:
    std::string what_;
    const Params& p_;
    std::vector<std::string> seen_;
};

const char* torus_for(long p)
{
    switch (p) {
    case 1: return "circle-3arc";
    case 2: return "torus2-4chart";
    case 3: return "torus3-8chart";
    default: throw InvalidInput("no built-in closed geometry of dimension " + std::to_string(p));
    }
}

}  // namespace

Fixture generate_fixture(const std::string& name, const Params& params, bool exact)
{
    ParamReader r(name, params);
    Fixture out;
    if (name == "flat_circle") {
        out.value = flat_circle_line(Angle::parse(r.get("theta", "0"), exact));
        out.geometry = "circle-2arc";
    } else if (name == "winding_function") {
        out.value = AngleFunction::winding(static_cast<int>(r.integer("w", 1)), static_cast<int>(r.integer("coord", 0)));
        out.geometry = "circle-3arc";
    } else if (name == "monopole") {
        out.value = monopole_line(r.integer("k", 1));
        out.geometry = "sphere-octahedron-5chart";
    } else if (name == "torsion") {
        long p = r.integer("p", 1);
        out.value = torsion_class(Angle::parse(r.get("w", "0"), exact), static_cast<int>(p));
        out.geometry = torus_for(p);
    } else if (name == "zero") {
        long p = r.integer("p", 1);
        out.value = zero_class(static_cast<int>(p));
        out.geometry = p >= 1 && p <= 3 ? torus_for(p) : "circle-3arc";
    } else {
        throw InvalidInput("unknown fixture '" + name +
                           "' (flat_circle, winding_function, monopole, torsion, zero)");
    }
    r.done();
    return out;
}

Operand parse_operand(const std::string& spec, bool exact)
{
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    Params params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw InvalidInput("operand parameter without '=': '" + item + "'");
            params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    ParamReader r(name, params);
    Operand out;
    if (name == "winding") {
        out = AngleFunction::winding(static_cast<int>(r.integer("w", 1)), static_cast<int>(r.integer("coord", 0)));
    } else if (name == "linear") {
        out = AngleFunction::linear(parse_real("c", r.get("c", "1")), static_cast<int>(r.integer("coord", 0)));
    } else if (name == "constant") {
        out = AngleFunction::constant(Angle::parse(r.get("c", "0"), exact));
    } else if (name == "flat_circle") {
        out = flat_circle_line(Angle::parse(r.get("theta", "0"), exact));
    } else if (name == "monopole") {
        out = monopole_line(r.integer("k", 1));
    } else {
        throw InvalidInput("unknown operand '" + name + "' (winding, linear, constant, flat_circle, monopole)");
    }
    r.done();
    return out;
}

// ---------------------------------------------------------------- discretization

Discretization discretize(const Presentation& a, GeometryPtr g, int quad_order, double base_tol)
{
    if (quad_order < 1) throw InvalidInput("quadrature order must be at least 1");
    a.check(*g);
    const int p = a.degree();
    Discretization out;
    Cochain c(g->covered, p);
    const auto& K = g->complex();
    const int top = std::min(p, K.dim());
    double estimate = 0;
    for (int k = 0; k <= top; ++k)
        for (std::size_t i = 0; i < K.count(k); ++i) {
            const int si = static_cast<int>(i);
            c.for_each_entry_mut(k, si, [&](std::span<const int> I, double& v) {
                auto form = [&](const SamplePoint& pt) { return a.component(k, I, pt); };
                v = integrate_form(*g, k, si, quad_order, form);
                if (k > 0) estimate = std::max(estimate, std::fabs(v - integrate_form(*g, k, si, quad_order + 4, form)));
            });
        }
    out.error_estimate = estimate;
    out.tolerance = base_tol + 20 * estimate;
    out.report = validate_cocycle(c, out.tolerance);
    if (!out.report.passed())
        throw ValidationFailure(a.describe() + " on " + g->name + " is not a cocycle within " +
                                    Arith<double>::to_string(out.tolerance),
                                out.report.worst());
    c.set_cocycle_flag(true);
    out.cochain = std::move(c);
    return out;
}

RationalCochain discretize_exact(const Presentation& a, GeometryPtr g)
{
    a.check(*g);
    if (!a.discrete()) throw InvalidInput(a.describe() + " has nonzero forms or inexact parameters");
    RationalCochain c(g->covered, a.degree());
    const auto& K = g->complex();
    for (std::size_t i = 0; i < K.count(0); ++i) {
        const int si = static_cast<int>(i);
        SamplePoint pt{g.get(), 0, si, g->frames[0][i][0], g->frames[0][i][0]};
        std::array<Vec3, 3> J;
        g->realize(pt.u, pt.x, J);
        c.for_each_entry_mut(0, si, [&](std::span<const int> I, Rational& v) { v = a.exact_vertex(I, pt); });
    }
    return certify(c, 0.0);
}

}  // namespace deligne
