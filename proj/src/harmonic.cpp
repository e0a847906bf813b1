#include "vp/harmonic.hpp"

#include <cmath>
#include <string>

#include "vp/errors.hpp"
#include "vp/volume.hpp"

namespace vp {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

double sinc(double t) {
    double z = kPi * t;
    if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0 + z * z * z * z / 120.0;
    return std::sin(z) / z;
}

CatalogFunction CatalogFunction::sinc2_product(int n) {
    if (n < 1) throw input_error("sinc2_product: dimension must be >= 1");
    CatalogFunction f;
    f.kind = Kind::Sinc2Product;
    f.dim = n;
    return f;
}

CatalogFunction CatalogFunction::indicator_ft_cube(int n) {
    if (n < 1) throw input_error("indicator_ft_cube: dimension must be >= 1");
    CatalogFunction f;
    f.kind = Kind::IndicatorFtCube;
    f.dim = n;
    return f;
}

CatalogFunction CatalogFunction::indicator_ft_ball(int n) {
    if (n != 2 && n != 3) throw input_error("indicator_ft_ball: supported in dimensions 2 and 3");
    CatalogFunction f;
    f.kind = Kind::IndicatorFtBall;
    f.dim = n;
    return f;
}

CatalogFunction CatalogFunction::gaussian(int n, double scale) {
    if (n < 1 || !(scale > 0.0)) throw input_error("gaussian: need n >= 1 and scale > 0");
    CatalogFunction f;
    f.kind = Kind::Gaussian;
    f.dim = n;
    f.scale = scale;
    return f;
}

namespace {

// Normalized inverse transform of the ball indicator, as a function of the
// radius r = |x|; equals 1 at the origin.
double ball_witness_radial(int n, double r) {
    if (r < 1e-9) return 1.0;
    if (n == 2) return std::cyl_bessel_j(1.0, kTwoPi * r) / (kPi * r);
    // n == 3: (sin z - z cos z)/z^3 * 3  with z = 2 pi r
    double z = kTwoPi * r;
    return 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
}

} // namespace

double CatalogFunction::value(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim) throw input_error("catalog function: dimension mismatch");
    switch (kind) {
        case Kind::Sinc2Product: {
            double v = 1.0;
            for (double c : x) {
                double s = sinc(c);
                v *= s * s;
            }
            return v;
        }
        case Kind::IndicatorFtCube: {
            double v = 1.0;
            for (double c : x) v *= sinc(2.0 * c);
            return v;
        }
        case Kind::IndicatorFtBall: return ball_witness_radial(dim, norm(x));
        case Kind::Gaussian: return std::exp(-scale * dot(x, x));
    }
    throw input_error("catalog function: unknown kind");
}

double CatalogFunction::transform_value(const Vec& xi) const {
    if (static_cast<int>(xi.size()) != dim) throw input_error("catalog function: dimension mismatch");
    switch (kind) {
        case Kind::Sinc2Product: {
            double v = 1.0;
            for (double c : xi) v *= std::max(0.0, 1.0 - std::abs(c));
            return v;
        }
        case Kind::IndicatorFtCube: {
            for (double c : xi)
                if (std::abs(c) > 1.0) return 0.0;
            return std::pow(0.5, dim);
        }
        case Kind::IndicatorFtBall:
            return norm(xi) <= 1.0 ? 1.0 / ball_volume(dim) : 0.0;
        case Kind::Gaussian:
            return std::pow(kPi / scale, dim / 2.0) * std::exp(-kPi * kPi * dot(xi, xi) / scale);
    }
    throw input_error("catalog function: unknown kind");
}

std::string CatalogFunction::name() const {
    switch (kind) {
        case Kind::Sinc2Product: return "sinc2-product-" + std::to_string(dim);
        case Kind::IndicatorFtCube: return "cube-witness-" + std::to_string(dim);
        case Kind::IndicatorFtBall: return "ball-witness-" + std::to_string(dim);
        case Kind::Gaussian: return "gaussian-" + std::to_string(dim);
    }
    return "unknown";
}

namespace {

// Simpson over [0, R] for an even integrand; the caller doubles и adds the
// analytic tail.
template <typename F>
double half_line_simpson(F&& f, double r_max, double step) {
    std::size_t intervals = static_cast<std::size_t>(std::ceil(r_max / step));
    if (intervals % 2 == 1) ++intervals;
    double h = r_max / static_cast<double>(intervals);
    double acc = f(0.0) + f(r_max);
    double c = 0.0; // Kahan compensation
    for (std::size_t i = 1; i < intervals; ++i) {
        double term = f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        double y = term - c;
        double t = acc + y;
        c = (t - acc) - y;
        acc = t;
    }
    return acc * h / 3.0;
}

// Tail of sinc^2(a x) beyond R: expand sin^2 and integrate the oscillatory
// part by parts twice.
double sinc2_tail(double a, double r) {
    double k = kTwoPi * a;
    return (1.0 / (2.0 * kPi * kPi * a * a)) *
           (1.0 / r + std::sin(k * r) / (k * r * r) - 2.0 * std::cos(k * r) / (k * k * r * r * r));
}

// Full-line integral of sinc^2(a x).
double integral_sinc2(double a, const QuadConfig& quad) {
    double r = quad.cutoff > 0.0 ? quad.cutoff : 400.0;
    double h = quad.step > 0.0 ? quad.step : 1e-3;
    double body = half_line_simpson([a](double x) { double s = sinc(a * x); return s * s; }, r, h);
    return 2.0 * (body + sinc2_tail(a, r));
}

double sinc4_tail(double r) {
    auto c4 = [&](double k) { return -std::sin(k * r) / (k * r * r * r * r); };
    return (1.0 / (kPi * kPi * kPi * kPi)) *
           (0.125 / (r * r * r) - 0.5 * c4(kTwoPi) + 0.125 * c4(2.0 * kTwoPi));
}

double integral_sinc4(const QuadConfig& quad) {
    double r = quad.cutoff > 0.0 ? quad.cutoff : 80.0;
    double h = quad.step > 0.0 ? quad.step : 5e-4;
    double body = half_line_simpson([](double x) { double s = sinc(x); return s * s * s * s; }, r, h);
    return 2.0 * (body + sinc4_tail(r));
}

// Int exp(-2 s x^2) dx over the line; the tail beyond r is below 1e-60 for
// the defaults, no correction term needed.
double integral_gaussian_sq(double s, const QuadConfig& quad) {
    double r = quad.cutoff > 0.0 ? quad.cutoff : 12.0 / std::sqrt(s);
    double h = quad.step > 0.0 ? quad.step : 1e-4 * r;
    double body = half_line_simpson([s](double x) { return std::exp(-2.0 * s * x * x); }, r, h);
    return 2.0 * body;
}

// Radial quadrature of |ball witness|^2 over R^n.
double integral_ball_witness_sq(int n, const QuadConfig& quad) {
    double r = quad.cutoff > 0.0 ? quad.cutoff : 3000.0;
    double h = quad.step > 0.0 ? quad.step : 0.01;
    double body = half_line_simpson(
        [n](double rad) {
            double f = ball_witness_radial(n, rad);
            return f * f * sphere_measure(n) * std::pow(rad, n - 1);
        },
        r, h);
    // mean of the oscillatory envelope beyond the cutoff:
    // n = 2: surface * J1^2/(pi r)^2 averages to 1/(pi^3 r^2);
    // n = 3: surface * (3 cos z / z^2)^2 averages to 9/(8 pi^3 r^2).
    double tail = n == 2 ? 1.0 / (kPi * kPi * kPi * r) : 9.0 / (8.0 * kPi * kPi * kPi * r);
    return body + tail;
}

} // namespace

CheckReport rho_witness_check(WitnessBody body, int n, const QuadConfig& quad) {
    double quadrature = 0.0;
    double tol = 0.0;
    double target = 0.0;
    std::string name;
    if (body == WitnessBody::Cube) {
        if (n < 1 || n > 3) throw capability_error("rho witness: cube supported for n <= 3");
        target = std::pow(0.5, n); // 1 / vol([-1,1]^n)
        double axis = integral_sinc2(2.0, quad);
        quadrature = std::pow(axis, n);
        tol = 1e-6;
        name = "rho-witness-cube-" + std::to_string(n);
    } else {
        if (n != 2 && n != 3) throw capability_error("rho witness: ball supported for n in {2, 3}");
        target = 1.0 / ball_volume(n);
        quadrature = integral_ball_witness_sq(n, quad);
        tol = 1e-4;
        name = "rho-witness-ball-" + std::to_string(n);
    }
    // Plancherel shortcut: the witness transform is 1_K / vol K, so the L2
    // mass equals the target exactly; the quadrature must meet it.
    double plancherel = target;
    CheckReport rep = make_report(name, quadrature, target, Relation::Equal, tol);
    rep.pass = rep.pass && std::abs(plancherel - target) <= 1e-12;
    rep.notes = "plancherel route equals the target by construction";
    return rep;
}

EtaReport eta_cube_check(int n, int lattice_radius, const QuadConfig& quad) {
    if (n < 1 || n > 3) throw input_error("eta cube check: n must be in 1..3");
    if (lattice_radius < 1) throw input_error("eta cube check: lattice radius must be >= 1");
    EtaReport out;

    double axis = integral_sinc2(1.0, quad);
    out.upper = make_report("eta-cube-upper-" + std::to_string(n), std::pow(axis, n), 1.0,
                            Relation::Equal, 1e-9);

    // Lattice sum of the witness over |m|_inf <= radius. Every term away
    // from the origin is an exact zero of sin(pi m); the sum must equal the
    // witness value 1 at the origin.
    CatalogFunction f = CatalogFunction::sinc2_product(n);
    const long long width = 2 * lattice_radius + 1;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= width;
    double acc = 0.0, comp = 0.0, max_term = 0.0;
    Vec m(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < total; ++idx) {
        long long rest = idx;
        bool origin = true;
        for (int i = 0; i < n; ++i) {
            m[i] = static_cast<double>(rest % width - lattice_radius);
            origin = origin && m[i] == 0.0;
            rest /= width;
        }
        double term = f.value(m);
        if (!origin) max_term = std::max(max_term, std::abs(term));
        double y = term - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    out.lower = make_report("eta-cube-lower-" + std::to_string(n), acc, 1.0,
                            Relation::GreaterEqual, 1e-9);
    // the mechanism: the sum must also not exceed F(0) for this witness
    out.lower.pass = out.lower.pass && std::abs(acc - 1.0) <= 1e-9 && max_term <= 1e-15;
    out.max_offcenter_term = max_term;
    return out;
}

CheckReport poisson_check(const CatalogFunction& f, int lattice_radius) {
    if (lattice_radius < 1) throw input_error("poisson check: lattice radius must be >= 1");
    if (f.kind != CatalogFunction::Kind::Gaussian && f.kind != CatalogFunction::Kind::Sinc2Product)
        throw input_error("poisson check: supported for gaussian and sinc2 catalog functions");
    const int n = f.dim;
    const long long width = 2 * lattice_radius + 1;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= width;

    double side_f = 0.0, comp_f = 0.0, side_t = 0.0, comp_t = 0.0;
    Vec m(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < total; ++idx) {
        long long rest = idx;
        for (int i = 0; i < n; ++i) {
            m[i] = static_cast<double>(rest % width - lattice_radius);
            rest /= width;
        }
        double a = f.value(m) - comp_f;
        double t1 = side_f + a;
        comp_f = (t1 - side_f) - a;
        side_f = t1;
        double b = f.transform_value(m) - comp_t;
        double t2 = side_t + b;
        comp_t = (t2 - side_t) - b;
        side_t = t2;
    }

    double r = static_cast<double>(lattice_radius);
    double tail = 0.0;
    if (f.kind == CatalogFunction::Kind::Gaussian) {
        double s = f.scale;
        double shell = std::pow(2.0 * r + 3.0, n - 1) * 2.0 * n;
        tail = shell * (std::exp(-s * (r + 1.0) * (r + 1.0)) * 3.0 +
                        std::pow(kPi / s, n / 2.0) *
                            std::exp(-kPi * kPi * (r + 1.0) * (r + 1.0) / s) * 3.0);
    } else {
        // function side per axis decays like 1/(pi^2 m); transform side is
        // compactly supported so only the function tail contributes
        tail = 2.0 * n / (kPi * kPi * r) * std::pow(1.2, n - 1);
    }
    CheckReport rep = make_report("poisson-" + f.name(), std::abs(side_f - side_t), 0.0,
                                  Relation::LessEqual, tail + 1e-9);
    return rep;
}

CheckReport plancherel_check(const CatalogFunction& f, const QuadConfig& quad) {
    const int n = f.dim;
    double lhs = 0.0, rhs = 0.0, tol = 1e-9;
    switch (f.kind) {
        case CatalogFunction::Kind::Sinc2Product: {
            lhs = std::pow(integral_sinc4(quad), n);
            // triangle^2 per axis: Simpson on [0,1] is exact for quadratics
            double axis = 2.0 * half_line_simpson(
                [](double x) { double t = std::max(0.0, 1.0 - x); return t * t; }, 1.0,
                quad.step > 0.0 ? quad.step : 1e-3);
            rhs = std::pow(axis, n);
            break;
        }
        case CatalogFunction::Kind::IndicatorFtCube: {
            lhs = std::pow(integral_sinc2(2.0, quad), n);
            rhs = std::pow(0.5, n); // (2^-n)^2 * vol([-1,1]^n)
            break;
        }
        case CatalogFunction::Kind::Gaussian: {
            lhs = std::pow(integral_gaussian_sq(f.scale, quad), n);
            double s2 = kPi * kPi / f.scale; // transform scale
            rhs = std::pow(kPi / f.scale, n) * std::pow(integral_gaussian_sq(s2, quad), n);
            break;
        }
        case CatalogFunction::Kind::IndicatorFtBall: {
            lhs = integral_ball_witness_sq(n, quad);
            rhs = 1.0 / ball_volume(n); // (1/vol)^2 * vol
            tol = 1e-4;
            break;
        }
    }
    return make_report("plancherel-" + f.name(), lhs, rhs, Relation::Equal, tol);
}

} // namespace vp
