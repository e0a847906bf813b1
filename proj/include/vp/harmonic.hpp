#pragma once

#include <vector>

#include "vp/linalg.hpp"
#include "vp/report.hpp"

namespace vp {

// Transform convention: F^(xi) = Int F(x) exp(-2 pi i <x, xi>) dx, so the
// catalog constants carry no stray 2*pi factors. Transforms are closed-form
// metadata; nothing here runs an FFT.
struct CatalogFunction {
    enum class Kind {
        Sinc2Product,    // prod_k sinc^2(x_k); transform = triangle product on [-1,1]^n
        IndicatorFtCube, // prod_k sinc(2 x_k); transform = 2^-n on [-1,1]^n
        IndicatorFtBall, // inverse transform of 1_ball / vol(ball), n in {2, 3}
        Gaussian         // exp(-scale |x|^2); transform (pi/scale)^{n/2} exp(-pi^2 |xi|^2/scale)
    };
    Kind kind = Kind::Gaussian;
    int dim = 1;
    double scale = 3.14159265358979323846264338327950288; // self-transform default

    static CatalogFunction sinc2_product(int n);
    static CatalogFunction indicator_ft_cube(int n);
    static CatalogFunction indicator_ft_ball(int n);
    static CatalogFunction gaussian(int n, double scale);

    double value(const Vec& x) const;
    double transform_value(const Vec& xi) const;
    std::string name() const;
};

// Truncation radius and Simpson step for the 1-D quadratures; zeros pick the
// per-kind tuned defaults (analytic tail corrections included).
struct QuadConfig {
    double cutoff = 0.0;
    double step = 0.0;
};

double sinc(double t); // sin(pi t) / (pi t)

enum class WitnessBody { Cube, Ball };

// L2 mass of the optimal admissible witness against the target 1/vol(K):
// route (a) truncated quadrature with tail correction, route (b) the
// Plancherel shortcut. Cube n <= 3, ball n in {2, 3}.
CheckReport rho_witness_check(WitnessBody body, int n, const QuadConfig& quad = {});

// Cube case of the lattice functional: (upper) the sinc^2 witness integrates
// to one, (lower) its lattice sum collapses to the value at the origin since
// sin(pi m) vanishes at every nonzero integer.
struct EtaReport {
    CheckReport upper;
    CheckReport lower;
    double max_offcenter_term = 0.0;
};
EtaReport eta_cube_check(int n, int lattice_radius, const QuadConfig& quad = {});

// Lattice sums of f and its transform agree up to the truncation tails.
// Supported kinds: Gaussian and Sinc2Product.
CheckReport poisson_check(const CatalogFunction& f, int lattice_radius);

// Quadrature of |f|^2 against |f^|^2.
CheckReport plancherel_check(const CatalogFunction& f, const QuadConfig& quad = {});

} // namespace vp
