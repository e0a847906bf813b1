#include "vp/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vp/errors.hpp"
#include "vp/hull.hpp"
#include "vp/perturb.hpp"
#include "vp/polar.hpp"
#include "vp/rng.hpp"
#include "vp/volume.hpp"

namespace vp {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

double GridFunction::coord(int index) const {
    int half = (points - 1) / 2;
    return (index - half) * (extent / half);
}

std::size_t GridFunction::node_count() const {
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(points);
    return total;
}

namespace {

void validate_shape(int n, double extent, int m) {
    if (n < 1 || n > 3) throw input_error("grid function: dimension must be 1..3");
    if (!(extent > 0.0)) throw input_error("grid function: extent must be positive");
    if (m < 3 || m % 2 == 0) throw input_error("grid function: points per axis must be odd >= 3");
    if (m > 513) throw input_error("grid function: points per axis capped at 513");
    // the conjugation passes cost m^(n+1); keep 3-D grids desk sized
    if (n == 3 && m > 129) throw input_error("grid function: 3-D grids capped at 129 per axis");
}

// Walk indices as digits of base `points`; first axis slowest.
void unflatten(std::size_t flat, int n, int m, int* idx) {
    for (int a = n - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % m);
        flat /= m;
    }
}

std::size_t flatten(const int* idx, int n, int m) {
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) flat = flat * m + static_cast<std::size_t>(idx[a]);
    return flat;
}

// Fill by evaluating at the mirror-canonical node (first nonzero coordinate
// positive) so even symmetry holds exactly.
template <typename F>
GridFunction sample_even(int n, double extent, int m, GridFunction::Tag tag,
                         std::optional<ConvexBody> body, F&& eval) {
    validate_shape(n, extent, m);
    GridFunction g;
    g.dim = n;
    g.extent = extent;
    g.points = m;
    g.tag = tag;
    g.tag_body = std::move(body);
    g.values.assign(g.node_count(), 0.0);
    const int half = (m - 1) / 2;
    int idx[3] = {0, 0, 0};
    // evaluate the canonical half first, then mirror (mirrors of canonical
    // nodes have larger flat indices, so a single pass would read zeros)
    for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
        unflatten(flat, n, m, idx);
        int first_sign = 0;
        for (int a = 0; a < n && first_sign == 0; ++a)
            first_sign = (idx[a] > half) - (idx[a] < half);
        if (first_sign < 0) continue;
        Vec x(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) x[a] = g.coord(idx[a]);
        g.values[flat] = eval(x);
    }
    for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
        unflatten(flat, n, m, idx);
        int first_sign = 0;
        for (int a = 0; a < n && first_sign == 0; ++a)
            first_sign = (idx[a] > half) - (idx[a] < half);
        if (first_sign < 0) {
            int mirror[3];
            for (int a = 0; a < n; ++a) mirror[a] = m - 1 - idx[a];
            g.values[flat] = g.values[flatten(mirror, n, m)];
        }
    }
    return g;
}

} // namespace

GridFunction grid_gaussian(int n, double extent, int m) {
    return sample_even(n, extent, m, GridFunction::Tag::Gaussian, std::nullopt,
                       [](const Vec& x) { return std::exp(-0.5 * dot(x, x)); });
}

GridFunction grid_indicator(const ConvexBody& k, double extent, int m) {
    if (k.dim() > 3) throw input_error("grid_indicator: grid dimensions capped at 3");
    return sample_even(k.dim(), extent, m, GridFunction::Tag::Indicator, k,
                       [&k](const Vec& x) { return member(k, x, 0.0) ? 1.0 : 0.0; });
}

GridFunction grid_exp_neg_gauge(const ConvexBody& k, double extent, int m) {
    return sample_even(k.dim(), extent, m, GridFunction::Tag::ExpNegGauge, k,
                       [&k](const Vec& x) { return std::exp(-gauge(k, x)); });
}

GridFunction grid_from_values(int n, double extent, int m, std::vector<double> values) {
    validate_shape(n, extent, m);
    GridFunction g;
    g.dim = n;
    g.extent = extent;
    g.points = m;
    g.values = std::move(values);
    if (g.values.size() != g.node_count())
        throw input_error("grid function: value array has the wrong length");
    for (double v : g.values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw input_error("grid function: values must be finite and nonnegative");
    return g;
}

nlohmann::json grid_to_json(const GridFunction& f) {
    return {{"dim", f.dim}, {"extent", f.extent}, {"m", f.points}, {"values", f.values}};
}

GridFunction grid_from_json(const nlohmann::json& j) {
    return grid_from_values(j.at("dim").get<int>(), j.at("extent").get<double>(),
                            j.at("m").get<int>(), j.at("values").get<std::vector<double>>());
}

namespace {

std::vector<double> simpson_axis_weights(int m, double h) {
    std::vector<double> w(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) w[i] = (i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    for (double& v : w) v *= h / 3.0;
    return w;
}

} // namespace

double grid_integral(const GridFunction& f) {
    return grid_integral_weighted(f, [](const Vec&) { return 1.0; });
}

namespace {

// Sharp-support grids (indicators) break Simpson's smoothness premise: the
// alternating 4-2 weights turn every boundary cell into a deterministic
// O(h) bias. Detected by exact zeros adjacent to support.
bool has_sharp_support(const GridFunction& f) {
    const int n = f.dim;
    const int m = f.points;
    int idx[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        if (f.values[flat] <= 0.0) continue;
        unflatten(flat, n, m, idx);
        for (int a = 0; a < n; ++a) {
            for (int d = -1; d <= 1; d += 2) {
                int nb = idx[a] + d;
                if (nb < 0 || nb >= m) continue;
                int jdx[3] = {idx[0], idx[1], idx[2]};
                jdx[a] = nb;
                if (f.values[flatten(jdx, n, m)] == 0.0) return true;
            }
        }
    }
    return false;
}

} // namespace

namespace {

// Indicator grids with the body attached: cell rule with the boundary cells
// resolved by deterministic sub-cell membership coverage.
double indicator_cell_integral(const GridFunction& f,
                               const std::function<double(const Vec&)>& weight) {
    const int n = f.dim;
    const int m = f.points;
    const double h = f.step();
    const ConvexBody& body = *f.tag_body;
    constexpr int kSub = 8; // 8^n coverage samples per ambiguous cell
    int idx[3] = {0, 0, 0};
    double acc = 0.0, comp = 0.0;
    Vec x(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        unflatten(flat, n, m, idx);
        for (int a = 0; a < n; ++a) x[a] = f.coord(idx[a]);
        // neighborhood test: cells whose whole 1-ring shares the node value
        // are uniformly inside or outside
        bool mixed = false;
        for (int a = 0; a < n && !mixed; ++a)
            for (int d = -1; d <= 1 && !mixed; d += 2) {
                int nb = idx[a] + d;
                double nbv = 0.0;
                if (nb >= 0 && nb < m) {
                    int jdx[3] = {idx[0], idx[1], idx[2]};
                    jdx[a] = nb;
                    nbv = f.values[flatten(jdx, n, m)];
                }
                mixed = (nbv > 0.0) != (f.values[flat] > 0.0);
            }
        double coverage;
        if (!mixed) {
            coverage = f.values[flat] > 0.0 ? 1.0 : 0.0;
        } else {
            long long inside = 0;
            int sub[3] = {0, 0, 0};
            long long total = 1;
            for (int a = 0; a < n; ++a) total *= kSub;
            Vec probe(static_cast<std::size_t>(n));
            for (long long sflat = 0; sflat < total; ++sflat) {
                long long rest = sflat;
                for (int a = 0; a < n; ++a) {
                    sub[a] = static_cast<int>(rest % kSub);
                    rest /= kSub;
                }
                for (int a = 0; a < n; ++a)
                    probe[a] = x[a] + h * ((sub[a] + 0.5) / kSub - 0.5);
                if (member(body, probe, 0.0)) ++inside;
            }
            coverage = static_cast<double>(inside) / static_cast<double>(total);
        }
        if (coverage == 0.0) continue;
        double term = std::pow(h, n) * coverage * weight(x);
        double y = term - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

} // namespace

double grid_integral_weighted(const GridFunction& f,
                              const std::function<double(const Vec&)>& weight) {
    if (f.tag == GridFunction::Tag::Indicator && f.tag_body.has_value())
        return indicator_cell_integral(f, weight);
    const bool sharp = has_sharp_support(f);
    std::vector<double> w = simpson_axis_weights(f.points, f.step());
    const int m = f.points;
    int idx[3] = {0, 0, 0};
    double acc = 0.0, comp = 0.0;
    Vec x(static_cast<std::size_t>(f.dim));
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        unflatten(flat, f.dim, m, idx);
        double wt = 1.0;
        for (int a = 0; a < f.dim; ++a) {
            if (sharp) {
                // plain cell rule with half-weight where the support stops
                // along this axis (exact for on-grid axis-aligned jumps)
                double axis_w = f.step();
                if (f.values[flat] > 0.0) {
                    for (int d = -1; d <= 1; d += 2) {
                        int nb = idx[a] + d;
                        bool zero_nb = nb < 0 || nb >= m;
                        if (!zero_nb) {
                            int jdx[3] = {idx[0], idx[1], idx[2]};
                            jdx[a] = nb;
                            zero_nb = f.values[flatten(jdx, f.dim, m)] == 0.0;
                        }
                        if (zero_nb) {
                            axis_w *= 0.5;
                            break;
                        }
                    }
                }
                wt *= axis_w;
            } else {
                wt *= w[idx[a]];
            }
            x[a] = f.coord(idx[a]);
        }
        double term = wt * f.values[flat] * weight(x);
        double y = term - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

namespace {

// One conjugation pass along `axis`: out(..., x_a, ...) =
// max_j (x_a * y_j + in(..., y_j, ...)). -inf marks empty suprema.
void conjugate_axis(std::vector<double>& data, const GridFunction& shape, int axis) {
    const int m = shape.points;
    const int n = shape.dim;
    std::size_t stride = 1;
    for (int a = n - 1; a > axis; --a) stride *= static_cast<std::size_t>(m);
    std::size_t outer = data.size() / (static_cast<std::size_t>(m) * stride);

    std::vector<double> coords(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) coords[i] = shape.coord(i);
    std::vector<double> line(static_cast<std::size_t>(m));
    std::vector<double> result(static_cast<std::size_t>(m));

    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t s = 0; s < stride; ++s) {
            std::size_t base = o * m * stride + s;
            for (int j = 0; j < m; ++j) line[j] = data[base + static_cast<std::size_t>(j) * stride];
            for (int i = 0; i < m; ++i) {
                double best = -kInf;
                double xi = coords[i];
                for (int j = 0; j < m; ++j) {
                    double v = line[j];
                    if (v == -kInf) continue;
                    double cand = xi * coords[j] + v;
                    if (cand > best) best = cand;
                }
                result[i] = best;
            }
            for (int i = 0; i < m; ++i) data[base + static_cast<std::size_t>(i) * stride] = result[i];
        }
    }
}

// 1-D conjugate of a profile g (with +inf allowed): returns
// max_j (x_i y_j - g_j).
std::vector<double> conjugate_profile(const std::vector<double>& g, const GridFunction& shape) {
    const int m = shape.points;
    std::vector<double> out(static_cast<std::size_t>(m), -kInf);
    for (int i = 0; i < m; ++i) {
        double xi = shape.coord(i);
        double best = -kInf;
        for (int j = 0; j < m; ++j) {
            if (g[j] == kInf) continue;
            double cand = xi * shape.coord(j) - g[j];
            if (cand > best) best = cand;
        }
        out[i] = best;
    }
    return out;
}

bool detect_separable(const GridFunction& f, const std::vector<double>& phi,
                      std::vector<std::vector<double>>& axis_profiles, double& phi0) {
    const int n = f.dim;
    const int m = f.points;
    const int half = (m - 1) / 2;
    int center_idx[3] = {half, half, half};
    phi0 = phi[flatten(center_idx, n, m)];
    if (phi0 == kInf) return false;
    axis_profiles.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < m; ++i) {
            int idx[3] = {half, half, half};
            idx[a] = i;
            axis_profiles[a][i] = phi[flatten(idx, n, m)] - phi0;
        }
    int idx[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < phi.size(); ++flat) {
        unflatten(flat, n, m, idx);
        double sum = phi0;
        for (int a = 0; a < n; ++a) sum += axis_profiles[a][idx[a]];
        double v = phi[flat];
        if (v == kInf || sum == kInf) {
            if (v != sum) return false;
            continue;
        }
        if (std::abs(v - sum) > 1e-12 * std::max(1.0, std::abs(v))) return false;
    }
    return true;
}

std::optional<double> analytic_polar_value(const GridFunction& f, const Vec& x) {
    switch (f.tag) {
        case GridFunction::Tag::Gaussian: return std::exp(-0.5 * dot(x, x));
        case GridFunction::Tag::Indicator: return std::exp(-support(*f.tag_body, x));
        case GridFunction::Tag::ExpNegGauge: {
            // polar of exp(-gauge_K) is the indicator of the polar body
            return support(*f.tag_body, x) <= 1.0 ? 1.0 : 0.0;
        }
        default: return std::nullopt;
    }
}

void validate_polar_input(const GridFunction& f) {
    const int n = f.dim;
    const int m = f.points;
    bool any_positive = false;
    int idx[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        double v = f.values[flat];
        if (!(v >= 0.0)) throw input_error("polar_function: values must be nonnegative");
        any_positive = any_positive || v > 0.0;
        unflatten(flat, n, m, idx);
        int mirror[3];
        for (int a = 0; a < n; ++a) mirror[a] = m - 1 - idx[a];
        if (f.values[flatten(mirror, n, m)] != v)
            throw input_error("polar_function: input is not even on the grid");
    }
    if (!any_positive) throw input_error("polar_function: input is identically zero");
    const int half = (m - 1) / 2;
    int center[3] = {half, half, half};
    if (!(f.values[flatten(center, n, m)] > 0.0))
        throw input_error("polar_function: value at the origin must be positive");
}

} // namespace

PolarTransformResult polar_function(const GridFunction& f) {
    validate_polar_input(f);
    const int n = f.dim;
    const int m = f.points;

    // work in A = log f, conjugate via max(<x,y> + A)
    std::vector<double> logf(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        logf[i] = f.values[i] > 0.0 ? std::log(f.values[i]) : -kInf;

    std::vector<double> conj;
    std::vector<double> phi(f.values.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = -logf[i]; // +inf off support

    std::vector<std::vector<double>> profiles;
    double phi0 = 0.0;
    if (n > 1 && detect_separable(f, phi, profiles, phi0)) {
        // phi(y) = phi0 + sum_a g_a(y_a)  =>  phi*(x) = -phi0 + sum_a g_a*(x_a)
        std::vector<std::vector<double>> conj_profiles;
        conj_profiles.reserve(profiles.size());
        for (const auto& g : profiles) conj_profiles.push_back(conjugate_profile(g, f));
        conj.assign(f.values.size(), 0.0);
        int idx[3] = {0, 0, 0};
        for (std::size_t flat = 0; flat < conj.size(); ++flat) {
            unflatten(flat, n, m, idx);
            double sum = -phi0;
            for (int a = 0; a < n; ++a) sum += conj_profiles[a][idx[a]];
            conj[flat] = sum;
        }
    } else {
        conj = logf;
        for (int a = 0; a < n; ++a) conjugate_axis(conj, f, a);
    }

    GridFunction out;
    out.dim = n;
    out.extent = f.extent;
    out.points = m;
    out.values.assign(f.values.size(), 0.0);
    for (std::size_t i = 0; i < conj.size(); ++i)
        out.values[i] = conj[i] == -kInf ? 0.0 : std::exp(-conj[i]);

    PolarTransformResult result;
    result.polar = std::move(out);
    if (f.tag != GridFunction::Tag::None) {
        double sup = 0.0;
        int idx[3] = {0, 0, 0};
        Vec x(static_cast<std::size_t>(n));
        for (std::size_t flat = 0; flat < result.polar.values.size(); ++flat) {
            unflatten(flat, n, m, idx);
            for (int a = 0; a < n; ++a) x[a] = result.polar.coord(idx[a]);
            if (auto truth = analytic_polar_value(f, x))
                sup = std::max(sup, std::abs(result.polar.values[flat] - *truth));
        }
        result.sup_error_vs_analytic = sup;
    }
    return result;
}

CheckReport involution_check(const GridFunction& f) {
    // log-concavity along every axis line (midpoint test on -log f)
    const int n = f.dim;
    const int m = f.points;
    int idx[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        unflatten(flat, n, m, idx);
        for (int a = 0; a < n; ++a) {
            if (idx[a] == 0 || idx[a] == m - 1) continue;
            int lo[3] = {idx[0], idx[1], idx[2]};
            int hi[3] = {idx[0], idx[1], idx[2]};
            --lo[a];
            ++hi[a];
            double vl = f.values[flatten(lo, n, m)];
            double vc = f.values[flat];
            double vr = f.values[flatten(hi, n, m)];
            if (vl <= 0.0 || vr <= 0.0) continue;
            if (vc * vc < vl * vr * (1.0 - 1e-9))
                throw precondition_error("involution_check: input is not log-concave on the grid");
        }
    }
    GridFunction twice = polar_function(polar_function(f).polar).polar;
    double sup = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] > 1e-12) sup = std::max(sup, std::abs(f.values[i] - twice.values[i]));
    return make_report("involution", sup, 0.0, Relation::LessEqual, 5.0 * f.step());
}

namespace {

// Mass on the outermost index shell must be negligible next to the total.
void validate_tail(const GridFunction& f, const char* who) {
    const int n = f.dim;
    const int m = f.points;
    double total = 0.0, boundary = 0.0;
    int idx[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        unflatten(flat, n, m, idx);
        bool on_boundary = false;
        for (int a = 0; a < n; ++a) on_boundary = on_boundary || idx[a] == 0 || idx[a] == m - 1;
        total += f.values[flat];
        if (on_boundary) boundary += f.values[flat];
    }
    if (total <= 0.0 || boundary > 1e-4 * total)
        throw input_error(std::string(who) + ": extent too small (boundary carries too much mass)");
}

} // namespace

CheckReport functional_santalo_check(const GridFunction& f) {
    validate_tail(f, "functional_santalo_check");
    PolarTransformResult polar = polar_function(f);
    double lhs = grid_integral(f) * grid_integral(polar.polar);
    double rhs = std::pow(2.0 * kPi, f.dim);
    double tol = 1e-3 * rhs;
    CheckReport rep = make_report("functional-santalo", lhs, rhs, Relation::LessEqual, tol);
    rep.equality = std::abs(lhs - rhs) <= tol;
    return rep;
}

CheckReport santalo_reduction_check(const ConvexBody& k, std::uint64_t samples,
                                    std::uint64_t seed) {
    const int n = k.dim();
    double circum = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n), 0.0);
        e[i] = 1.0;
        circum = std::max(circum, support(k, e));
    }
    const double box_half = 7.0 * circum;
    Vec half(static_cast<std::size_t>(n), box_half);
    double boxvol = std::pow(2.0 * box_half, n);
    Rng rng(derive_seed(seed, "santalo-reduction"));
    double acc = 0.0, acc2 = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Vec x = rng.box_point(half);
        double g = gauge(k, x);
        double v = std::exp(-0.5 * g * g);
        acc += v;
        acc2 += v * v;
    }
    double mean = acc / static_cast<double>(samples);
    double var = std::max(0.0, acc2 / static_cast<double>(samples) - mean * mean);
    double integral = boxvol * mean;
    double integral_err = boxvol * std::sqrt(var / static_cast<double>(samples));

    double c_n = std::pow(2.0 * kPi, n / 2.0) / ball_volume(n);
    double target;
    double target_err = 0.0;
    try {
        target = c_n * volume(k);
    } catch (const capability_error&) {
        McEstimate v = volume_mc(k, samples, derive_seed(seed, "santalo-reduction-vol"));
        target = c_n * v.value;
        target_err = c_n * v.std_error;
    }
    double tol = 4.0 * std::sqrt(integral_err * integral_err + target_err * target_err);
    CheckReport rep = make_report("santalo-reduction", integral, target, Relation::Equal,
                                  tol / std::max(1.0, std::abs(target)));
    rep.seed = seed;
    rep.samples = samples;
    // applying the formula to K and K* turns the functional bound into
    // vol K vol K* <= ball_volume(n)^2, the classical upper bound
    double implied = std::pow(2.0 * kPi, n) / (c_n * c_n);
    rep.notes = "implied upper bound " + std::to_string(implied) + " equals ball_volume(n)^2";
    rep.pass = rep.pass &&
               std::abs(implied - ball_volume(n) * ball_volume(n)) <=
                   1e-9 * ball_volume(n) * ball_volume(n);
    return rep;
}

Mat second_moment_matrix_exact(const ConvexBody& k) {
    using Kind = ConvexBody::Kind;
    const std::size_t n = static_cast<std::size_t>(k.dim());
    switch (k.kind()) {
        case Kind::Ball: {
            Mat m(n, n);
            for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ball_volume(k.dim()) / (k.dim() + 2);
            return m;
        }
        case Kind::Interval: {
            Mat m(1, 1);
            double a = k.halfwidth();
            m.at(0, 0) = 2.0 * a * a * a / 3.0;
            return m;
        }
        case Kind::LinfSum: {
            Mat m(n, n);
            std::size_t off = 0;
            for (const ConvexBody& p : k.parts()) {
                Mat mp = second_moment_matrix_exact(p);
                double others = 1.0;
                for (const ConvexBody& q : k.parts())
                    if (&q != &p) others *= volume(q);
                for (std::size_t i = 0; i < mp.rows(); ++i)
                    for (std::size_t j = 0; j < mp.cols(); ++j)
                        m.at(off + i, off + j) = mp.at(i, j) * others;
                off += static_cast<std::size_t>(p.dim());
            }
            return m;
        }
        case Kind::L1Sum: {
            // fold pairwise: moments of A (+)_1 B from the parts' moments
            // M_A scaled by vol(B) b! (a+2)! / (a+b+2)! and symmetrically.
            std::vector<ConvexBody> parts = k.parts();
            ConvexBody acc = parts[0];
            Mat m_acc = second_moment_matrix_exact(acc);
            double vol_acc = volume(acc);
            int dim_acc = acc.dim();
            for (std::size_t pi = 1; pi < parts.size(); ++pi) {
                const ConvexBody& b = parts[pi];
                Mat m_b = second_moment_matrix_exact(b);
                double vol_b = volume(b);
                int dim_b = b.dim();
                std::size_t nn = static_cast<std::size_t>(dim_acc + dim_b);
                Mat m(nn, nn);
                double scale_a = vol_b * factorial(dim_b) * factorial(dim_acc + 2) /
                                 factorial(dim_acc + dim_b + 2);
                double scale_b = vol_acc * factorial(dim_acc) * factorial(dim_b + 2) /
                                 factorial(dim_acc + dim_b + 2);
                for (std::size_t i = 0; i < static_cast<std::size_t>(dim_acc); ++i)
                    for (std::size_t j = 0; j < static_cast<std::size_t>(dim_acc); ++j)
                        m.at(i, j) = m_acc.at(i, j) * scale_a;
                for (std::size_t i = 0; i < static_cast<std::size_t>(dim_b); ++i)
                    for (std::size_t j = 0; j < static_cast<std::size_t>(dim_b); ++j)
                        m.at(dim_acc + i, dim_acc + j) = m_b.at(i, j) * scale_b;
                std::vector<ConvexBody> merged;
                if (acc.kind() == Kind::L1Sum)
                    merged = acc.parts();
                else
                    merged = {acc};
                merged.push_back(b);
                acc = ConvexBody::l1_sum(merged);
                m_acc = m;
                vol_acc = volume(acc);
                dim_acc += dim_b;
            }
            return m_acc;
        }
        case Kind::VPolytope:
        case Kind::HPolytope:
        case Kind::Zonotope: return second_moment_matrix(body_triangulation(k));
        case Kind::Linear: {
            Mat base = second_moment_matrix_exact(k.base());
            const Mat& t = k.matrix();
            Mat scaled = t.mul(base).mul(t.transposed());
            double d = std::abs(det(t));
            Mat m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m.at(i, j) = scaled.at(i, j) * d;
            return m;
        }
    }
    throw capability_error("second_moment_matrix_exact: no path for this body");
}

McEstimate second_moment(const ConvexBody& k, int axis, std::uint64_t samples,
                         std::uint64_t seed) {
    if (axis < 0 || axis >= k.dim()) throw input_error("second_moment: axis out of range");
    try {
        Mat m = second_moment_matrix_exact(k);
        McEstimate est;
        est.value = m.at(static_cast<std::size_t>(axis), static_cast<std::size_t>(axis));
        est.std_error = 0.0;
        est.samples = 0;
        est.seed = seed;
        return est;
    } catch (const capability_error&) {
        return mc_integral(
            k, [axis](const Vec& x) { return x[axis] * x[axis]; }, samples,
            derive_seed(seed, "second-moment", static_cast<std::uint64_t>(axis)));
    }
}

CheckReport ball_inequality_check(const ConvexBody& k, std::uint64_t samples,
                                  std::uint64_t seed) {
    const int n = k.dim();
    if (n < 2) throw input_error("ball_inequality_check: dimension must be >= 2");
    if (!is_unconditional(k, 64, derive_seed(seed, "ball-uncond")))
        throw precondition_error("ball_inequality_check: body must be unconditional");
    ConvexBody star = polar(k);

    double lhs = 0.0;
    double lhs_err2 = 0.0;
    bool exact = true;
    for (int i = 0; i < n; ++i) {
        McEstimate a = second_moment(k, i, samples, derive_seed(seed, "moment-k", i));
        McEstimate b = second_moment(star, i, samples, derive_seed(seed, "moment-star", i));
        lhs += a.value * b.value;
        lhs_err2 += a.std_error * a.std_error * b.value * b.value +
                    b.std_error * b.std_error * a.value * a.value;
        exact = exact && a.std_error == 0.0 && b.std_error == 0.0;
    }

    // the expansion drops cross terms; sample one pair to confirm they vanish
    bool cross_ok = true;
    if (n >= 2) {
        std::uint64_t cross_samples = std::max<std::uint64_t>(samples, 100000);
        McEstimate cross = mc_integral(
            k, [](const Vec& x) { return x[0] * x[1]; }, cross_samples,
            derive_seed(seed, "cross-term"));
        cross_ok = std::abs(cross.value) <= 4.0 * cross.std_error + 1e-12;
    }

    double rhs = n * ball_volume(n) * ball_volume(n) / ((n + 2.0) * (n + 2.0));
    double tol = exact ? 1e-7 * std::max(1.0, rhs) : 4.0 * std::sqrt(lhs_err2);
    CheckReport rep = make_report("quadratic-moment-bound", lhs, rhs, Relation::LessEqual, tol);
    rep.pass = rep.pass && cross_ok;
    rep.equality = std::abs(lhs - rhs) <= std::max(tol, 1e-7 * std::max(1.0, rhs));
    rep.seed = seed;
    rep.samples = exact ? 0 : samples;
    rep.inputs_digest = digest(k.describe());
    if (!cross_ok) rep.flags.push_back("cross-terms-nonzero");
    return rep;
}

CheckReport functional_ball_check(const GridFunction& f) {
    const int n = f.dim;
    const int m = f.points;
    // unconditionality on the grid: invariance under per-axis index flips
    int idx[3] = {0, 0, 0};
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        unflatten(flat, n, m, idx);
        for (int a = 0; a < n; ++a) {
            int flip[3] = {idx[0], idx[1], idx[2]};
            flip[a] = m - 1 - flip[a];
            if (f.values[flatten(flip, n, m)] != f.values[flat])
                throw precondition_error("functional_ball_check: grid values are not unconditional");
        }
    }
    validate_tail(f, "functional_ball_check");
    PolarTransformResult polar = polar_function(f);
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
        auto sq = [i](const Vec& x) { return x[i] * x[i]; };
        lhs += grid_integral_weighted(f, sq) * grid_integral_weighted(polar.polar, sq);
    }
    double rhs = n * std::pow(2.0 * kPi, n);
    double tol = 1e-2 * rhs;
    CheckReport rep = make_report("functional-quadratic-moment", lhs, rhs, Relation::LessEqual, tol);
    rep.equality = std::abs(lhs - rhs) <= tol;
    rep.notes = "equality requires a gaussian with a diagonal positive-definite form; "
                "only the standard gaussian case is exercised here";
    return rep;
}

CheckReport geometric_mean_inequality_check(const Fn1D& f1, const Fn1D& f2, const Fn1D& f3,
                                            std::uint64_t sample_pairs, std::uint64_t seed,
                                            int quad_points) {
    if (quad_points < 3) throw input_error("geometric_mean_inequality_check: need >= 3 points");
    if (quad_points % 2 == 0) ++quad_points;
    Rng rng(derive_seed(seed, "gm-pairs"));
    bool hypothesis_ok = true;
    for (std::uint64_t i = 0; i < sample_pairs && hypothesis_ok; ++i) {
        double r = rng.uniform(0.0, f1.t_max);
        double s = rng.uniform(0.0, f2.t_max);
        double left = f1.f(r) * f2.f(s);
        double mid = f3.f(std::sqrt(r * s));
        if (left > mid * mid + 1e-12) hypothesis_ok = false;
    }
    auto integrate = [&](const Fn1D& fn) {
        std::vector<double> vals(static_cast<std::size_t>(quad_points));
        double h = fn.t_max / (quad_points - 1);
        for (int i = 0; i < quad_points; ++i) vals[i] = fn.f(i * h);
        return simpson(vals, h);
    };
    double lhs = integrate(f1) * integrate(f2);
    double i3 = integrate(f3);
    double rhs = i3 * i3;
    CheckReport rep = make_report("geometric-mean-product", lhs, rhs, Relation::LessEqual,
                                  1e-9 * std::max(1.0, rhs));
    rep.pass = rep.pass && hypothesis_ok;
    if (!hypothesis_ok) rep.flags.push_back("failed-hypothesis");
    rep.seed = seed;
    rep.samples = sample_pairs;
    return rep;
}

} // namespace vp
