#include "vp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vp/errors.hpp"

namespace vp {

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw input_error("cannot normalize the zero vector");
    return vec_scale(a, 1.0 / n);
}

bool vec_almost_equal(const Vec& a, const Vec& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw input_error("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Vec Mat::row(std::size_t r) const {
    Vec v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Mat Mat::mul(const Mat& other) const {
    if (cols_ != other.rows_) throw input_error("matrix shape mismatch in mul");
    Mat m(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            double a = at(r, k);
            if (a == 0.0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) m.at(r, c) += a * other.at(k, c);
        }
    return m;
}

Vec Mat::apply(const Vec& x) const {
    if (x.size() != cols_) throw input_error("matrix/vector shape mismatch");
    Vec y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += at(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

Vec Mat::apply_transposed(const Vec& x) const {
    if (x.size() != rows_) throw input_error("matrix/vector shape mismatch");
    Vec y(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) y[c] += at(r, c) * x[r];
    return y;
}

namespace {

// LU with partial pivoting; returns false when a pivot falls below tol.
// `a` is destroyed; `perm_sign` tracks row swaps for the determinant.
bool lu_decompose(Mat& a, std::vector<std::size_t>& perm, double& perm_sign, double tol) {
    const std::size_t n = a.rows();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    perm_sign = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a.at(perm[col], col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(a.at(perm[r], col));
            if (v > best) { best = v; pivot = r; }
        }
        if (best < tol) return false;
        if (pivot != col) { std::swap(perm[pivot], perm[col]); perm_sign = -perm_sign; }
        const double d = a.at(perm[col], col);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a.at(perm[r], col) / d;
            a.at(perm[r], col) = f;
            for (std::size_t c = col + 1; c < n; ++c) a.at(perm[r], c) -= f * a.at(perm[col], c);
        }
    }
    return true;
}

} // namespace

double det(const Mat& m) {
    if (m.rows() != m.cols()) throw input_error("determinant of non-square matrix");
    if (m.rows() == 0) return 1.0;
    Mat a = m;
    std::vector<std::size_t> perm;
    double sign = 1.0;
    if (!lu_decompose(a, perm, sign, 1e-300)) return 0.0;
    double d = sign;
    for (std::size_t i = 0; i < m.rows(); ++i) d *= a.at(perm[i], i);
    return d;
}

Vec solve(const Mat& m, const Vec& b) {
    const std::size_t n = m.rows();
    if (m.cols() != n || b.size() != n) throw input_error("solve: shape mismatch");
    Mat a = m;
    std::vector<std::size_t> perm;
    double sign = 1.0;
    if (!lu_decompose(a, perm, sign, 1e-12)) return {};
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= a.at(perm[i], j) * y[j];
        y[i] = s;
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a.at(perm[i], j) * x[j];
        x[i] = s / a.at(perm[i], i);
    }
    return x;
}

Mat inverse(const Mat& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw input_error("inverse of non-square matrix");
    if (std::abs(det(m)) < 1e-10) throw input_error("matrix is numerically singular (|det| < 1e-10)");
    Mat inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        Vec e(n, 0.0);
        e[c] = 1.0;
        Vec x = solve(m, e);
        if (x.empty()) throw input_error("matrix is numerically singular");
        for (std::size_t r = 0; r < n; ++r) inv.at(r, c) = x[r];
    }
    return inv;
}

std::size_t rank(const std::vector<Vec>& rows, double tol) {
    if (rows.empty()) return 0;
    std::vector<Vec> work = rows;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < work.size(); ++col) {
        std::size_t pivot = r;
        double best = std::abs(work[r][col]);
        for (std::size_t i = r + 1; i < work.size(); ++i)
            if (std::abs(work[i][col]) > best) { best = std::abs(work[i][col]); pivot = i; }
        if (best < tol) continue;
        std::swap(work[pivot], work[r]);
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == r) continue;
            double f = work[i][col] / work[r][col];
            for (std::size_t c = col; c < ncols; ++c) work[i][c] -= f * work[r][c];
        }
        ++r;
    }
    return r;
}

std::vector<Vec> orthonormal_complement(const Vec& u) {
    const std::size_t n = u.size();
    Vec d = normalized(u);
    // Drop the coordinate axis most aligned with u; smallest index wins ties
    // so the basis is reproducible.
    std::size_t drop = 0;
    double best = std::abs(d[0]);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(d[i]) > best + 1e-15) { best = std::abs(d[i]); drop = i; }
    std::vector<Vec> basis;
    basis.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == drop) continue;
        Vec v(n, 0.0);
        v[i] = 1.0;
        v = vec_sub(v, vec_scale(d, dot(v, d)));
        for (const Vec& b : basis) v = vec_sub(v, vec_scale(b, dot(v, b)));
        double nn = norm(v);
        if (nn < 1e-12) throw input_error("orthonormal_complement: degenerate direction");
        basis.push_back(vec_scale(v, 1.0 / nn));
    }
    return basis;
}

Vec hyperplane_normal(const std::vector<Vec>& spanning) {
    if (spanning.empty()) return {};
    const std::size_t n = spanning[0].size();
    if (spanning.size() != n - 1) throw input_error("hyperplane_normal: need dim-1 vectors");
    if (n == 1) return Vec{1.0};
    Vec normal(n, 0.0);
    Mat minor(n - 1, n - 1);
    double sign = 1.0;
    for (std::size_t skip = 0; skip < n; ++skip) {
        for (std::size_t r = 0; r < n - 1; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == skip) continue;
                minor.at(r, cc++) = spanning[r][c];
            }
        }
        normal[skip] = sign * det(minor);
        sign = -sign;
    }
    double nn = norm(normal);
    if (nn < 1e-10) return {};
    return vec_scale(normal, 1.0 / nn);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

} // namespace vp
