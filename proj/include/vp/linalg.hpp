#pragma once

#include <cstddef>
#include <vector>

namespace vp {

using Vec = std::vector<double>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, double s);
double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec normalized(const Vec& a);
bool vec_almost_equal(const Vec& a, const Vec& b, double tol);

// Strict lexicographic order on coordinate sequences.
bool lex_less(const Vec& a, const Vec& b);

// Dense row-major square or rectangular matrix.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Mat transposed() const;
    Mat mul(const Mat& other) const;
    Vec apply(const Vec& x) const;            // this * x
    Vec apply_transposed(const Vec& x) const; // this^T * x

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

double det(const Mat& m);
Mat inverse(const Mat& m); // throws input_error when |det| < 1e-10

// Solves A x = b for square A by partial-pivot elimination; returns empty
// vector when A is numerically singular.
Vec solve(const Mat& a, const Vec& b);

// Rank of a set of vectors (rows), with pivot tolerance `tol`.
std::size_t rank(const std::vector<Vec>& rows, double tol = 1e-10);

// Deterministic orthonormal basis of the hyperplane orthogonal to `u`
// (|u| > 0). Returns dim-1 vectors.
std::vector<Vec> orthonormal_complement(const Vec& u);

// Unit normal of the hyperplane spanned by dim-1 vectors, via cofactor
// expansion; returns empty vector when the input does not span one.
Vec hyperplane_normal(const std::vector<Vec>& spanning);

double factorial(int n);
double binomial(int n, int k);

} // namespace vp
