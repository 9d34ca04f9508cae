#pragma once

#include <cstddef>
#include <vector>

namespace sgeom {

using Vec = std::vector<double>;

/// Small dense row-major matrix. Everything in this library is n <= 8.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
Mat transpose(const Mat& a);
Mat outer(const Vec& a, const Vec& b);

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(Vec a, double s);
Vec operator*(double s, Vec a);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double max_abs(const Mat& a);
double max_abs(const Vec& a);
double frobenius(const Mat& a);

/// Eigendecomposition of a symmetric matrix: columns of `vectors` are
/// orthonormal eigenvectors, `values[k]` the matching eigenvalues.
struct EigenSym {
    Mat vectors;
    Vec values;
};

/// Cyclic Jacobi rotations. Robust for clustered eigenvalues at these sizes.
EigenSym jacobi_eigensym(const Mat& a, int max_sweeps = 64);

/// Gauss-Jordan inverse with partial pivoting. Throws std::runtime_error on a
/// numerically singular matrix.
Mat invert(const Mat& a);

/// Solve a x = b by Gaussian elimination with partial pivoting.
Vec solve(Mat a, Vec b);

}  // namespace sgeom
