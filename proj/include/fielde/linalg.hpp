#pragma once
// Minimal dense vector/matrix helpers. Dimensions here are small (d <= a few
// hundred), so plain loops over flat storage are all that is needed.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fielde {

using Vec = std::vector<double>;

struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vec data;  // row-major

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

// y = A x
inline void matvec(const Mat& a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == a.cols && y.size() == a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        const double* row = a.data.data() + i * a.cols;
        for (std::size_t j = 0; j < a.cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

// y += A^T x
inline void matvec_transpose_add(const Mat& a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == a.rows && y.size() == a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* row = a.data.data() + i * a.cols;
        const double xi = x[i];
        for (std::size_t j = 0; j < a.cols; ++j) y[j] += row[j] * xi;
    }
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline bool all_finite(std::span<const double> a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace fielde
