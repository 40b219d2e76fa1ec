#pragma once

#include <array>
#include <optional>
#include <vector>

namespace blowup {

// Dense d x d matrix, d <= 3, stored row-major in a fixed 3x3 block.
struct Mat {
    int d = 1;
    std::array<double, 9> a{};

    static Mat zero(int d);
    static Mat identity(int d);
    static Mat diag(std::initializer_list<double> v);

    double& operator()(int i, int j) { return a[i * 3 + j]; }
    double operator()(int i, int j) const { return a[i * 3 + j]; }
};

Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(double s, const Mat& x);
Mat operator*(const Mat& x, const Mat& y);

double trace(const Mat& m);
double det(const Mat& m);
Mat transpose(const Mat& m);
Mat sym_part(const Mat& m);
double max_abs(const Mat& m);
double frobenius(const Mat& m);
std::optional<Mat> inverse(const Mat& m);

// Real roots of the characteristic polynomial, ascending, with multiplicity.
// Complex-conjugate pairs are dropped.
std::vector<double> real_eigenvalues(const Mat& m);

struct SymEigen {
    std::array<double, 3> values{};                  // ascending, first d entries used
    std::array<std::array<double, 3>, 3> vectors{};  // vectors[k] pairs with values[k]
};

// Closed-form spectral decomposition of the symmetric part of m.
SymEigen sym_eigen(const Mat& m);

}  // namespace blowup
