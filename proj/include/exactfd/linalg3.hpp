#pragma once

// Fixed-size 3x3 dense algebra over double and std::complex<double>, plus
// the scaling-and-squaring matrix exponential used as ground truth.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace exactfd {

using cplx = std::complex<double>;

template <typename T>
struct Vec3T {
    std::array<T, 3> v{};

    constexpr T& operator[](std::size_t i) { return v[i]; }
    constexpr const T& operator[](std::size_t i) const { return v[i]; }

    friend constexpr bool operator==(const Vec3T&, const Vec3T&) = default;
};

template <typename T>
struct Mat3T {
    // Row-major.
    std::array<std::array<T, 3>, 3> m{};

    constexpr T& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    constexpr const T& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    static constexpr Mat3T zero() { return {}; }

    static constexpr Mat3T identity() {
        Mat3T a{};
        a.m[0][0] = a.m[1][1] = a.m[2][2] = T(1);
        return a;
    }

    static constexpr Mat3T diag(T a, T b, T c) {
        Mat3T d{};
        d.m[0][0] = a;
        d.m[1][1] = b;
        d.m[2][2] = c;
        return d;
    }

    static constexpr Mat3T from_rows(std::initializer_list<std::initializer_list<T>> rows) {
        Mat3T a{};
        std::size_t r = 0;
        for (const auto& row : rows) {
            std::size_t c = 0;
            for (const auto& x : row) a.m[r][c++] = x;
            ++r;
        }
        return a;
    }

    friend constexpr bool operator==(const Mat3T&, const Mat3T&) = default;
};

using Vec3 = Vec3T<double>;
using Mat3 = Mat3T<double>;
using Matrix3 = Mat3;
using CVec3 = Vec3T<cplx>;
using CMat3 = Mat3T<cplx>;
using CMatrix3 = CMat3;

// ---------------------------------------------------------------------------
// Elementwise / algebraic operators
// ---------------------------------------------------------------------------

template <typename T>
constexpr Mat3T<T> operator+(const Mat3T<T>& a, const Mat3T<T>& b) {
    Mat3T<T> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

template <typename T>
constexpr Mat3T<T> operator-(const Mat3T<T>& a, const Mat3T<T>& b) {
    Mat3T<T> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

template <typename T>
constexpr Mat3T<T> operator*(T s, const Mat3T<T>& a) {
    Mat3T<T> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = s * a(i, j);
    return r;
}

template <typename T>
constexpr Mat3T<T> operator*(const Mat3T<T>& a, const Mat3T<T>& b) {
    Mat3T<T> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            T s{};
            for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

template <typename T>
constexpr Vec3T<T> operator*(const Mat3T<T>& a, const Vec3T<T>& x) {
    Vec3T<T> r;
    for (std::size_t i = 0; i < 3; ++i) r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
    return r;
}

template <typename T>
constexpr Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}};
}

template <typename T>
constexpr Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}};
}

template <typename T>
constexpr Vec3T<T> operator*(T s, const Vec3T<T>& a) {
    return {{s * a[0], s * a[1], s * a[2]}};
}

template <typename T>
constexpr Mat3T<T> transpose(const Mat3T<T>& a) {
    Mat3T<T> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

template <typename T>
constexpr T trace(const Mat3T<T>& a) {
    return a(0, 0) + a(1, 1) + a(2, 2);
}

template <typename T>
constexpr T det(const Mat3T<T>& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Infinity norm (max row sum of moduli).
template <typename T>
double norm_inf(const Mat3T<T>& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        double s = std::abs(a(i, 0)) + std::abs(a(i, 1)) + std::abs(a(i, 2));
        if (!(s <= best)) best = s;  // propagates NaN
    }
    return best;
}

template <typename T>
double norm_inf(const Vec3T<T>& x) {
    double best = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        double s = std::abs(x[i]);
        if (!(s <= best)) best = s;
    }
    return best;
}

/// Sum of moduli, the accuracy measure used in the benchmark tables.
template <typename T>
double norm_1(const Vec3T<T>& x) {
    return std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]);
}

bool is_finite(const Mat3& a);
bool is_finite(const Vec3& x);
bool is_finite(const CMat3& a);

CMat3 to_complex(const Mat3& a);
CVec3 to_complex(const Vec3& x);

/// Solves M y = b by Gaussian elimination with partial pivoting.
/// Throws Error(SingularMatrix) on a pivot with modulus below 1e-300.
CVec3 solve3(const CMat3& M, const CVec3& b);
Vec3 solve3(const Mat3& M, const Vec3& b);

/// Solves M Y = B column by column with a single factorization.
Mat3 solve3(const Mat3& M, const Mat3& B);

Mat3 inverse(const Mat3& M);

/// e^{A t} by scaling and squaring with a truncated Taylor series.
/// Throws Error(Overflow) when the result is not finite.
Mat3 expm(const Mat3& A, double t);

}  // namespace exactfd
