#include "exactfd/linalg3.hpp"

#include <algorithm>
#include <utility>

#include "exactfd/errors.hpp"

namespace exactfd {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::ParamSingularity: return "ParamSingularity";
        case ErrorCode::SingularImplicitStep: return "SingularImplicitStep";
        case ErrorCode::ExactnessViolation: return "ExactnessViolation";
        case ErrorCode::SingularStepMatrix: return "SingularStepMatrix";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::Io: return "Io";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_finite(const Mat3& a) {
    for (const auto& row : a.m)
        for (double x : row)
            if (!std::isfinite(x)) return false;
    return true;
}

bool is_finite(const Vec3& x) {
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

bool is_finite(const CMat3& a) {
    for (const auto& row : a.m)
        for (const cplx& x : row)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

CMat3 to_complex(const Mat3& a) {
    CMat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j);
    return r;
}

CVec3 to_complex(const Vec3& x) { return {{x[0], x[1], x[2]}}; }

namespace {

constexpr double kPivotFloor = 1e-300;

// LU with partial pivoting, stored in place; perm maps factored row -> original row.
template <typename T>
struct Lu3 {
    Mat3T<T> lu;
    std::array<std::size_t, 3> perm{0, 1, 2};

    explicit Lu3(const Mat3T<T>& M) : lu(M) {
        for (std::size_t k = 0; k < 3; ++k) {
            std::size_t p = k;
            double best = std::abs(lu(k, k));
            for (std::size_t i = k + 1; i < 3; ++i) {
                double v = std::abs(lu(i, k));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (!(best >= kPivotFloor)) {
                throw Error(ErrorCode::SingularMatrix, "pivot below 1e-300 in column " + std::to_string(k));
            }
            if (p != k) {
                std::swap(lu.m[p], lu.m[k]);
                std::swap(perm[p], perm[k]);
            }
            for (std::size_t i = k + 1; i < 3; ++i) {
                T f = lu(i, k) / lu(k, k);
                lu(i, k) = f;
                for (std::size_t j = k + 1; j < 3; ++j) lu(i, j) -= f * lu(k, j);
            }
        }
    }

    Vec3T<T> solve(const Vec3T<T>& b) const {
        Vec3T<T> y;
        for (std::size_t i = 0; i < 3; ++i) {
            T s = b[perm[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = 3; ii-- > 0;) {
            T s = y[ii];
            for (std::size_t j = ii + 1; j < 3; ++j) s -= lu(ii, j) * y[j];
            y[ii] = s / lu(ii, ii);
        }
        return y;
    }
};

}  // namespace

CVec3 solve3(const CMat3& M, const CVec3& b) { return Lu3<cplx>(M).solve(b); }

Vec3 solve3(const Mat3& M, const Vec3& b) { return Lu3<double>(M).solve(b); }

Mat3 solve3(const Mat3& M, const Mat3& B) {
    Lu3<double> lu(M);
    Mat3 Y;
    for (std::size_t c = 0; c < 3; ++c) {
        Vec3 col{{B(0, c), B(1, c), B(2, c)}};
        Vec3 y = lu.solve(col);
        for (std::size_t r = 0; r < 3; ++r) Y(r, c) = y[r];
    }
    return Y;
}

Mat3 inverse(const Mat3& M) { return solve3(M, Mat3::identity()); }

Mat3 expm(const Mat3& A, double t) {
    // Accumulated in extended precision so the squarings do not eat the
    // accuracy margin the tests rely on.
    using LMat = Mat3T<long double>;
    LMat X;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) X(i, j) = static_cast<long double>(A(i, j)) * t;
    const double nrm = norm_inf(X);
    if (!std::isfinite(nrm)) throw Error(ErrorCode::Overflow, "expm: non-finite argument");

    int s = 0;
    if (nrm > 0.0) s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm))));
    X = std::ldexp(1.0L, -s) * X;

    // Taylor series of e^X with ||X|| <= 1.
    LMat sum = LMat::identity();
    LMat term = LMat::identity();
    for (int k = 1; k < 60; ++k) {
        term = (1.0L / k) * (term * X);
        sum = sum + term;
        if (norm_inf(term) < 1e-18 * norm_inf(sum)) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;

    Mat3 out;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out(i, j) = static_cast<double>(sum(i, j));
    if (!is_finite(out)) throw Error(ErrorCode::Overflow, "expm: result is not finite");
    return out;
}

}  // namespace exactfd
