#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "exactfd/errors.hpp"
#include "exactfd/linalg3.hpp"

using namespace exactfd;

namespace {

Mat3 random_matrix(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Mat3 A;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = u(rng);
    return A;
}

double rel_diff(const Mat3& a, const Mat3& b) { return norm_inf(a - b) / std::max(1.0, norm_inf(b)); }

}  // namespace

TEST(Solve3, IdentityReturnsRhs) {
    const CVec3 b{{cplx(1), cplx(2), cplx(3)}};
    const CVec3 y = solve3(CMat3::identity(), b);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(y[i], b[i]);
}

TEST(Solve3, Diagonal) {
    const Vec3 y = solve3(Mat3::diag(2, 4, 5), Vec3{{2, 4, 5}});
    for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(y[i], 1.0);
}

TEST(Solve3, SingularThrows) {
    const Mat3 M = Mat3::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
    try {
        solve3(M, Vec3{{1, 1, 1}});
        FAIL() << "expected SingularMatrix";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
    }
}

TEST(Solve3, ResidualOnRandomSystems) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int n = 0; n < 1000; ++n) {
        CMat3 M;
        CVec3 b;
        for (int i = 0; i < 3; ++i) {
            b[i] = cplx(u(rng), u(rng));
            for (int j = 0; j < 3; ++j) M(i, j) = cplx(u(rng), u(rng));
            M(i, i) += 3.0;  // keep it well conditioned
        }
        const CVec3 y = solve3(M, b);
        const CVec3 r = M * y - b;
        EXPECT_LE(norm_inf(r), 1e-12 * (norm_inf(M) * norm_inf(y) + norm_inf(b)));
    }
}

TEST(Solve3, MatrixRhsAndInverse) {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 100; ++n) {
        Mat3 M = random_matrix(rng, -1, 1) + 3.0 * Mat3::identity();
        EXPECT_LE(rel_diff(M * inverse(M), Mat3::identity()), 1e-13);
        const Mat3 B = random_matrix(rng, -1, 1);
        EXPECT_LE(rel_diff(M * solve3(M, B), B), 1e-13);
    }
}

TEST(Expm, ZeroMatrixGivesIdentity) {
    EXPECT_EQ(expm(Mat3::zero(), 3.7), Mat3::identity());
    std::mt19937_64 rng(1);
    EXPECT_EQ(expm(random_matrix(rng, -2, 2), 0.0), Mat3::identity());
}

TEST(Expm, DiagonalStiff) {
    const Mat3 E = expm(Mat3::diag(-1, -2, -100), 1.0);
    EXPECT_NEAR(E(0, 0), std::exp(-1.0), 1e-16);
    EXPECT_NEAR(E(1, 1), std::exp(-2.0), 1e-16);
    EXPECT_NEAR(E(2, 2) / std::exp(-100.0), 1.0, 1e-12);
    EXPECT_EQ(E(0, 1), 0.0);
}

TEST(Expm, RotationQuarterTurn) {
    const Mat3 A = Mat3::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
    const Mat3 E = expm(A, std::numbers::pi / 2);
    const Mat3 expect = Mat3::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, std::exp(std::numbers::pi / 2)}});
    EXPECT_LE(rel_diff(E, expect), 1e-14);
}

TEST(Expm, SemigroupProperty) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ut(-2, 2);
    for (int n = 0; n < 200; ++n) {
        Mat3 A = random_matrix(rng, -1, 1);
        A = (5.0 / std::max(1.0, norm_inf(A))) * A;
        const double t1 = ut(rng), t2 = ut(rng);
        const Mat3 lhs = expm(A, t1 + t2);
        EXPECT_LE(rel_diff(expm(A, t1) * expm(A, t2), lhs), 1e-11) << n;
    }
}

TEST(Expm, OverflowIsReported) {
    try {
        expm(Mat3::diag(1, 1, 1), 1e4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Overflow);
    }
}

TEST(Linalg, NormsAndDet) {
    const Mat3 A = Mat3::from_rows({{21, -8, -19}, {18, -7, -15}, {16, -6, -15}});
    EXPECT_EQ(norm_inf(A), 48.0);
    EXPECT_EQ(trace(A), -1.0);
    EXPECT_EQ(det(A), -1.0);
    EXPECT_EQ(norm_1(Vec3{{1, -2, 3}}), 6.0);
    EXPECT_FALSE(is_finite(Vec3{{1, NAN, 0}}));
}
