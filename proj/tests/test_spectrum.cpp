#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "exactfd/linalg3.hpp"
#include "exactfd/spectrum.hpp"

using namespace exactfd;

namespace {

const Mat3 kEx1 = Mat3::from_rows({{21, -8, -19}, {18, -7, -15}, {16, -6, -15}});
const Mat3 kEx2 = Mat3::from_rows({{3, -1, -3}, {-6, 2, 6}, {6, -2, -6}});

Spectrum make_spectrum(cplx a, cplx b, cplx c) {
    Spectrum s;
    s.lambda = {a, b, c};
    return s;
}

std::array<double, 3> sorted_real(const Spectrum& s) {
    std::array<double, 3> r{s.lambda[0].real(), s.lambda[1].real(), s.lambda[2].real()};
    std::sort(r.begin(), r.end());
    return r;
}

Mat3 random_real(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    Mat3 P;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) P(i, j) = u(rng);
    return P;
}

// Random real P with moderate condition number.
Mat3 random_similarity(std::mt19937_64& rng, Mat3& Pinv) {
    for (;;) {
        Mat3 P = random_real(rng) + 1.5 * Mat3::identity();
        if (std::abs(det(P)) < 0.2) continue;
        Pinv = inverse(P);
        if (norm_inf(P) * norm_inf(Pinv) <= 30.0) return P;
    }
}

}  // namespace

TEST(CharPoly, Examples) {
    const CharPoly z = char_poly(Mat3::zero());
    EXPECT_EQ(z.c2, 0.0);
    EXPECT_EQ(z.c1, 0.0);
    EXPECT_EQ(z.c0, 0.0);

    const CharPoly d = char_poly(Mat3::diag(-1, -2, -100));
    EXPECT_DOUBLE_EQ(d.c2, 103.0);
    EXPECT_DOUBLE_EQ(d.c1, 302.0);
    EXPECT_DOUBLE_EQ(d.c0, 200.0);

    const CharPoly e = char_poly(kEx1);
    EXPECT_NEAR(e.c2, 1.0, 1e-12);
    EXPECT_NEAR(e.c1, 1.0, 1e-12);
    EXPECT_NEAR(e.c0, 1.0, 1e-12);
}

TEST(Eigenvalues, DiagonalStiff) {
    const auto r = sorted_real(eigenvalues3(Mat3::diag(-1, -2, -100)));
    EXPECT_NEAR(r[0], -100.0, 1e-12);
    EXPECT_NEAR(r[1], -2.0, 1e-12);
    EXPECT_NEAR(r[2], -1.0, 1e-12);
}

TEST(Eigenvalues, ComplexPairExample) {
    const Spectrum s = eigenvalues3(kEx1);
    EXPECT_NEAR(s.lambda[0].real(), -1.0, 1e-10);
    EXPECT_EQ(s.lambda[0].imag(), 0.0);
    EXPECT_EQ(s.lambda[1], std::conj(s.lambda[2]));
    EXPECT_NEAR(std::abs(s.lambda[1].imag()), 1.0, 1e-10);
    EXPECT_NEAR(s.lambda[1].real(), 0.0, 1e-10);
}

TEST(Eigenvalues, DoubleZeroExample) {
    const auto r = sorted_real(eigenvalues3(kEx2));
    EXPECT_NEAR(r[0], -1.0, 1e-12);
    EXPECT_NEAR(r[1], 0.0, 1e-6);
    EXPECT_NEAR(r[2], 0.0, 1e-6);
    const SpectrumClass c = classify(kEx2);
    EXPECT_EQ(c.kind, SpectrumKind::DoubleReal);
    EXPECT_NEAR(c.l1, 0.0, 1e-12);
    EXPECT_NEAR(c.l2, -1.0, 1e-12);
}

TEST(Eigenvalues, ScalarUnderSimilarity) {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 50; ++n) {
        Mat3 Pinv;
        const Mat3 P = random_similarity(rng, Pinv);
        const Mat3 A = P * Mat3::diag(2, 2, 2) * Pinv;
        const Spectrum s = eigenvalues3(A);
        for (const cplx& l : s.lambda) EXPECT_LE(std::abs(l - 2.0), 1e-6);
        const SpectrumClass c = classify(s);
        EXPECT_EQ(c.kind, SpectrumKind::TripleReal);
        EXPECT_NEAR(c.l1, 2.0, 1e-10);
    }
}

TEST(Eigenvalues, TraceAndDeterminantInvariants) {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 1000; ++n) {
        const Mat3 A = 3.0 * random_real(rng);
        const Spectrum s = eigenvalues3(A);
        const cplx sum = s.lambda[0] + s.lambda[1] + s.lambda[2];
        const cplx prod = s.lambda[0] * s.lambda[1] * s.lambda[2];
        const double scale = std::max(1.0, norm_inf(A));
        EXPECT_LE(std::abs(sum - trace(A)), 1e-12 * scale);
        EXPECT_LE(std::abs(prod - det(A)), 1e-11 * scale * scale * scale);
    }
}

TEST(Classify, Examples) {
    const SpectrumClass c1 = classify(make_spectrum(-1.0, cplx(0, 1), cplx(0, -1)));
    EXPECT_EQ(c1.kind, SpectrumKind::ComplexPairPlusReal);
    EXPECT_EQ(c1.alpha, 0.0);
    EXPECT_EQ(c1.beta, 1.0);
    EXPECT_EQ(c1.l1, -1.0);

    const SpectrumClass c2 = classify(make_spectrum(5.0, 5.0, 5.0));
    EXPECT_EQ(c2.kind, SpectrumKind::TripleReal);
    EXPECT_EQ(c2.l1, 5.0);

    const SpectrumClass c3 = classify(make_spectrum(1.0, 1.0 + 1e-12, 7.0), 1e-8);
    EXPECT_EQ(c3.kind, SpectrumKind::DoubleReal);
    EXPECT_NEAR(c3.l1, 1.0 + 5e-13, 1e-15);
    EXPECT_EQ(c3.l2, 7.0);
}

TEST(Classify, DistinctAndZero) {
    const SpectrumClass d = classify(make_spectrum(-3.0, -1.0, -2.0));
    EXPECT_EQ(d.kind, SpectrumKind::DistinctReal);
    EXPECT_EQ(d.l1, -3.0);
    EXPECT_EQ(d.l2, -2.0);
    EXPECT_EQ(d.l3, -1.0);

    const SpectrumClass z = classify(make_spectrum(1.0, 0.0, -1.0));
    EXPECT_EQ(z.kind, SpectrumKind::DistinctRealWithZero);
    EXPECT_EQ(z.l1, 0.0);
}

TEST(Classify, GapsAboveToleranceStayDistinct) {
    const SpectrumClass c = classify(make_spectrum(1.0, 1.001, 7.0));
    EXPECT_EQ(c.kind, SpectrumKind::DistinctReal);
}

TEST(Classify, PermutationInvariance) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int n = 0; n < 300; ++n) {
        std::array<double, 3> v{double(pick(rng)), double(pick(rng)), double(pick(rng))};
        if (n % 3 == 0) v[1] = v[0] + 1e-9;
        const SpectrumClass ref = classify(make_spectrum(v[0], v[1], v[2]));
        std::sort(v.begin(), v.end());
        do {
            const SpectrumClass c = classify(make_spectrum(v[0], v[1], v[2]));
            EXPECT_EQ(c.kind, ref.kind);
            EXPECT_NEAR(c.l1, ref.l1, 1e-15);
            EXPECT_NEAR(c.l2, ref.l2, 1e-15);
            EXPECT_NEAR(c.l3, ref.l3, 1e-15);
        } while (std::next_permutation(v.begin(), v.end()));
    }
    const SpectrumClass a = classify(make_spectrum(2.0, cplx(1, 3), cplx(1, -3)));
    const SpectrumClass b = classify(make_spectrum(2.0, cplx(1, -3), cplx(1, 3)));
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.beta, b.beta);
    EXPECT_EQ(a.beta, 3.0);
}

// Recover the Jordan shape of P J P^{-1} for random real (non-integer) P.
TEST(Classify, RecoversJordanShapes) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ev(-3, 3);
    int total = 0, good = 0;
    for (int n = 0; n < 1000; ++n) {
        const double a = ev(rng), b = ev(rng);
        Mat3 J;
        SpectrumKind want;
        switch (n % 5) {
            case 0:
                J = Mat3::diag(a, a, b);
                want = SpectrumKind::DoubleReal;
                break;
            case 1:
                J = Mat3::from_rows({{a, 1, 0}, {0, a, 0}, {0, 0, b}});
                want = SpectrumKind::DoubleReal;
                break;
            case 2:
                J = Mat3::diag(a, a, a);
                want = SpectrumKind::TripleReal;
                break;
            case 3:
                J = Mat3::from_rows({{a, 1, 0}, {0, a, 1}, {0, 0, a}});
                want = SpectrumKind::TripleReal;
                break;
            default:
                J = Mat3::from_rows({{a, -std::abs(b) - 0.1, 0}, {std::abs(b) + 0.1, a, 0}, {0, 0, b}});
                want = SpectrumKind::ComplexPairPlusReal;
                break;
        }
        if (want == SpectrumKind::DoubleReal && std::abs(a - b) < 0.05) continue;
        Mat3 Pinv;
        const Mat3 P = random_similarity(rng, Pinv);
        const SpectrumClass c = classify(P * J * Pinv);
        ++total;
        if (c.kind == want && std::abs(c.l1 - (want == SpectrumKind::ComplexPairPlusReal ? b : a)) < 1e-6) ++good;
    }
    EXPECT_GE(good, 0.99 * total) << good << " of " << total;
}
