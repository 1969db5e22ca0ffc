#include <gtest/gtest.h>

#include <cmath>

#include "exactfd/problems.hpp"
#include "exactfd/quasilinear.hpp"
#include "exactfd/scheme.hpp"

using namespace exactfd;

namespace {

// Classical RK4 with a fine step, written independently of the library one.
Vec3 fine_reference(const QuasiLinearProblem& p, double t_end, int steps) {
    const double h = t_end / steps;
    auto f = [&](double t, const Vec3& v) { return p.A * v + p.g(t, v); };
    Vec3 v = p.v0;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Vec3 a = f(t, v);
        const Vec3 b = f(t + h / 2, v + (h / 2) * a);
        const Vec3 c = f(t + h / 2, v + (h / 2) * b);
        const Vec3 d = f(t + h, v + h * c);
        v = v + (h / 6) * (a + 2.0 * b + 2.0 * c + d);
    }
    return v;
}

double max_norm(const Trajectory& tr) {
    double m = 0;
    for (const Vec3& v : tr.states) m = std::max(m, norm_inf(v));
    return m;
}

}  // namespace

TEST(Nsfd, HomogeneousReducesToExactScheme) {
    QuasiLinearProblem p;
    p.A = Mat3::from_rows({{21, -8, -19}, {18, -7, -15}, {16, -6, -15}});
    p.g = [](double, const Vec3&) { return Vec3{}; };
    p.v0 = {{0, -50, 50}};
    p.T = 5;
    const Trajectory a = nsfd_integrate(p, 50);
    const Trajectory b = integrate(p.A, p.v0, 5, 50, SchemeKind::Explicit);
    ASSERT_EQ(a.states.size(), b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        EXPECT_LE(norm_inf(a.states[i] - b.states[i]), 1e-13 * std::max(1.0, norm_inf(b.states[i])));
        EXPECT_EQ(a.times[i], b.times[i]);
    }
}

TEST(Nsfd, BoundedAndDecaying) {
    for (double h : {0.1, 1.0, 2.0, 5.0}) {
        const QuasiLinearProblem p = example5(50.0);
        const Trajectory tr = nsfd_integrate(p, std::llround(50.0 / h));
        EXPECT_LE(max_norm(tr), 10 * norm_inf(p.v0)) << h;
        EXPECT_LE(norm_inf(tr.states.back()), 1e-3 * norm_inf(p.v0)) << h;
    }
}

TEST(Nsfd, LongRunWithLargeStep) {
    const QuasiLinearProblem p = example5(1000.0);
    const Trajectory tr = nsfd_integrate(p, 500);
    EXPECT_LE(max_norm(tr), 10 * norm_inf(p.v0));
    EXPECT_LE(norm_inf(tr.states.back()), 1e-12);
}

TEST(Nsfd, ExplicitEulerLosesBoundedness) {
    const QuasiLinearProblem p = example5(50.0);
    const Trajectory tr = euler_integrate(p, 25);
    EXPECT_GT(max_norm(tr), 10 * norm_inf(p.v0));
}

TEST(Nsfd, FirstOrderAccuracy) {
    QuasiLinearProblem p = example5(2.0);
    const Vec3 ref = fine_reference(p, 2.0, 20000);
    std::vector<double> errs;
    for (long long N : {50, 100, 200, 400}) errs.push_back(norm_inf(nsfd_integrate(p, N).states.back() - ref));
    for (std::size_t i = 1; i < errs.size(); ++i) {
        const double slope = std::log2(errs[i - 1] / errs[i]);
        EXPECT_NEAR(slope, 1.0, 0.2) << errs[i - 1] << " " << errs[i];
    }
}

TEST(Nsfd, LibraryReferenceAgrees) {
    const QuasiLinearProblem p = example5(2.0);
    EXPECT_LE(norm_inf(rk4_reference(p, 2.0, 4000) - fine_reference(p, 2.0, 4000)), 1e-15);
}
