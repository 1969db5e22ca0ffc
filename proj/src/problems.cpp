#include "exactfd/problems.hpp"

#include <cmath>

namespace exactfd {

LinearProblem example1() {
    LinearProblem p;
    p.name = "example1";
    p.A = Mat3::from_rows({{21, -8, -19}, {18, -7, -15}, {16, -6, -15}});
    p.x0 = {{0.0, -50.0, 50.0}};
    p.exact = [](double t) {
        const double e = std::exp(-t), c = std::cos(t), s = std::sin(t);
        return Vec3{{100 * e - 100 * c - 450 * s, 150 * c - 200 * e - 600 * s, 200 * e - 150 * c - 250 * s}};
    };
    return p;
}

LinearProblem example2() {
    LinearProblem p;
    p.name = "example2";
    p.A = Mat3::from_rows({{3, -1, -3}, {-6, 2, 6}, {6, -2, -6}});
    p.x0 = {{0.0, -40.0, 50.0}};
    p.exact = [](double t) {
        const double e = std::exp(-t);
        return Vec3{{110 * e - 110, 180 - 220 * e, 220 * e - 170}};
    };
    return p;
}

LinearProblem example3(double lambda) {
    LinearProblem p;
    p.name = "example3";
    p.A = Mat3::from_rows({{0, -1, 0}, {1, 0, 0}, {0, 0, lambda}});
    p.x0 = {{1.0, 0.0, 1.0}};
    p.lambda_tag = lambda;
    p.exact = [lambda](double t) { return Vec3{{std::cos(t), std::sin(t), std::exp(lambda * t)}}; };
    return p;
}

LinearProblem example4() {
    LinearProblem p;
    p.name = "example4";
    p.A = Mat3::diag(-1.0, -2.0, -100.0);
    p.x0 = {{1.0, 1.0, 1.0}};
    p.exact = [](double t) { return Vec3{{std::exp(-t), std::exp(-2 * t), std::exp(-100 * t)}}; };
    return p;
}

QuasiLinearProblem example5(double T) {
    QuasiLinearProblem p;
    p.A = Mat3::diag(-1.0, -2.0, -3.0);
    // |g(t, v)| <= e^{-t} / (1 + t^2) |v|, integrable bound.
    p.g = [](double t, const Vec3& v) {
        const double w = std::exp(-t) / (1.0 + t * t);
        return Vec3{{w * std::sin(v[0]), w * std::sin(v[1]), w * std::sin(v[2])}};
    };
    p.v0 = {{1.0, 1.0, 1.0}};
    p.T = T;
    return p;
}

std::optional<Mat3> named_matrix(std::string_view name) {
    if (name == "zero") return Mat3::zero();
    if (name == "example1") return example1().A;
    if (name == "example2") return example2().A;
    if (name == "example3") return example3(1.0).A;
    if (name == "example4") return example4().A;
    if (name == "example5") return example5().A;
    return std::nullopt;
}

}  // namespace exactfd
