#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "exactfd/linalg3.hpp"
#include "exactfd/quasilinear.hpp"

namespace exactfd {

/// x' = A x, x(0) = x0, with a closed-form solution.
struct LinearProblem {
    std::string name;
    Mat3 A;
    Vec3 x0;
    std::function<Vec3(double)> exact;
    /// Free parameter of the problem family (the z-rate of example 3); 0 otherwise.
    double lambda_tag = 0.0;
};

/// Spectrum {-1, i, -i}.
LinearProblem example1();
/// Spectrum {0, 0, -1}.
LinearProblem example2();
/// Rotation in (x, y) plus z' = lambda z; x0 = (1, 0, 1).
LinearProblem example3(double lambda);
/// diag(-1, -2, -100), x0 = (1, 1, 1).
LinearProblem example4();
/// v' = diag(-1,-2,-3) v + e^{-t} sin(v) / (1 + t^2), v0 = (1, 1, 1).
QuasiLinearProblem example5(double T = 50.0);

/// "zero", "example1".."example5" (example3 with lambda = 1).
std::optional<Mat3> named_matrix(std::string_view name);

}  // namespace exactfd
