#pragma once

#include <functional>

#include "exactfd/linalg3.hpp"
#include "exactfd/scheme.hpp"

namespace exactfd {

/// v' = A v + g(t, v) on [0, T].
struct QuasiLinearProblem {
    Mat3 A;
    std::function<Vec3(double, const Vec3&)> g;
    Vec3 v0;
    double T = 1.0;
};

/// v_{k+1} = Q v_k + phi g(t_k, v_k), with Q and phi from the explicit exact
/// scheme for A. Throws Overflow on a non-finite state.
Vec3 nsfd_step(const QuasiLinearProblem& p, const TransferMatrix& Q, const Vec3& v, double t);

Trajectory nsfd_integrate(const QuasiLinearProblem& p, long long N, double cluster_tol = kDefaultClusterTol);

/// Same recurrence with Q = I + hA and phi = h (explicit Euler), for contrast.
/// Does not throw on overflow; the trajectory simply stops being finite.
Trajectory euler_integrate(const QuasiLinearProblem& p, long long N);

/// Classical RK4 on the full nonlinear system, used as a fine-step reference.
Vec3 rk4_reference(const QuasiLinearProblem& p, double t_end, long long N);

}  // namespace exactfd
