#pragma once

#include <functional>
#include <vector>

#include "exactfd/linalg3.hpp"
#include "exactfd/params.hpp"
#include "exactfd/spectrum.hpp"

namespace exactfd {

/// One-step map x_{k+1} = Q x_k. D = Q - I is formed directly rather than
/// by subtraction; when Q is close to the identity the step is taken as
/// x + D x, which keeps the per-step rounding relative to D x instead of x.
struct TransferMatrix {
    Mat3 Q;
    Mat3 D;
    double h = 0.0;
    SchemeKind kind = SchemeKind::Implicit;
    SchemeParams params;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec3> states;
};

/// Relative exactness bound checked against expm(A, h) on construction.
inline constexpr double kExactnessTol = 1e-9;

/// Q = (I - phi theta A)^{-1} (psi I + phi (1 - theta) A)   (implicit)
/// Q = psi I + phi A + theta phi^2 A^2                      (explicit)
///
/// Throws SingularImplicitStep or ExactnessViolation.
TransferMatrix build_transfer(const Mat3& A, const SchemeParams& p);

/// Same, without the expm check. For callers that validate separately.
TransferMatrix build_transfer_unchecked(const Mat3& A, const SchemeParams& p);

/// Classify, build parameters and Q for step h.
TransferMatrix make_transfer(const Mat3& A, double h, SchemeKind kind, double cluster_tol = kDefaultClusterTol);

/// |D| at or below which steps use the incremental form.
inline constexpr double kIncrementalStepBound = 0.5;

inline Vec3 step(const TransferMatrix& T, const Vec3& x) {
    return norm_inf(T.D) <= kIncrementalStepBound ? x + T.D * x : T.Q * x;
}

/// Visits (k, t_k, x_k) for k = 0..N with x_{k+1} = Q x_k and t_k = k h.
/// Throws Overflow on a non-finite state unless `allow_nonfinite`.
void iterate(const TransferMatrix& T, const Vec3& x0, long long N,
             const std::function<void(long long, double, const Vec3&)>& visit, bool allow_nonfinite = false);

Trajectory integrate(const Mat3& A, const Vec3& x0, double T, long long N, SchemeKind kind,
                     double cluster_tol = kDefaultClusterTol);

/// x(t) in a single step of size t.
Vec3 one_shot(const Mat3& A, const Vec3& x0, double t, SchemeKind kind, double cluster_tol = kDefaultClusterTol);

}  // namespace exactfd
