#pragma once

#include <optional>
#include <string_view>

#include "exactfd/linalg3.hpp"
#include "exactfd/scheme.hpp"

namespace exactfd {

enum class MethodId {
    ExplicitEuler,
    ImplicitEuler,
    Trapezoidal,
    RK4,
    Taylor5,
    RadauIIA5,
    IEDS,
    EEDS,
};

std::string_view to_string(MethodId m);
/// Accepts the names printed by to_string, case-insensitively, plus the short
/// aliases euler, ieuler, trap, taylor, radau.
std::optional<MethodId> parse_method(std::string_view name);

bool is_exact_scheme(MethodId m);

/// One-step map of a classical method applied to x' = Ax.
///   ExplicitEuler  I + hA
///   ImplicitEuler  (I - hA)^{-1}
///   Trapezoidal    (I - hA/2)^{-1} (I + hA/2)
///   RK4            sum_{j<=4} (hA)^j / j!
///   Taylor5        sum_{j<=6} (hA)^j / j!
///   RadauIIA5      3-stage Radau IIA, stages solved as one 9x9 system
/// Throws SingularStepMatrix for the implicit ones.
TransferMatrix baseline_transfer(const Mat3& A, double h, MethodId m);

/// baseline_transfer for classical methods, make_transfer for IEDS / EEDS.
TransferMatrix method_transfer(const Mat3& A, double h, MethodId m, double cluster_tol = kDefaultClusterTol);

}  // namespace exactfd
