#pragma once

// Parameter triples (psi, phi, theta) that make the two-level schemes
//
//   implicit:  (x_{k+1} - psi x_k) / phi = A [theta x_{k+1} + (1 - theta) x_k]
//   explicit:  (x_{k+1} - psi x_k) / phi = A x_k + theta phi A^2 x_k
//
// reproduce e^{Ah} exactly. The parameters depend only on h and the
// eigenvalue multiset of A.

#include <array>
#include <string_view>

#include "exactfd/linalg3.hpp"
#include "exactfd/spectrum.hpp"

namespace exactfd {

enum class SchemeKind { Implicit, Explicit };

std::string_view to_string(SchemeKind kind);

struct SchemeParams {
    double psi = 1.0;
    /// psi - 1 evaluated without forming psi first. psi is 1 + O(h^3) for
    /// most spectra, so this is the only way to observe its approach to 1.
    double psi_m1 = 0.0;
    double phi = 0.0;
    double theta = 0.5;
    double h = 0.0;
    SchemeKind kind = SchemeKind::Implicit;
};

/// |lambda| at or below this fraction of max(1, spectrum scale) takes the
/// dedicated zero-eigenvalue formulas.
inline constexpr double kZeroTol = 1e-10;

/// Condition-system residual above which a closed form is rejected.
inline constexpr double kParamResidualGuard = 1e-8;

// --- implicit schemes ------------------------------------------------------

SchemeParams ieds_distinct(double l1, double l2, double l3, double h);
/// Third eigenvalue is zero; l2, l3 are the two nonzero ones.
SchemeParams ieds_with_zero(double l2, double l3, double h);
/// Eigenvalues alpha +/- i beta and lambda.
SchemeParams ieds_complex(double alpha, double beta, double lambda, double h);
/// l1 repeated (highest Jordan structure assumed), l2 simple.
SchemeParams ieds_double(double l1, double l2, double h);
SchemeParams ieds_triple(double l, double h);
/// Direct linear solve of the implicit condition system; eigenvalues must be
/// pairwise distinct and closed under conjugation.
SchemeParams ieds_fallback(const std::array<cplx, 3>& lambda, double h);

/// Both roots of the quadratic for T = phi * theta in the repeated-eigenvalue
/// implicit case, evaluated literally. Only t1 is the admissible branch
/// (lambda1 * t1 -> 0 as h -> 0); t2 is exposed for testing.
struct DoubleCaseRoots {
    double t1 = 0.0;
    double t2 = 0.0;
};
DoubleCaseRoots ieds_double_roots(double l1, double l2, double h);

// --- explicit schemes ------------------------------------------------------

SchemeParams eeds_distinct(double l1, double l2, double l3, double h);
SchemeParams eeds_double(double l1, double l2, double h);
SchemeParams eeds_triple(double l, double h);
/// Vandermonde solve in (psi, phi, theta phi^2); eigenvalues pairwise distinct.
SchemeParams eeds_fallback(const std::array<cplx, 3>& lambda, double h);

/// Dispatches on the spectral class. A ParamSingularity from a closed form is
/// retried once through the matching fallback when the eigenvalues are
/// distinct; otherwise (or if the fallback fails too) it propagates.
SchemeParams make_params(const SpectrumClass& cls, double h, SchemeKind kind);

// --- condition systems -----------------------------------------------------
//
// Each residual is |sum of terms| / sum of |terms|, i.e. relative to the size
// of the quantities being balanced.

/// psi + phi l (1 - theta) = e^{lh} (1 - phi l theta)
double implicit_simple_residual(const SchemeParams& p, cplx l);
/// phi (1 - theta + psi theta) / (1 - phi l theta)^2 = h e^{lh}
double implicit_jordan2_residual(const SchemeParams& p, double l);
/// phi^2 theta (1 - theta + psi theta) / (1 - phi l theta)^3 = h^2 e^{lh} / 2
double implicit_jordan3_residual(const SchemeParams& p, double l);
/// psi + phi l + theta phi^2 l^2 = e^{lh}
double explicit_simple_residual(const SchemeParams& p, cplx l);
/// phi + 2 l theta phi^2 = h e^{lh}
double explicit_jordan2_residual(const SchemeParams& p, double l);
/// theta phi^2 = h^2 e^{lh} / 2
double explicit_jordan3_residual(const SchemeParams& p, double l);

/// Largest residual over every condition that applies to (kind, class):
/// one simple condition per distinct eigenvalue plus the derivative
/// conditions for the repeated one.
double condition_residual(const SchemeParams& p, const SpectrumClass& cls);

}  // namespace exactfd
