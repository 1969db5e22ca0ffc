#pragma once

#include <array>
#include <limits>
#include <string>
#include <string_view>

#include "exactfd/linalg3.hpp"

namespace exactfd {

/// Default relative clustering tolerance for merging repeated eigenvalues.
inline constexpr double kDefaultClusterTol = 1e-7;

/// Coefficients of det(tI - A) = t^3 + c2 t^2 + c1 t + c0.
struct CharPoly {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

CharPoly char_poly(const Mat3& A);

/// The three eigenvalues of a real 3x3 matrix. Complex roots come as an exact
/// conjugate pair in slots 1 and 2; slot 0 is then the real root.
struct Spectrum {
    std::array<cplx, 3> lambda{};
    double cluster_tol = kDefaultClusterTol;
    /// trace(A) when known; NaN means use the sum of the roots.
    double trace = std::numeric_limits<double>::quiet_NaN();
    /// Distances by which rounding in the characteristic polynomial can
    /// split a double (closest pair) or triple root. classify() merges roots
    /// within these radii as well as within the relative tolerance. Zero for
    /// spectra that were not computed from a matrix.
    double pair_noise = 0.0;
    double triple_noise = 0.0;
};

Spectrum eigenvalues3(const Mat3& A);

enum class SpectrumKind {
    DistinctReal,
    DistinctRealWithZero,
    ComplexPairPlusReal,
    DoubleReal,
    TripleReal,
};

std::string_view to_string(SpectrumKind kind);

/// Spectral dispatch case. Which fields are meaningful depends on `kind`:
///   DistinctReal          l1, l2, l3 (ascending)
///   DistinctRealWithZero  l2, l3 nonzero; l1 == 0
///   ComplexPairPlusReal   alpha +/- i beta (beta > 0), real eigenvalue l1
///   DoubleReal            l1 repeated, l2 simple
///   TripleReal            l1
struct SpectrumClass {
    SpectrumKind kind = SpectrumKind::TripleReal;
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    /// Set when clustering was order-dependent and the three values were
    /// merged into one triple cluster.
    bool ambiguous = false;

    /// max(1, max |lambda_i|); the reference magnitude for tolerances.
    double scale() const;

    /// The eigenvalue multiset represented by this class (complex-capable).
    std::array<cplx, 3> eigenvalues() const;

    std::string describe() const;
};

SpectrumClass classify(const Spectrum& s, double tol = kDefaultClusterTol);

inline SpectrumClass classify(const Mat3& A, double tol = kDefaultClusterTol) {
    return classify(eigenvalues3(A), tol);
}

}  // namespace exactfd
