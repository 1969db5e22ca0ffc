#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "exactfd/linalg3.hpp"
#include "exactfd/spectrum.hpp"

namespace exactfd {

struct VerifyCase {
    std::string label;
    Mat3 A;
};

/// Integer matrix with determinant 1, built from a few random row operations.
/// Its inverse is also integer and returned in `inv`.
Mat3 random_unimodular(std::mt19937_64& rng, Mat3& inv);

/// Entries uniform in [-2, 2].
std::vector<VerifyCase> random_cases(std::uint64_t seed, int count);

/// Bound on |P| |P^{-1}| (infinity norms) for the similarities below.
inline constexpr double kMaxSimilarityCond = 50.0;

/// P J P^{-1} for every 3x3 Jordan shape (distinct, complex pair, double
/// diagonal, double defective, scalar, triple with a 2-block, triple with a
/// 3-block) with dyadic eigenvalues and unimodular P, cycling through the
/// shapes in order.
std::vector<VerifyCase> jordan_cases(std::uint64_t seed, int count);

struct VerifyReport {
    int cases = 0;
    int checks = 0;
    double worst = 0.0;
    std::string worst_label;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// For each case, both schemes and h in {0.01, 0.1, 1}: iterate N = `steps`
/// steps from a fixed x0 and compare every grid point with expm(A, k h) x0.
/// A case fails when max_k |x_k - e^{Akh} x0| > 1e-9 max_k max(1, |e^{Akh} x0|)
/// or construction throws.
VerifyReport run_exactness_suite(const std::vector<VerifyCase>& cases, int steps = 100,
                                 double cluster_tol = kDefaultClusterTol);

}  // namespace exactfd
