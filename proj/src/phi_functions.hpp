#pragma once

// phi_k(x) = (e^x - sum_{j<k} x^j / j!) / x^k, evaluated without the
// cancellation of the direct formula near x = 0.

#include <cmath>
#include <complex>

namespace exactfd::detail {

template <int K>
double phi_series(double x) {
    // sum_{j>=0} x^j / (j + K)!
    double fact = 1.0;
    for (int i = 2; i <= K; ++i) fact *= i;
    double term = 1.0 / fact;
    double sum = term;
    for (int j = 1; j < 30; ++j) {
        term *= x / (j + K);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

inline double phi1(double x) {
    if (x == 0.0) return 1.0;
    return std::expm1(x) / x;
}

inline double phi2(double x) {
    if (std::abs(x) < 1.0) return phi_series<2>(x);
    return (std::expm1(x) - x) / (x * x);
}

inline double phi3(double x) {
    if (std::abs(x) < 1.0) return phi_series<3>(x);
    return (std::expm1(x) - x - 0.5 * x * x) / (x * x * x);
}

inline std::complex<double> cexpm1(std::complex<double> z) {
    // e^{a+ib} - 1 = expm1(a) cos b - 2 sin^2(b/2) + i e^a sin b
    const double a = z.real();
    const double b = z.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

}  // namespace exactfd::detail
