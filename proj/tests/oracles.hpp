#pragma once

// Test-only oracles for the exactness conditions, written directly from the
// scheme definitions and evaluated in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "exactfd/params.hpp"

namespace oracle {

using exactfd::cplx;
using exactfd::SchemeKind;
using exactfd::SchemeParams;

using lcplx = std::complex<long double>;

// Each residual is |lhs - rhs| / (sum of term magnitudes).
inline long double implicit_simple(const SchemeParams& p, cplx lam, double h) {
    const lcplx l(lam.real(), lam.imag());
    const long double psi = 1.0L + static_cast<long double>(p.psi_m1);
    const long double phi = p.phi, th = p.theta;
    const lcplx e = std::exp(l * static_cast<long double>(h));
    const lcplx lhs = psi + phi * l * (1.0L - th);
    const lcplx rhs = e * (1.0L - phi * l * th);
    const long double mag = std::abs(psi) + std::abs(phi * l * (1.0L - th)) + std::abs(e) + std::abs(e * phi * l * th);
    return std::abs(lhs - rhs) / mag;
}

inline long double implicit_jordan2(const SchemeParams& p, double l, double h) {
    const long double psi = 1.0L + static_cast<long double>(p.psi_m1);
    const long double phi = p.phi, th = p.theta;
    const long double d = 1.0L - phi * l * th;
    const long double lhs = phi * (1.0L - th + psi * th);
    const long double rhs = h * std::exp(static_cast<long double>(l) * h) * d * d;
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

inline long double implicit_jordan3(const SchemeParams& p, double l, double h) {
    const long double psi = 1.0L + static_cast<long double>(p.psi_m1);
    const long double phi = p.phi, th = p.theta;
    const long double d = 1.0L - phi * l * th;
    const long double lhs = phi * phi * th * (1.0L - th + psi * th);
    const long double rhs = 0.5L * h * h * std::exp(static_cast<long double>(l) * h) * d * d * d;
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

inline long double explicit_simple(const SchemeParams& p, cplx lam, double h) {
    const lcplx l(lam.real(), lam.imag());
    const long double psi = 1.0L + static_cast<long double>(p.psi_m1);
    const long double phi = p.phi, th = p.theta;
    const lcplx e = std::exp(l * static_cast<long double>(h));
    const lcplx t2 = phi * l, t3 = th * phi * phi * l * l;
    return std::abs(psi + t2 + t3 - e) / (std::abs(psi) + std::abs(t2) + std::abs(t3) + std::abs(e));
}

inline long double explicit_jordan2(const SchemeParams& p, double l, double h) {
    const long double phi = p.phi, th = p.theta;
    const long double t2 = 2.0L * l * th * phi * phi;
    const long double rhs = h * std::exp(static_cast<long double>(l) * h);
    return std::abs(phi + t2 - rhs) / (std::abs(phi) + std::abs(t2) + std::abs(rhs));
}

inline long double explicit_jordan3(const SchemeParams& p, double l, double h) {
    const long double lhs = static_cast<long double>(p.theta) * p.phi * p.phi;
    const long double rhs = 0.5L * h * h * std::exp(static_cast<long double>(l) * h);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

inline double worst_residual(const SchemeParams& p, const std::vector<cplx>& simple, const std::vector<double>& j2,
                      const std::vector<double>& j3) {
    long double r = 0.0L;
    const bool imp = p.kind == SchemeKind::Implicit;
    for (cplx l : simple) r = std::max(r, imp ? implicit_simple(p, l, p.h) : explicit_simple(p, l, p.h));
    for (double l : j2) r = std::max(r, imp ? implicit_jordan2(p, l, p.h) : explicit_jordan2(p, l, p.h));
    for (double l : j3) r = std::max(r, imp ? implicit_jordan3(p, l, p.h) : explicit_jordan3(p, l, p.h));
    return static_cast<double>(r);
}

inline double param_diff(const SchemeParams& a, const SchemeParams& b) {
    const double dpsi = std::abs(a.psi_m1 - b.psi_m1);
    const double dphi = std::abs(a.phi - b.phi) / std::max(std::abs(b.phi), a.h);
    const double dth = std::abs(a.theta - b.theta) / std::max(1.0, std::abs(b.theta));
    return std::max({dpsi, dphi, dth});
}

// Random admissible inputs: eigenvalues of magnitude in [0.1, 3] with gaps
// of at least 0.1 and steps in [0.01, 0.5].
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    double eig() {
        std::uniform_real_distribution<double> u(0.1, 3.0);
        std::bernoulli_distribution s(0.5);
        return s(rng) ? u(rng) : -u(rng);
    }
    double step() { return std::exp(std::uniform_real_distribution<double>(std::log(0.01), std::log(0.5))(rng)); }
    double apart(std::initializer_list<double> from) {
        for (;;) {
            const double v = eig();
            bool ok = true;
            for (double f : from) ok = ok && std::abs(v - f) >= 0.1;
            if (ok) return v;
        }
    }
};

}  // namespace oracle
