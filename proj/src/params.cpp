#include "exactfd/params.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "exactfd/errors.hpp"
#include "phi_functions.hpp"

namespace exactfd {

using detail::cexpm1;
using detail::phi1;
using detail::phi2;
using detail::phi3;

std::string_view to_string(SchemeKind kind) {
    return kind == SchemeKind::Implicit ? "Implicit" : "Explicit";
}

namespace {

constexpr double kDenFloor = 1e-300;

void require_step(double h, const char* op) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorCode::InvalidArgument, std::string(op) + ": step must be positive and finite");
    }
}

double checked_div(double num, double den, const char* what) {
    if (!(std::abs(den) >= kDenFloor)) {
        throw Error(ErrorCode::ParamSingularity, std::string(what) + ": vanishing denominator");
    }
    return num / den;
}

bool is_zero_eig(double l, double scale) { return std::abs(l) <= kZeroTol * std::max(1.0, scale); }

// Rejects triples that are non-finite or fail their own condition system.
SchemeParams guarded(SchemeParams p, const SpectrumClass& cls, const char* op) {
    if (!std::isfinite(p.psi) || !std::isfinite(p.phi) || !std::isfinite(p.theta) || !std::isfinite(p.psi_m1)) {
        throw Error(ErrorCode::ParamSingularity, std::string(op) + ": non-finite parameter");
    }
    const double r = condition_residual(p, cls);
    if (!(r <= kParamResidualGuard)) {
        throw Error(ErrorCode::ParamSingularity,
                    std::string(op) + ": condition residual " + std::to_string(r) + " exceeds guard");
    }
    return p;
}

SpectrumClass distinct_class(double l1, double l2, double l3) {
    SpectrumClass c;
    c.kind = SpectrumKind::DistinctReal;
    c.l1 = l1;
    c.l2 = l2;
    c.l3 = l3;
    return c;
}

SpectrumClass with_zero_class(double l2, double l3) {
    SpectrumClass c;
    c.kind = SpectrumKind::DistinctRealWithZero;
    c.l2 = l2;
    c.l3 = l3;
    return c;
}

SpectrumClass complex_class(double alpha, double beta, double lambda) {
    SpectrumClass c;
    c.kind = SpectrumKind::ComplexPairPlusReal;
    c.alpha = alpha;
    c.beta = beta;
    c.l1 = lambda;
    return c;
}

SpectrumClass double_class(double l1, double l2) {
    SpectrumClass c;
    c.kind = SpectrumKind::DoubleReal;
    c.l1 = l1;
    c.l2 = l2;
    return c;
}

SpectrumClass triple_class(double l) {
    SpectrumClass c;
    c.kind = SpectrumKind::TripleReal;
    c.l1 = l;
    return c;
}

// e^{a h} - e^{b h} without cancelling the two exponentials.
double exp_diff(double a, double b, double h) { return std::exp(b * h) * std::expm1((a - b) * h); }

double relres(double sum, double mag) {
    if (mag == 0.0) return std::abs(sum) == 0.0 ? 0.0 : INFINITY;
    return std::abs(sum) / mag;
}

// Below this max |lambda h| the parameters come from power series instead of
// closed forms, which cancel to O(eps / h^k) there.
constexpr double kSeriesRadius = 0.5;
constexpr int kSeriesTerms = 40;

double spectral_radius_h(const std::array<cplx, 3>& lambda, double h) {
    return std::max({std::abs(lambda[0]), std::abs(lambda[1]), std::abs(lambda[2])}) * h;
}

// Both condition systems read u0 + u1 l + u2 g(l) = expm1(l h) at the three
// eigenvalues, with g(l) = l expm1(l h) (implicit, u2 = phi theta) or l^2
// (explicit, u2 = theta phi^2). The divided difference over all three nodes
// kills u0 and u1, over the first two kills u0. Divided differences of
// entire functions are series in the complete homogeneous polynomials
// H_m of w = l h, with no subtraction of nearby values.
SchemeParams series_params(const std::array<cplx, 3>& lambda, double h, SchemeKind kind) {
    const cplx w1 = lambda[0] * h, w2 = lambda[1] * h, w3 = lambda[2] * h;
    // H2[m] = H_m(w1, w2), H3[m] = H_m(w1, w2, w3).
    std::array<cplx, kSeriesTerms + 1> H2{}, H3{};
    cplx w2m = 1.0;
    H2[0] = H3[0] = 1.0;
    for (int m = 1; m <= kSeriesTerms; ++m) {
        w2m *= w2;
        H2[m] = w1 * H2[m - 1] + w2m;
        H3[m] = w3 * H3[m - 1] + H2[m];
    }
    // f = expm1(l h): f[1,2] = h S12, f[1,2,3] = h^2 S123.
    // g = l expm1(l h): g[1,2] = G12, g[1,2,3] = h G123.
    cplx S12 = 0.0, S123 = 0.0, G12 = 0.0, G123 = 0.0;
    double inv_fact = 1.0;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        inv_fact /= k;
        S12 += H2[k - 1] * inv_fact;
        if (k >= 2) S123 += H3[k - 2] * inv_fact;
        G12 += H2[k] * inv_fact;
        G123 += H3[k - 1] * inv_fact;
    }
    const cplx f1 = cexpm1(w1);
    SchemeParams p;
    p.h = h;
    p.kind = kind;
    if (kind == SchemeKind::Implicit) {
        const cplx u2 = h * S123 / G123;
        const cplx u1 = h * S12 - u2 * G12;
        p.phi = u1.real();
        p.theta = (u2 / u1).real();
        p.psi_m1 = (f1 - u1 * lambda[0] - u2 * lambda[0] * f1).real();
    } else {
        const cplx tau = h * h * S123;
        const cplx u1 = h * S12 - tau * (lambda[0] + lambda[1]);
        p.phi = u1.real();
        p.theta = (tau / (u1 * u1)).real();
        p.psi_m1 = (f1 - u1 * lambda[0] - tau * lambda[0] * lambda[0]).real();
    }
    p.psi = 1.0 + p.psi_m1;
    return p;
}

}  // namespace

// ===========================================================================
// Implicit exact schemes
// ===========================================================================

SchemeParams ieds_distinct(double l1, double l2, double l3, double h) {
    require_step(h, "ieds_distinct");
    const double e1 = std::expm1(l1 * h);
    const double e2 = std::expm1(l2 * h);
    const double e3 = std::expm1(l3 * h);
    const double d23 = exp_diff(l2, l3, h);
    const double d31 = exp_diff(l3, l1, h);
    const double d12 = exp_diff(l1, l2, h);

    const double t1 = l1 * d23 + l2 * d31 + l3 * d12;
    // (1 - e^{lh}) = -expm1(lh)
    const double t2 = -(l1 * e1 * d23 + l2 * e2 * d31 + l3 * e3 * d12);

    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Implicit;
    p.theta = checked_div(t1, t2, "ieds_distinct theta");
    const double c1 = l1 * e1 - l2 * e2;
    p.phi = checked_div(d12, l1 - l2 + p.theta * c1, "ieds_distinct phi");
    const double E3 = std::exp(l3 * h);
    p.psi = E3 - p.phi * l3 * (E3 * p.theta + 1.0 - p.theta);
    p.psi_m1 = e3 - p.phi * l3 * (1.0 + p.theta * e3);
    return guarded(p, distinct_class(l1, l2, l3), "ieds_distinct");
}

SchemeParams ieds_with_zero(double l2, double l3, double h) {
    require_step(h, "ieds_with_zero");
    const double ea = std::expm1(l2 * h);
    const double eb = std::expm1(l3 * h);
    const double dab = exp_diff(l2, l3, h);

    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Implicit;
    p.psi = 1.0;
    p.psi_m1 = 0.0;
    p.phi = checked_div((l2 - l3) * ea * eb, l2 * l3 * dab, "ieds_with_zero phi");
    p.theta = checked_div(l3 * ea - l2 * eb, (l2 - l3) * ea * eb, "ieds_with_zero theta");
    return guarded(p, with_zero_class(l2, l3), "ieds_with_zero");
}

SchemeParams ieds_complex(double alpha, double beta, double lambda, double h) {
    require_step(h, "ieds_complex");
    if (beta == 0.0) throw Error(ErrorCode::InvalidArgument, "ieds_complex: beta must be nonzero");
    const std::array<cplx, 3> ev{cplx(alpha, beta), cplx(alpha, -beta), cplx(lambda)};
    if (spectral_radius_h(ev, h) <= kSeriesRadius) {
        return guarded(series_params(ev, h, SchemeKind::Implicit), complex_class(alpha, std::abs(beta), lambda),
                       "ieds_complex");
    }

    const double ea = std::exp(alpha * h);
    const double s = std::sin(beta * h);
    const double c = std::cos(beta * h);
    const double el = std::exp(lambda * h);
    const double el_m1 = std::expm1(lambda * h);
    const double sh = std::sin(0.5 * beta * h);
    // e^{alpha h} cos(beta h) - 1
    const double em = std::expm1(alpha * h) * c - 2.0 * sh * sh;
    const double eas = ea * s;

    const double t1 = 2.0 * beta * (em - el_m1) + 2.0 * eas * (lambda - alpha);
    const double t2 = alpha * (-em) * (-2.0 * eas) + alpha * eas * 2.0 * (el_m1 - em) +
                      beta * (-em) * 2.0 * (em - el_m1) + beta * eas * (-2.0 * eas) +
                      lambda * (-el_m1) * (2.0 * eas);
    const double t3 = 2.0 * alpha * eas + 2.0 * beta * em;

    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Implicit;
    p.theta = checked_div(t1, t2, "ieds_complex theta");
    p.phi = checked_div(2.0 * eas, 2.0 * beta + t3 * p.theta, "ieds_complex phi");
    p.psi = el - p.phi * lambda * (p.theta * el + 1.0 - p.theta);
    p.psi_m1 = el_m1 - p.phi * lambda * (1.0 + p.theta * el_m1);
    return guarded(p, complex_class(alpha, std::abs(beta), lambda), "ieds_complex");
}

DoubleCaseRoots ieds_double_roots(double l1, double l2, double h) {
    const double E1 = std::exp(l1 * h);
    const double E2 = std::exp(l2 * h);
    const double d = l1 - l2;
    const double a = h * E1 * l1 * l1 - l1 * l2 * (E1 - E2) / d;
    const double b = 2.0 * h * E1 * l1 + (l1 + l2) * (E2 - E1) / d;
    const double sq = E1 - E2;
    return {(b - sq) / (2.0 * a), (b + sq) / (2.0 * a)};
}

SchemeParams ieds_double(double l1, double l2, double h) {
    require_step(h, "ieds_double");
    if (l1 == l2) throw Error(ErrorCode::InvalidArgument, "ieds_double: eigenvalues must differ");

    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Implicit;
    const double scale = std::max(std::abs(l1), std::abs(l2));

    if (is_zero_eig(l1, scale)) {
        const double x = l2 * h;
        p.psi = 1.0;
        p.psi_m1 = 0.0;
        p.phi = h;
        p.theta = phi2(x) / phi1(x);
        return guarded(p, double_class(0.0, l2), "ieds_double");
    }

    // Admissible root T1 of the quadratic for T = phi * theta. The common
    // factor lambda1 of its numerator and denominator is cancelled, giving
    //   T1 = C / (lambda1 C + e^{l1 h} - e^{l2 h}),
    //   C  = h e^{l1 h} - (e^{l1 h} - e^{l2 h}) / (l1 - l2)
    //      = e^{l1 h} (l1 - l2) h^2 phi2(-(l1 - l2) h).
    const double d = l1 - l2;
    const double E1 = std::exp(l1 * h);
    const double e1 = std::expm1(l1 * h);
    const double e2 = std::expm1(l2 * h);
    const double d12 = exp_diff(l1, l2, h);
    const double cc = E1 * d * h * h * phi2(-d * h);
    const double t = checked_div(cc, l1 * cc + d12, "ieds_double T1");

    p.psi_m1 = (l1 * e2 - l2 * e1 + l1 * l2 * d12 * t) / d;
    p.psi = 1.0 + p.psi_m1;
    p.phi = (d12 + (l2 * e2 - l1 * e1) * t) / d;
    p.theta = checked_div(t, p.phi, "ieds_double theta");
    return guarded(p, double_class(l1, l2), "ieds_double");
}

SchemeParams ieds_triple(double l, double h) {
    require_step(h, "ieds_triple");
    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Implicit;
    if (is_zero_eig(l, std::abs(l))) {
        p.psi = 1.0;
        p.psi_m1 = 0.0;
        p.phi = h;
        p.theta = 0.5;
        return p;
    }
    const double x = l * h;
    if (std::abs(x + 2.0) < 1e-12) {
        throw Error(ErrorCode::ParamSingularity, "ieds_triple: step at the pole h = -2/lambda");
    }
    const double E = std::exp(x);
    p.psi = E * (2.0 - x) / (x + 2.0);
    p.psi_m1 = std::abs(x) < 1.0 ? x * x * x * ((2.0 - x) * phi3(x) - 0.5) / (2.0 + x) : p.psi - 1.0;
    p.phi = h * (E + 1.0) / (x + 2.0);
    p.theta = 1.0 / (E + 1.0);
    return guarded(p, triple_class(l), "ieds_triple");
}

SchemeParams ieds_fallback(const std::array<cplx, 3>& lambda, double h) {
    require_step(h, "ieds_fallback");
    if (spectral_radius_h(lambda, h) <= kSeriesRadius) return series_params(lambda, h, SchemeKind::Implicit);
    // psi + l phi + l (e^{lh} - 1) (phi theta) = e^{lh}, rewritten for psi - 1.
    CMat3 M;
    CVec3 rhs;
    for (std::size_t i = 0; i < 3; ++i) {
        const cplx l = lambda[i];
        const cplx em = cexpm1(l * h);
        M(i, 0) = 1.0;
        M(i, 1) = l;
        M(i, 2) = l * em;
        rhs[i] = em;
    }
    CVec3 u;
    try {
        u = solve3(M, rhs);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParamSingularity, std::string("ieds_fallback: ") + e.what());
    }
    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Implicit;
    p.psi_m1 = u[0].real();
    p.psi = 1.0 + p.psi_m1;
    p.phi = u[1].real();
    p.theta = checked_div(u[2].real(), p.phi, "ieds_fallback theta");
    if (!std::isfinite(p.psi) || !std::isfinite(p.phi) || !std::isfinite(p.theta)) {
        throw Error(ErrorCode::ParamSingularity, "ieds_fallback: non-finite parameter");
    }
    return p;
}

// ===========================================================================
// Explicit exact schemes
// ===========================================================================

namespace {

// One step of iterative refinement on psi - 1 + l phi + l^2 tau = expm1(lh),
// tau = theta phi^2, with the residual in extended precision. Large |l h|
// amplifies the rounding in theta by phi^2 l^2.
void refine_explicit(SchemeParams& p, const std::array<cplx, 3>& lambda) {
    using lcplx = std::complex<long double>;
    CMat3 M;
    CVec3 r;
    const long double tau = static_cast<long double>(p.theta) * p.phi * p.phi;
    for (std::size_t i = 0; i < 3; ++i) {
        const lcplx l(lambda[i].real(), lambda[i].imag());
        const lcplx lh = l * static_cast<long double>(p.h);
        const lcplx em1 = lh.imag() == 0.0L ? lcplx(std::expm1(lh.real())) : std::exp(lh) - 1.0L;
        const lcplx res = em1 - (static_cast<long double>(p.psi_m1) + l * static_cast<long double>(p.phi) + l * l * tau);
        r[i] = cplx(static_cast<double>(res.real()), static_cast<double>(res.imag()));
        M(i, 0) = 1.0;
        M(i, 1) = lambda[i];
        M(i, 2) = lambda[i] * lambda[i];
    }
    CVec3 d;
    try {
        d = solve3(M, r);
    } catch (const Error&) {
        return;
    }
    const double phi = p.phi + d[1].real();
    const double theta = static_cast<double>((tau + d[2].real()) / (static_cast<long double>(phi) * phi));
    if (!std::isfinite(phi) || !std::isfinite(theta) || phi == 0.0) return;
    p.psi_m1 += d[0].real();
    p.psi = 1.0 + p.psi_m1;
    p.phi = phi;
    p.theta = theta;
}

}  // namespace

SchemeParams eeds_distinct(double l1, double l2, double l3, double h) {
    require_step(h, "eeds_distinct");
    std::array<double, 3> l{l1, l2, l3};
    const double scale = std::max({1.0, std::abs(l1), std::abs(l2), std::abs(l3)});

    // Label so that lambda2, lambda3 are nonzero and lambda1 + lambda2 is as
    // far from zero as possible; the closed form divides by lambda2^2,
    // lambda3^2 and lambda2^2 - lambda1^2.
    int zero_idx = -1;
    for (int i = 0; i < 3; ++i)
        if (is_zero_eig(l[i], scale)) zero_idx = i;
    std::array<double, 3> o{};
    if (zero_idx >= 0) {
        o[0] = l[zero_idx];
        double a = l[(zero_idx + 1) % 3];
        double b = l[(zero_idx + 2) % 3];
        if (std::abs(a) < std::abs(b)) std::swap(a, b);
        o[1] = a;
        o[2] = b;
    } else {
        double best = -1.0;
        for (int k = 0; k < 3; ++k) {
            const double a = l[(k + 1) % 3];
            const double b = l[(k + 2) % 3];
            if (std::abs(a + b) > best) {
                best = std::abs(a + b);
                o[0] = std::abs(a) <= std::abs(b) ? a : b;
                o[1] = std::abs(a) <= std::abs(b) ? b : a;
                o[2] = l[k];
            }
        }
        if (best <= 1e-8 * scale) return eeds_fallback({l1, l2, l3}, h);
    }
    const double a1 = o[0], a2 = o[1], a3 = o[2];
    const double s1 = a1 * a1, s2 = a2 * a2, s3 = a3 * a3;
    const double e1 = std::expm1(a1 * h);
    const double e2 = std::expm1(a2 * h);
    const double e3 = std::expm1(a3 * h);

    // The constant parts of e^{lh} = 1 + expm1(lh) cancel exactly in the
    // phi numerator, so only the expm1 terms are kept.
    const double num = (s3 - s2) * (s2 * e1 - s1 * e2) - (s2 - s1) * (s3 * e2 - s2 * e3);
    const double den = a1 * a2 * (a2 - a1) * (s3 - s2) - a2 * a3 * (a3 - a2) * (s2 - s1);

    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Explicit;
    p.phi = checked_div(num, den, "eeds_distinct phi");
    const double E1 = std::exp(a1 * h);
    const double E2 = std::exp(a2 * h);
    p.psi = checked_div(s2 * E1 - s1 * E2 - a1 * a2 * (a2 - a1) * p.phi, s2 - s1, "eeds_distinct psi");
    p.psi_m1 = (s2 * e1 - s1 * e2 - a1 * a2 * (a2 - a1) * p.phi) / (s2 - s1);
    p.theta = checked_div(e3 - p.psi_m1 - a3 * p.phi, s3 * p.phi * p.phi, "eeds_distinct theta");
    if (zero_idx < 0) refine_explicit(p, {a1, a2, a3});
    SpectrumClass cls = zero_idx >= 0 ? with_zero_class(a2, a3) : distinct_class(a1, a2, a3);
    if (zero_idx >= 0 && a1 != 0.0) cls = distinct_class(a1, a2, a3);
    return guarded(p, cls, "eeds_distinct");
}

SchemeParams eeds_double(double l1, double l2, double h) {
    require_step(h, "eeds_double");
    if (l1 == l2) throw Error(ErrorCode::InvalidArgument, "eeds_double: eigenvalues must differ");
    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Explicit;
    const double scale = std::max(std::abs(l1), std::abs(l2));

    if (is_zero_eig(l1, scale)) {
        p.psi = 1.0;
        p.psi_m1 = 0.0;
        p.phi = h;
        p.theta = phi2(l2 * h);
        return guarded(p, double_class(0.0, l2), "eeds_double");
    }

    // Closed form with e^{l1 h} - e^{l2 h} expanded through phi2, which
    // removes the 1/lambda1 in theta:
    //   phi   = h e^{l1 h} (1 - 2 l1 h phi2(-(l1 - l2) h))
    //   theta = h^2 e^{l1 h} phi2(-(l1 - l2) h) / phi^2
    //   psi   = ((2 - l1 h) e^{l1 h} - l1 phi) / 2
    const double x1 = l1 * h;
    const double E1 = std::exp(x1);
    const double g = phi2(-(l1 - l2) * h);
    p.phi = h * E1 * (1.0 - 2.0 * x1 * g);
    p.theta = checked_div(h * h * E1 * g, p.phi * p.phi, "eeds_double theta");
    p.psi = ((2.0 - x1) * E1 - l1 * p.phi) / 2.0;
    p.psi_m1 = std::abs(x1) < 1.0 ? x1 * x1 * (phi2(x1) - phi1(x1) + E1 * g) : p.psi - 1.0;
    return guarded(p, double_class(l1, l2), "eeds_double");
}

SchemeParams eeds_triple(double l, double h) {
    require_step(h, "eeds_triple");
    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Explicit;
    if (is_zero_eig(l, std::abs(l))) {
        p.psi = 1.0;
        p.psi_m1 = 0.0;
        p.phi = h;
        p.theta = 0.5;
        return p;
    }
    const double x = l * h;
    if (std::abs(1.0 - x) < 1e-12) {
        throw Error(ErrorCode::ParamSingularity, "eeds_triple: phi vanishes at lambda h = 1");
    }
    const double E = std::exp(x);
    p.phi = (h - l * h * h) * E;
    p.theta = h * h * E / (2.0 * p.phi * p.phi);
    p.psi = E - l * p.phi - p.theta * p.phi * p.phi * l * l;
    p.psi_m1 = std::abs(x) < 1.0 ? 0.25 * x * x * x * x + x * x * x * phi3(x) * (1.0 - x + 0.5 * x * x)
                                 : p.psi - 1.0;
    return guarded(p, triple_class(l), "eeds_triple");
}

SchemeParams eeds_fallback(const std::array<cplx, 3>& lambda, double h) {
    require_step(h, "eeds_fallback");
    if (spectral_radius_h(lambda, h) <= kSeriesRadius) return series_params(lambda, h, SchemeKind::Explicit);
    // psi + l phi + l^2 (theta phi^2) = e^{lh}, rewritten for psi - 1.
    CMat3 M;
    CVec3 rhs;
    for (std::size_t i = 0; i < 3; ++i) {
        const cplx l = lambda[i];
        M(i, 0) = 1.0;
        M(i, 1) = l;
        M(i, 2) = l * l;
        rhs[i] = cexpm1(l * h);
    }
    CVec3 u;
    try {
        u = solve3(M, rhs);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParamSingularity, std::string("eeds_fallback: ") + e.what());
    }
    SchemeParams p;
    p.h = h;
    p.kind = SchemeKind::Explicit;
    p.psi_m1 = u[0].real();
    p.psi = 1.0 + p.psi_m1;
    p.phi = u[1].real();
    p.theta = checked_div(u[2].real(), p.phi * p.phi, "eeds_fallback theta");
    refine_explicit(p, lambda);
    if (!std::isfinite(p.psi) || !std::isfinite(p.phi) || !std::isfinite(p.theta)) {
        throw Error(ErrorCode::ParamSingularity, "eeds_fallback: non-finite parameter");
    }
    return p;
}

// ===========================================================================
// Dispatch
// ===========================================================================

SchemeParams make_params(const SpectrumClass& cls, double h, SchemeKind kind) {
    const bool distinct = cls.kind == SpectrumKind::DistinctReal || cls.kind == SpectrumKind::DistinctRealWithZero ||
                          cls.kind == SpectrumKind::ComplexPairPlusReal;
    auto closed_form = [&]() -> SchemeParams {
        if (kind == SchemeKind::Implicit) {
            switch (cls.kind) {
                case SpectrumKind::DistinctReal: return ieds_distinct(cls.l1, cls.l2, cls.l3, h);
                case SpectrumKind::DistinctRealWithZero: return ieds_with_zero(cls.l2, cls.l3, h);
                case SpectrumKind::ComplexPairPlusReal: return ieds_complex(cls.alpha, cls.beta, cls.l1, h);
                case SpectrumKind::DoubleReal: return ieds_double(cls.l1, cls.l2, h);
                case SpectrumKind::TripleReal: return ieds_triple(cls.l1, h);
            }
        } else {
            switch (cls.kind) {
                case SpectrumKind::DistinctReal: return eeds_distinct(cls.l1, cls.l2, cls.l3, h);
                case SpectrumKind::DistinctRealWithZero: return eeds_distinct(0.0, cls.l2, cls.l3, h);
                // No closed form for a complex pair: the Vandermonde solve is the implementation.
                case SpectrumKind::ComplexPairPlusReal: return eeds_fallback(cls.eigenvalues(), h);
                case SpectrumKind::DoubleReal: return eeds_double(cls.l1, cls.l2, h);
                case SpectrumKind::TripleReal: return eeds_triple(cls.l1, h);
            }
        }
        throw Error(ErrorCode::InvalidArgument, "make_params: unknown spectrum class");
    };

    try {
        return closed_form();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ParamSingularity || !distinct) throw;
    }
    SchemeParams p = kind == SchemeKind::Implicit ? ieds_fallback(cls.eigenvalues(), h)
                                                  : eeds_fallback(cls.eigenvalues(), h);
    const double r = condition_residual(p, cls);
    if (!(r <= kParamResidualGuard)) {
        throw Error(ErrorCode::ParamSingularity,
                    "closed form and fallback both failed (fallback residual " + std::to_string(r) + ")");
    }
    return p;
}

// ===========================================================================
// Condition systems
// ===========================================================================

double implicit_simple_residual(const SchemeParams& p, cplx l) {
    const cplx E = std::exp(l * p.h);
    const cplx a = p.phi * l * (1.0 - p.theta);
    const cplx b = E * p.phi * l * p.theta;
    const cplx sum = p.psi + a - E + b;
    return relres(std::abs(sum), std::abs(p.psi) + std::abs(a) + std::abs(E) + std::abs(b));
}

double implicit_jordan2_residual(const SchemeParams& p, double l) {
    const double E = std::exp(l * p.h);
    const double d = 1.0 - p.phi * l * p.theta;
    const double a = p.phi * (1.0 - p.theta);
    const double b = p.phi * p.psi * p.theta;
    const double c = p.h * E * d * d;
    const double mag = std::abs(a) + std::abs(b) + p.h * E * (1.0 + std::abs(p.phi * l * p.theta)) *
                                                       (1.0 + std::abs(p.phi * l * p.theta));
    return relres(a + b - c, mag);
}

double implicit_jordan3_residual(const SchemeParams& p, double l) {
    const double E = std::exp(l * p.h);
    const double d = 1.0 - p.phi * l * p.theta;
    const double w = p.phi * p.phi * p.theta;
    const double a = w * (1.0 - p.theta);
    const double b = w * p.psi * p.theta;
    const double c = 0.5 * p.h * p.h * E * d * d * d;
    const double g = 1.0 + std::abs(p.phi * l * p.theta);
    return relres(a + b - c, std::abs(a) + std::abs(b) + 0.5 * p.h * p.h * E * g * g * g);
}

double explicit_simple_residual(const SchemeParams& p, cplx l) {
    const cplx E = std::exp(l * p.h);
    const cplx a = p.phi * l;
    const cplx b = p.theta * p.phi * p.phi * l * l;
    return relres(std::abs(p.psi + a + b - E), std::abs(p.psi) + std::abs(a) + std::abs(b) + std::abs(E));
}

double explicit_jordan2_residual(const SchemeParams& p, double l) {
    const double E = std::exp(l * p.h);
    const double b = 2.0 * l * p.theta * p.phi * p.phi;
    return relres(p.phi + b - p.h * E, std::abs(p.phi) + std::abs(b) + p.h * E);
}

double explicit_jordan3_residual(const SchemeParams& p, double l) {
    const double E = std::exp(l * p.h);
    const double a = p.theta * p.phi * p.phi;
    const double c = 0.5 * p.h * p.h * E;
    return relres(a - c, std::abs(a) + c);
}

double condition_residual(const SchemeParams& p, const SpectrumClass& cls) {
    const bool imp = p.kind == SchemeKind::Implicit;
    auto simple = [&](cplx l) { return imp ? implicit_simple_residual(p, l) : explicit_simple_residual(p, l); };
    double r = 0.0;
    auto acc = [&](double v) {
        if (!(v <= r)) r = v;
    };
    switch (cls.kind) {
        case SpectrumKind::DistinctReal:
        case SpectrumKind::DistinctRealWithZero:
        case SpectrumKind::ComplexPairPlusReal:
            for (const cplx& l : cls.eigenvalues()) acc(simple(l));
            break;
        case SpectrumKind::DoubleReal:
            acc(simple(cls.l1));
            acc(simple(cls.l2));
            acc(imp ? implicit_jordan2_residual(p, cls.l1) : explicit_jordan2_residual(p, cls.l1));
            break;
        case SpectrumKind::TripleReal:
            acc(simple(cls.l1));
            acc(imp ? implicit_jordan2_residual(p, cls.l1) : explicit_jordan2_residual(p, cls.l1));
            acc(imp ? implicit_jordan3_residual(p, cls.l1) : explicit_jordan3_residual(p, cls.l1));
            break;
    }
    return r;
}

}  // namespace exactfd
