#include "exactfd/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "exactfd/errors.hpp"

namespace exactfd {

CharPoly char_poly(const Mat3& A) {
    const double minors = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) +
                          (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) +
                          (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1));
    return {-trace(A), minors, -det(A)};
}

namespace {

struct Cubic {
    double b2, b1, b0;

    template <typename T>
    T value(T y) const {
        return ((y + b2) * y + b1) * y + b0;
    }
    template <typename T>
    T slope(T y) const {
        return (3.0 * y + 2.0 * b2) * y + b1;
    }
};

// One guarded Newton step: kept only when it lowers |g|.
template <typename T>
T polish(const Cubic& g, T y) {
    const T f = g.value(y);
    const T d = g.slope(y);
    if (std::abs(d) == 0.0 || !std::isfinite(std::abs(f / d))) return y;
    const T y1 = y - f / d;
    return std::abs(g.value(y1)) < std::abs(f) ? y1 : y;
}

// Absolute error bounds for the coefficients of det(yI - B), B = fl(A - mu I).
struct CoefErr {
    double e2 = 0.0, e1 = 0.0, e0 = 0.0;

    double at(double y) const {
        y = std::abs(y);
        return (e2 * y + e1) * y + e0;
    }
};

CoefErr coef_error(const Mat3& A, const Mat3& B, double mu) {
    constexpr double u = std::numeric_limits<double>::epsilon();
    std::array<double, 3> d{};
    for (std::size_t i = 0; i < 3; ++i) d[i] = 2.0 * u * (std::abs(A(i, i)) + std::abs(mu));
    auto ab = [&](std::size_t i, std::size_t j) { return std::abs(B(i, j)); };

    CoefErr e;
    for (std::size_t i = 0; i < 3; ++i) e.e2 += d[i] + 2.0 * u * ab(i, i);
    constexpr std::array<std::array<std::size_t, 3>, 3> rest{{{1, 2, 0}, {0, 2, 1}, {0, 1, 2}}};
    for (const auto& r : rest) {
        const std::size_t i = r[0], j = r[1], k = r[2];
        const double minor = ab(i, i) * ab(j, j) + ab(i, j) * ab(j, i);
        e.e1 += 3.0 * u * minor + d[i] * ab(j, j) + d[j] * ab(i, i);
        e.e0 += d[k] * minor;
    }
    const double perm = ab(0, 0) * (ab(1, 1) * ab(2, 2) + ab(1, 2) * ab(2, 1)) +
                        ab(0, 1) * (ab(1, 0) * ab(2, 2) + ab(1, 2) * ab(2, 0)) +
                        ab(0, 2) * (ab(1, 0) * ab(2, 1) + ab(1, 1) * ab(2, 0));
    e.e0 += 6.0 * u * perm;
    return e;
}

constexpr double kNoiseSafety = 4.0;

// Radii within which rounding of the cubic can split a double root (closest
// pair) or a triple root (all three) around their centers.
void set_noise(Spectrum& s, const std::array<cplx, 3>& y, double b2, const CoefErr& err) {
    std::size_t a = 0, b = 1;
    double best = std::abs(y[0] - y[1]);
    if (std::abs(y[0] - y[2]) < best) best = std::abs(y[0] - y[2]), a = 0, b = 2;
    if (std::abs(y[1] - y[2]) < best) best = std::abs(y[1] - y[2]), a = 1, b = 2;
    const double c = 0.5 * (y[a].real() + y[b].real());
    const double c3 = (y[0].real() + y[1].real() + y[2].real()) / 3.0;
    s.triple_noise = kNoiseSafety * std::cbrt(err.at(c3));
    const double curv = std::abs(3.0 * c + b2);
    const double pair = curv > 0.0 ? 2.0 * std::sqrt(err.at(c) / curv) : s.triple_noise;
    s.pair_noise = std::min(kNoiseSafety * pair, s.triple_noise);
}

}  // namespace

Spectrum eigenvalues3(const Mat3& A) {
    // Shift by trace/3 so the cubic is nearly depressed and its coefficients
    // are computed from the (small) deviation of A from a scalar matrix.
    const double mu = trace(A) / 3.0;
    const Mat3 B = A - mu * Mat3::identity();
    const CharPoly cb = char_poly(B);
    const Cubic g{cb.c2, cb.c1, cb.c0};

    const double shift = cb.c2 / 3.0;  // y = z - shift
    const double p = cb.c1 - cb.c2 * cb.c2 / 3.0;
    const double q = 2.0 * cb.c2 * cb.c2 * cb.c2 / 27.0 - cb.c2 * cb.c1 / 3.0 + cb.c0;

    Spectrum s;
    s.trace = trace(A);
    if (p == 0.0 && q == 0.0) {
        for (auto& l : s.lambda) l = mu - shift;
        return s;
    }

    const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t = -q / 2.0 + (q <= 0.0 ? sq : -sq);
        const double u = std::cbrt(t);
        const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
        double yr = (u + v) - shift;
        cplx yc(-(u + v) / 2.0 - shift, std::sqrt(3.0) / 2.0 * std::abs(u - v));
        yr = polish(g, yr);
        yc = polish(g, yc);
        const double im = std::abs(yc.imag());
        s.lambda[0] = mu + yr;
        s.lambda[1] = cplx(mu + yc.real(), im);
        s.lambda[2] = cplx(mu + yc.real(), -im);
        set_noise(s, {cplx(yr), cplx(yc.real(), im), cplx(yc.real(), -im)}, cb.c2, coef_error(A, B, mu));
        return s;
    }

    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double ang = std::acos(arg) / 3.0;
    std::array<double, 3> y{};
    for (int k = 0; k < 3; ++k) {
        y[k] = polish(g, r * std::cos(ang - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
    std::sort(y.begin(), y.end());
    for (int k = 0; k < 3; ++k) s.lambda[k] = mu + y[k];
    set_noise(s, {cplx(y[0]), cplx(y[1]), cplx(y[2])}, cb.c2, coef_error(A, B, mu));
    return s;
}

std::string_view to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::DistinctReal: return "DistinctReal";
        case SpectrumKind::DistinctRealWithZero: return "DistinctRealWithZero";
        case SpectrumKind::ComplexPairPlusReal: return "ComplexPairPlusReal";
        case SpectrumKind::DoubleReal: return "DoubleReal";
        case SpectrumKind::TripleReal: return "TripleReal";
    }
    return "Unknown";
}

double SpectrumClass::scale() const {
    double m = 1.0;
    for (const cplx& l : eigenvalues()) m = std::max(m, std::abs(l));
    return m;
}

std::array<cplx, 3> SpectrumClass::eigenvalues() const {
    switch (kind) {
        case SpectrumKind::DistinctReal: return {l1, l2, l3};
        case SpectrumKind::DistinctRealWithZero: return {0.0, l2, l3};
        case SpectrumKind::ComplexPairPlusReal: return {cplx(alpha, beta), cplx(alpha, -beta), l1};
        case SpectrumKind::DoubleReal: return {l1, l1, l2};
        case SpectrumKind::TripleReal: return {l1, l1, l1};
    }
    return {};
}

std::string SpectrumClass::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind) << "(";
    switch (kind) {
        case SpectrumKind::DistinctReal: os << l1 << ", " << l2 << ", " << l3; break;
        case SpectrumKind::DistinctRealWithZero: os << "0, " << l2 << ", " << l3; break;
        case SpectrumKind::ComplexPairPlusReal:
            os << "alpha=" << alpha << ", beta=" << beta << ", lambda=" << l1;
            break;
        case SpectrumKind::DoubleReal: os << "lambda1=" << l1 << " (x2), lambda2=" << l2; break;
        case SpectrumKind::TripleReal: os << l1; break;
    }
    os << ")";
    if (ambiguous) os << " [ambiguous clustering merged]";
    return os.str();
}

SpectrumClass classify(const Spectrum& s, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "classify: tol must be positive");

    double scale = 1.0;
    for (const cplx& l : s.lambda) scale = std::max(scale, std::abs(l));
    const double thr = tol * scale;
    const double thr_pair = std::max(thr, s.pair_noise);
    const double thr_triple = std::max(thr, s.triple_noise);
    const double sum = std::isnan(s.trace) ? (s.lambda[0] + s.lambda[1] + s.lambda[2]).real() : s.trace;

    SpectrumClass out;

    if (thr_triple > thr) {
        const cplx c = (s.lambda[0] + s.lambda[1] + s.lambda[2]) / 3.0;
        double spread = 0.0;
        for (const cplx& l : s.lambda) spread = std::max(spread, std::abs(l - c));
        if (spread <= thr_triple) {
            out.kind = SpectrumKind::TripleReal;
            out.l1 = sum / 3.0;
            return out;
        }
    }

    // A genuine conjugate pair: one real root plus two roots with |Im| > thr.
    std::array<cplx, 3> lam = s.lambda;
    std::sort(lam.begin(), lam.end(), [](cplx a, cplx b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    if (std::abs(lam[2].imag()) > thr_pair && std::abs(lam[1].imag()) > thr_pair) {
        out.kind = SpectrumKind::ComplexPairPlusReal;
        out.alpha = 0.5 * (lam[1].real() + lam[2].real());
        out.beta = 0.5 * (std::abs(lam[1].imag()) + std::abs(lam[2].imag()));
        out.l1 = lam[0].real();
        return out;
    }

    std::array<double, 3> r{lam[0].real(), lam[1].real(), lam[2].real()};
    std::sort(r.begin(), r.end());
    const bool c01 = r[1] - r[0] <= thr_pair;
    const bool c12 = r[2] - r[1] <= thr_pair;
    const bool c02 = r[2] - r[0] <= thr_pair;

    if (c01 && c12) {
        out.kind = SpectrumKind::TripleReal;
        out.l1 = sum / 3.0;
        out.ambiguous = !c02;
        return out;
    }
    // A repeated root is ill-conditioned but the simple one is not, and the
    // trace is exact, so the pair is recovered as (trace - simple) / 2 rather
    // than as the mean of its two members.
    if (c01 || c12) {
        out.kind = SpectrumKind::DoubleReal;
        out.l2 = c01 ? r[2] : r[0];
        out.l1 = 0.5 * (sum - out.l2);
        return out;
    }

    int zeros = 0;
    for (double x : r) zeros += std::abs(x) <= thr ? 1 : 0;
    if (zeros == 1) {
        out.kind = SpectrumKind::DistinctRealWithZero;
        std::array<double, 2> nz{};
        int k = 0;
        for (double x : r)
            if (std::abs(x) > thr) nz[k++] = x;
        out.l1 = 0.0;
        out.l2 = nz[0];
        out.l3 = nz[1];
        return out;
    }
    if (zeros >= 2) {
        // Two roots straddle zero more than thr apart: merge them as a double
        // root rather than feed a sub-tolerance gap to the distinct formulas.
        out.kind = SpectrumKind::DoubleReal;
        out.ambiguous = true;
        out.l2 = (std::abs(r[0]) <= thr && std::abs(r[1]) <= thr) ? r[2] : r[0];
        out.l1 = 0.5 * (sum - out.l2);
        return out;
    }
    out.kind = SpectrumKind::DistinctReal;
    out.l1 = r[0];
    out.l2 = r[1];
    out.l3 = r[2];
    return out;
}

}  // namespace exactfd
