#include "exactfd/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exactfd/errors.hpp"

namespace exactfd {

TransferMatrix build_transfer_unchecked(const Mat3& A, const SchemeParams& p) {
    if (!std::isfinite(p.psi) || !std::isfinite(p.phi) || !std::isfinite(p.theta) || !(p.h > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "build_transfer: non-finite parameters");
    }
    const Mat3 I = Mat3::identity();
    // psi I written as I + (psi - 1) I so small psi - 1 survives.
    const Mat3 base = I + p.psi_m1 * I;
    TransferMatrix T;
    T.h = p.h;
    T.kind = p.kind;
    T.params = p;
    const Mat3 incr = p.psi_m1 * I + p.phi * A;
    if (p.kind == SchemeKind::Explicit) {
        T.D = incr + (p.theta * p.phi * p.phi) * (A * A);
        T.Q = base + p.phi * A + (p.theta * p.phi * p.phi) * (A * A);
    } else {
        // Q - I = (I - phi theta A)^{-1} ((psi - 1) I + phi A)
        const Mat3 lhs = I - (p.phi * p.theta) * A;
        const Mat3 rhs = base + (p.phi * (1.0 - p.theta)) * A;
        try {
            T.Q = solve3(lhs, rhs);
            T.D = solve3(lhs, incr);
        } catch (const Error&) {
            throw Error(ErrorCode::SingularImplicitStep, "I - phi theta A is singular");
        }
    }
    if (!is_finite(T.Q) || !is_finite(T.D)) throw Error(ErrorCode::Overflow, "transfer matrix is not finite");
    return T;
}

TransferMatrix build_transfer(const Mat3& A, const SchemeParams& p) {
    TransferMatrix T = build_transfer_unchecked(A, p);
    const Mat3 E = expm(A, p.h);
    const double err = norm_inf(T.Q - E);
    const double bound = kExactnessTol * std::max(1.0, norm_inf(E));
    if (!(err <= bound)) {
        std::ostringstream os;
        os.precision(3);
        os << "|Q - e^{Ah}| = " << err << " exceeds " << bound << " (h = " << p.h << ")";
        throw Error(ErrorCode::ExactnessViolation, os.str());
    }
    return T;
}

TransferMatrix make_transfer(const Mat3& A, double h, SchemeKind kind, double cluster_tol) {
    const SpectrumClass cls = classify(eigenvalues3(A), cluster_tol);
    return build_transfer(A, make_params(cls, h, kind));
}

void iterate(const TransferMatrix& T, const Vec3& x0, long long N,
             const std::function<void(long long, double, const Vec3&)>& visit, bool allow_nonfinite) {
    Vec3 x = x0;
    visit(0, 0.0, x);
    for (long long k = 1; k <= N; ++k) {
        x = step(T, x);
        if (!allow_nonfinite && !is_finite(x)) {
            throw Error(ErrorCode::Overflow, "state became non-finite at step " + std::to_string(k));
        }
        visit(k, static_cast<double>(k) * T.h, x);
    }
}

Trajectory integrate(const Mat3& A, const Vec3& x0, double T, long long N, SchemeKind kind, double cluster_tol) {
    if (!(T > 0.0) || N < 1) throw Error(ErrorCode::InvalidArgument, "integrate: need T > 0 and N >= 1");
    const TransferMatrix Q = make_transfer(A, T / static_cast<double>(N), kind, cluster_tol);
    Trajectory tr;
    tr.times.reserve(static_cast<std::size_t>(N) + 1);
    tr.states.reserve(static_cast<std::size_t>(N) + 1);
    iterate(Q, x0, N, [&](long long, double t, const Vec3& x) {
        tr.times.push_back(t);
        tr.states.push_back(x);
    });
    return tr;
}

Vec3 one_shot(const Mat3& A, const Vec3& x0, double t, SchemeKind kind, double cluster_tol) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "one_shot: t must be positive");
    return step(make_transfer(A, t, kind, cluster_tol), x0);
}

}  // namespace exactfd
