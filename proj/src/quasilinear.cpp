#include "exactfd/quasilinear.hpp"

#include "exactfd/errors.hpp"

namespace exactfd {

Vec3 nsfd_step(const QuasiLinearProblem& p, const TransferMatrix& Q, const Vec3& v, double t) {
    const Vec3 next = step(Q, v) + Q.params.phi * p.g(t, v);
    if (!is_finite(next)) throw Error(ErrorCode::Overflow, "NSFD state became non-finite");
    return next;
}

Trajectory nsfd_integrate(const QuasiLinearProblem& p, long long N, double cluster_tol) {
    if (!(p.T > 0.0) || N < 1) throw Error(ErrorCode::InvalidArgument, "nsfd_integrate: need T > 0 and N >= 1");
    const double h = p.T / static_cast<double>(N);
    const TransferMatrix Q = make_transfer(p.A, h, SchemeKind::Explicit, cluster_tol);
    Trajectory tr;
    tr.times.reserve(static_cast<std::size_t>(N) + 1);
    tr.states.reserve(static_cast<std::size_t>(N) + 1);
    Vec3 v = p.v0;
    tr.times.push_back(0.0);
    tr.states.push_back(v);
    for (long long k = 0; k < N; ++k) {
        v = nsfd_step(p, Q, v, static_cast<double>(k) * h);
        tr.times.push_back(static_cast<double>(k + 1) * h);
        tr.states.push_back(v);
    }
    return tr;
}

Trajectory euler_integrate(const QuasiLinearProblem& p, long long N) {
    if (!(p.T > 0.0) || N < 1) throw Error(ErrorCode::InvalidArgument, "euler_integrate: need T > 0 and N >= 1");
    const double h = p.T / static_cast<double>(N);
    const Mat3 Q = Mat3::identity() + h * p.A;
    Trajectory tr;
    Vec3 v = p.v0;
    tr.times.push_back(0.0);
    tr.states.push_back(v);
    for (long long k = 0; k < N; ++k) {
        v = Q * v + h * p.g(static_cast<double>(k) * h, v);
        tr.times.push_back(static_cast<double>(k + 1) * h);
        tr.states.push_back(v);
    }
    return tr;
}

Vec3 rk4_reference(const QuasiLinearProblem& p, double t_end, long long N) {
    const double h = t_end / static_cast<double>(N);
    auto f = [&](double t, const Vec3& v) { return p.A * v + p.g(t, v); };
    Vec3 v = p.v0;
    for (long long k = 0; k < N; ++k) {
        const double t = static_cast<double>(k) * h;
        const Vec3 k1 = f(t, v);
        const Vec3 k2 = f(t + 0.5 * h, v + (0.5 * h) * k1);
        const Vec3 k3 = f(t + 0.5 * h, v + (0.5 * h) * k2);
        const Vec3 k4 = f(t + h, v + h * k3);
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return v;
}

}  // namespace exactfd
