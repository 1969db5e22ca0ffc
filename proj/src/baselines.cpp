#include "exactfd/baselines.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "exactfd/errors.hpp"

namespace exactfd {

namespace {

struct Alias {
    std::string_view name;
    MethodId id;
};

constexpr std::array<Alias, 15> kAliases{{
    {"expliciteuler", MethodId::ExplicitEuler},
    {"euler", MethodId::ExplicitEuler},
    {"impliciteuler", MethodId::ImplicitEuler},
    {"ieuler", MethodId::ImplicitEuler},
    {"trapezoidal", MethodId::Trapezoidal},
    {"trap", MethodId::Trapezoidal},
    {"rk4", MethodId::RK4},
    {"taylor5", MethodId::Taylor5},
    {"taylor", MethodId::Taylor5},
    {"radauiia5", MethodId::RadauIIA5},
    {"radauiia", MethodId::RadauIIA5},
    {"radau", MethodId::RadauIIA5},
    {"ieds", MethodId::IEDS},
    {"eeds", MethodId::EEDS},
    {"radau5", MethodId::RadauIIA5},
}};

// sum_{j=1}^{degree} (hA)^j / j!
Mat3 taylor_increment(const Mat3& A, double h, int degree) {
    const Mat3 hA = h * A;
    Mat3 term = Mat3::identity();
    Mat3 sum = Mat3::zero();
    for (int j = 1; j <= degree; ++j) {
        term = (1.0 / j) * (term * hA);
        sum = sum + term;
    }
    return sum;
}

// Radau IIA, order 5.
constexpr double kSq6 = 2.449489742783178098197284;
constexpr std::array<std::array<double, 3>, 3> kRadauA{{
    {(88.0 - 7.0 * kSq6) / 360.0, (296.0 - 169.0 * kSq6) / 1800.0, (-2.0 + 3.0 * kSq6) / 225.0},
    {(296.0 + 169.0 * kSq6) / 1800.0, (88.0 + 7.0 * kSq6) / 360.0, (-2.0 - 3.0 * kSq6) / 225.0},
    {(16.0 - kSq6) / 36.0, (16.0 + kSq6) / 36.0, 1.0 / 9.0},
}};

// Dense Gaussian elimination with partial pivoting on an n x n system with
// m right-hand sides, in place.
template <std::size_t N, std::size_t M>
void dense_solve(std::array<std::array<double, N>, N>& a, std::array<std::array<double, M>, N>& b) {
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < N; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (!(std::abs(a[piv][k]) >= 1e-300)) throw Error(ErrorCode::SingularStepMatrix, "Radau stage matrix is singular");
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < N; ++i) {
            const double f = a[i][k] / a[k][k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < N; ++j) a[i][j] -= f * a[k][j];
            for (std::size_t j = 0; j < M; ++j) b[i][j] -= f * b[k][j];
        }
    }
    for (std::size_t ii = N; ii-- > 0;) {
        for (std::size_t j = 0; j < M; ++j) {
            double s = b[ii][j];
            for (std::size_t c = ii + 1; c < N; ++c) s -= a[ii][c] * b[c][j];
            b[ii][j] = s / a[ii][ii];
        }
    }
}

// Stages K_i = A (x + h sum_j a_ij K_j), x_{k+1} = x + h sum_i b_i K_i.
// With x = e_c for each column c: (I - h A_rk (x) A) K = 1 (x) A e_c.
// Returns Q - I.
Mat3 radau_increment(const Mat3& A, double h) {
    std::array<std::array<double, 9>, 9> M{};
    std::array<std::array<double, 3>, 9> rhs{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t r = 0; r < 3; ++r) {
                for (std::size_t c = 0; c < 3; ++c) {
                    M[3 * i + r][3 * j + c] = (i == j && r == c ? 1.0 : 0.0) - h * kRadauA[i][j] * A(r, c);
                }
            }
        }
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) rhs[3 * i + r][c] = A(r, c);
    }
    dense_solve(M, rhs);
    Mat3 D = Mat3::zero();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) D(r, c) += h * kRadauA[2][i] * rhs[3 * i + r][c];
    return D;
}

Mat3 implicit_solve(const Mat3& lhs, const Mat3& rhs) {
    try {
        return solve3(lhs, rhs);
    } catch (const Error&) {
        throw Error(ErrorCode::SingularStepMatrix, "step matrix is singular");
    }
}

}  // namespace

std::string_view to_string(MethodId m) {
    switch (m) {
        case MethodId::ExplicitEuler: return "ExplicitEuler";
        case MethodId::ImplicitEuler: return "ImplicitEuler";
        case MethodId::Trapezoidal: return "Trapezoidal";
        case MethodId::RK4: return "RK4";
        case MethodId::Taylor5: return "Taylor5";
        case MethodId::RadauIIA5: return "RadauIIA5";
        case MethodId::IEDS: return "IEDS";
        case MethodId::EEDS: return "EEDS";
    }
    return "Unknown";
}

std::optional<MethodId> parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    lower.erase(std::remove_if(lower.begin(), lower.end(), [](char ch) { return ch == '-' || ch == '_'; }),
                lower.end());
    for (const Alias& a : kAliases)
        if (a.name == lower) return a.id;
    return std::nullopt;
}

bool is_exact_scheme(MethodId m) { return m == MethodId::IEDS || m == MethodId::EEDS; }

TransferMatrix baseline_transfer(const Mat3& A, double h, MethodId m) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "baseline_transfer: bad step");
    const Mat3 I = Mat3::identity();
    TransferMatrix T;
    T.h = h;
    T.params.h = h;
    T.params.phi = h;
    switch (m) {
        case MethodId::ExplicitEuler: T.D = h * A; break;
        case MethodId::ImplicitEuler:
            T.Q = implicit_solve(I - h * A, I);
            T.D = implicit_solve(I - h * A, h * A);
            return T;
        case MethodId::Trapezoidal:
            T.Q = implicit_solve(I - (0.5 * h) * A, I + (0.5 * h) * A);
            T.D = implicit_solve(I - (0.5 * h) * A, h * A);
            return T;
        case MethodId::RK4: T.D = taylor_increment(A, h, 4); break;
        case MethodId::Taylor5: T.D = taylor_increment(A, h, 6); break;
        case MethodId::RadauIIA5: T.D = radau_increment(A, h); break;
        case MethodId::IEDS:
        case MethodId::EEDS:
            throw Error(ErrorCode::InvalidArgument, "baseline_transfer: exact schemes go through make_transfer");
    }
    T.Q = I + T.D;
    return T;
}

TransferMatrix method_transfer(const Mat3& A, double h, MethodId m, double cluster_tol) {
    if (m == MethodId::IEDS) return make_transfer(A, h, SchemeKind::Implicit, cluster_tol);
    if (m == MethodId::EEDS) return make_transfer(A, h, SchemeKind::Explicit, cluster_tol);
    return baseline_transfer(A, h, m);
}

}  // namespace exactfd
