#include "exactfd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exactfd/errors.hpp"
#include "exactfd/scheme.hpp"

namespace exactfd {

namespace {

// Multiples of 1/4 in [-2, 2].
double dyadic(std::mt19937_64& rng) { return std::uniform_int_distribution<int>(-8, 8)(rng) / 4.0; }

double distinct_from(std::mt19937_64& rng, std::initializer_list<double> taken) {
    for (;;) {
        const double v = dyadic(rng);
        if (std::none_of(taken.begin(), taken.end(), [&](double t) { return t == v; })) return v;
    }
}

std::string describe(const char* shape, int idx) {
    std::ostringstream os;
    os << shape << "#" << idx;
    return os.str();
}

}  // namespace

Mat3 random_unimodular(std::mt19937_64& rng, Mat3& inv) {
    Mat3 P = Mat3::identity();
    inv = Mat3::identity();
    std::uniform_int_distribution<int> idx(0, 2);
    std::uniform_int_distribution<int> mult(-2, 2);
    for (int op = 0; op < 4; ++op) {
        const int i = idx(rng);
        int j = idx(rng);
        while (j == i) j = idx(rng);
        const double c = mult(rng);
        if (c == 0.0) continue;
        // P <- E P with E = I + c e_i e_j^T; inv <- inv E^{-1}.
        for (int col = 0; col < 3; ++col) P(i, col) += c * P(j, col);
        for (int row = 0; row < 3; ++row) inv(row, j) -= c * inv(row, i);
    }
    return P;
}

std::vector<VerifyCase> random_cases(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<VerifyCase> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        Mat3 A;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) A(i, j) = u(rng);
        out.push_back({describe("random", n), A});
    }
    return out;
}

std::vector<VerifyCase> jordan_cases(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<VerifyCase> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        Mat3 J;
        const char* shape = "";
        const int form = n % 7;
        double a = dyadic(rng);
        // Triple spectra: the explicit scheme has no solution at lambda h = 1
        // and the implicit one none at lambda h = -2.
        if (form >= 4) a = distinct_from(rng, {1.0, -2.0});
        switch (form) {
            case 0: {
                const double b = distinct_from(rng, {a});
                const double c = distinct_from(rng, {a, b});
                J = Mat3::diag(a, b, c);
                shape = "distinct";
                break;
            }
            case 1: {
                double beta = std::abs(dyadic(rng));
                if (beta == 0.0) beta = 0.75;
                J = Mat3::from_rows({{a, -beta, 0}, {beta, a, 0}, {0, 0, dyadic(rng)}});
                shape = "complex";
                break;
            }
            case 2: {
                const double b = distinct_from(rng, {a});
                J = Mat3::diag(a, a, b);
                shape = "double-diag";
                break;
            }
            case 3: {
                const double b = distinct_from(rng, {a});
                J = Mat3::from_rows({{a, 1, 0}, {0, a, 0}, {0, 0, b}});
                shape = "double-jordan";
                break;
            }
            case 4:
                J = Mat3::diag(a, a, a);
                shape = "scalar";
                break;
            case 5:
                J = Mat3::from_rows({{a, 1, 0}, {0, a, 0}, {0, 0, a}});
                shape = "triple-2block";
                break;
            default:
                J = Mat3::from_rows({{a, 1, 0}, {0, a, 1}, {0, 0, a}});
                shape = "triple-3block";
                break;
        }
        Mat3 Pinv;
        Mat3 P = random_unimodular(rng, Pinv);
        while (norm_inf(P) * norm_inf(Pinv) > kMaxSimilarityCond) P = random_unimodular(rng, Pinv);
        out.push_back({describe(shape, n), P * J * Pinv});
    }
    return out;
}

VerifyReport run_exactness_suite(const std::vector<VerifyCase>& cases, int steps, double cluster_tol) {
    VerifyReport rep;
    // Irrational components so no eigen-direction of an integer similarity
    // is missing from x0.
    const Vec3 x0{{1.0, -1.0 / std::sqrt(2.0), std::numbers::pi / 10.0}};
    for (const VerifyCase& c : cases) {
        ++rep.cases;
        for (SchemeKind kind : {SchemeKind::Implicit, SchemeKind::Explicit}) {
            for (double h : {0.01, 0.1, 1.0}) {
                ++rep.checks;
                std::ostringstream tag;
                tag << c.label << " " << to_string(kind) << " h=" << h;
                try {
                    const TransferMatrix T = make_transfer(c.A, h, kind, cluster_tol);
                    Vec3 x = x0;
                    double err = 0.0, ref = 1.0;
                    for (int k = 1; k <= steps; ++k) {
                        x = step(T, x);
                        const Vec3 e = expm(c.A, k * h) * x0;
                        err = std::max(err, norm_inf(x - e));
                        ref = std::max(ref, norm_inf(e));
                    }
                    const double rel = err / ref;
                    if (!(rel <= rep.worst) && std::isfinite(rel)) {
                        rep.worst = rel;
                        rep.worst_label = tag.str();
                    }
                    if (!(rel <= 1e-9)) {
                        std::ostringstream os;
                        os << tag.str() << ": relative error " << rel;
                        rep.failures.push_back(os.str());
                    }
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::Overflow) {
                        // expm itself overflowed: the solution leaves double range.
                        --rep.checks;
                        continue;
                    }
                    rep.failures.push_back(tag.str() + ": " + e.what());
                }
            }
        }
    }
    return rep;
}

}  // namespace exactfd
