#include "exactfd/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exactfd/errors.hpp"

namespace exactfd {

namespace {

double pow10(int k) { return std::stod("1e" + std::to_string(k)); }

void add_decades(std::vector<TableRow>& rows, double T, int lo, int hi) {
    for (int k = lo; k <= hi; ++k) rows.push_back({T, pow10(k)});
}

double sum_abs_diff(const Vec3& a, const Vec3& b) {
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}

std::string method_label(const BenchRecord& r) { return r.nsfd ? "NSFD" : std::string(to_string(r.method)); }

nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

}  // namespace

long long grid_steps(double T, double h) {
    if (!(T > 0.0) || !(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "T and h must be positive");
    const double r = T / h;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-9 * n) {
        throw Error(ErrorCode::GridMismatch, "T / h = " + format_double(r) + " is not a positive integer");
    }
    return static_cast<long long>(n);
}

BenchRecord run_cell(const LinearProblem& prob, MethodId m, double T, double h, ErrorMetric metric,
                     double cluster_tol) {
    const long long N = grid_steps(T, h);
    const auto start = std::chrono::steady_clock::now();

    const TransferMatrix Q = method_transfer(prob.A, h, m, cluster_tol);
    Vec3 x = prob.x0;
    double err = 0.0;
    if (metric == ErrorMetric::FinalSum) {
        for (long long k = 0; k < N; ++k) x = step(Q, x);
        err = sum_abs_diff(x, prob.exact(T));
    } else {
        for (long long k = 1; k <= N; ++k) {
            x = step(Q, x);
            const double e = sum_abs_diff(x, prob.exact(static_cast<double>(k) * h));
            if (!(e <= err)) err = e;  // keeps NaN
        }
    }

    BenchRecord r;
    r.method = m;
    r.T = T;
    r.lambda_tag = prob.lambda_tag;
    r.h = h;
    r.error = err;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

TableSpec table_spec(int id) {
    TableSpec s;
    s.id = id;
    if (id == 3) {
        add_decades(s.rows, 1.0, -5, 0);
        add_decades(s.rows, 10.0, -5, 1);
        add_decades(s.rows, 1e2, -4, 2);
        add_decades(s.rows, 1e3, -4, 3);
        add_decades(s.rows, 1e4, -3, 4);
        add_decades(s.rows, 1e5, -2, 5);
        s.methods = {MethodId::IEDS, MethodId::EEDS, MethodId::RK4, MethodId::Taylor5, MethodId::Trapezoidal};
        s.metric = ErrorMetric::FinalSum;
    } else if (id == 4) {
        add_decades(s.rows, 1e-3, -6, -3);
        add_decades(s.rows, 1e-2, -6, -2);
        add_decades(s.rows, 1e-1, -6, -1);
        add_decades(s.rows, 1.0, -5, 0);
        s.methods = {MethodId::IEDS, MethodId::EEDS, MethodId::RK4, MethodId::Taylor5, MethodId::RadauIIA5};
        s.metric = ErrorMetric::MaxSum;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown table " + std::to_string(id) + " (expected 3 or 4)");
    }
    return s;
}

LinearProblem table_problem(int id, double T) {
    if (id == 3) return example3(1.0 / T);
    if (id == 4) return example4();
    throw Error(ErrorCode::InvalidArgument, "unknown table " + std::to_string(id));
}

std::vector<BenchRecord> run_table(int id, double cluster_tol) {
    const TableSpec spec = table_spec(id);
    std::vector<BenchRecord> out;
    out.reserve(spec.rows.size() * spec.methods.size());
    for (const TableRow& row : spec.rows) {
        const LinearProblem prob = table_problem(id, row.T);
        for (MethodId m : spec.methods) out.push_back(run_cell(prob, m, row.T, row.h, spec.metric, cluster_tol));
    }
    return out;
}

std::vector<BenchRecord> run_example(int example, double cluster_tol) {
    constexpr double T = 10.0;
    const std::vector<double> steps{0.01, 0.1, 1.0, 2.0, 5.0};
    std::vector<BenchRecord> out;

    if (example == 5) {
        const QuasiLinearProblem p = example5(T);
        const Vec3 ref = rk4_reference(p, T, 100000);
        for (double h : steps) {
            const long long N = grid_steps(T, h);
            for (bool nsfd : {true, false}) {
                const auto start = std::chrono::steady_clock::now();
                const Trajectory tr = nsfd ? nsfd_integrate(p, N, cluster_tol) : euler_integrate(p, N);
                BenchRecord r;
                r.method = nsfd ? MethodId::EEDS : MethodId::ExplicitEuler;
                r.nsfd = nsfd;
                r.T = T;
                r.h = h;
                r.error = sum_abs_diff(tr.states.back(), ref);
                r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                out.push_back(r);
            }
        }
        return out;
    }

    LinearProblem prob;
    switch (example) {
        case 1: prob = example1(); break;
        case 2: prob = example2(); break;
        case 3: prob = example3(1.0); break;
        case 4: prob = example4(); break;
        default: throw Error(ErrorCode::InvalidArgument, "unknown example " + std::to_string(example));
    }
    const std::vector<MethodId> methods{MethodId::IEDS,        MethodId::EEDS,    MethodId::ExplicitEuler,
                                        MethodId::ImplicitEuler, MethodId::Trapezoidal, MethodId::RK4,
                                        MethodId::Taylor5,     MethodId::RadauIIA5};
    for (double h : steps)
        for (MethodId m : methods) out.push_back(run_cell(prob, m, T, h, ErrorMetric::MaxSum, cluster_tol));
    return out;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
    return v;
}

void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& recs) {
    os << "method,T,lambda,h,error,wall_time\n";
    for (const BenchRecord& r : recs) {
        os << method_label(r) << ',' << format_double(r.T) << ',' << format_double(r.lambda_tag) << ','
           << format_double(r.h) << ',' << format_double(r.error) << ',' << format_double(r.wall_time) << '\n';
    }
}

void write_records_json(std::ostream& os, const std::vector<BenchRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BenchRecord& r : recs) {
        arr.push_back({{"method", method_label(r)},
                       {"T", json_number(r.T)},
                       {"lambda", json_number(r.lambda_tag)},
                       {"h", json_number(r.h)},
                       {"error", json_number(r.error)},
                       {"wall_time", json_number(r.wall_time)}});
    }
    os << arr.dump(2) << '\n';
}

namespace {

double point_error(const std::function<Vec3(double)>& exact, double t, const Vec3& x) {
    return norm_inf(x - exact(t));
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const std::function<Vec3(double)>& exact) {
    os << "t,x1,x2,x3,err\n";
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        const Vec3& x = tr.states[k];
        os << format_double(tr.times[k]) << ',' << format_double(x[0]) << ',' << format_double(x[1]) << ','
           << format_double(x[2]) << ',';
        if (exact) os << format_double(point_error(exact, tr.times[k], x));
        os << '\n';
    }
}

void write_trajectory_json(std::ostream& os, const Trajectory& tr, const std::function<Vec3(double)>& exact) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        const Vec3& x = tr.states[k];
        nlohmann::json row{{"t", json_number(tr.times[k])},
                           {"x1", json_number(x[0])},
                           {"x2", json_number(x[1])},
                           {"x3", json_number(x[2])}};
        row["err"] = exact ? json_number(point_error(exact, tr.times[k], x)) : nlohmann::json(nullptr);
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << '\n';
}

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,x1,x2,x3", 0) != 0) {
        throw Error(ErrorCode::InvalidArgument, "trajectory CSV: missing header");
    }
    Trajectory tr;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 4) throw Error(ErrorCode::InvalidArgument, "trajectory CSV: short row '" + line + "'");
        tr.times.push_back(parse_double(cells[0]));
        tr.states.push_back(Vec3{{parse_double(cells[1]), parse_double(cells[2]), parse_double(cells[3])}});
    }
    return tr;
}

}  // namespace exactfd
