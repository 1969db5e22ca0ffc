#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "exactfd/baselines.hpp"
#include "exactfd/problems.hpp"

namespace exactfd {

enum class ErrorMetric {
    FinalSum,  ///< sum_i |x_N,i - x_i(T)|
    MaxSum,    ///< max_k sum_i |x_k,i - x_i(t_k)|
};

struct BenchRecord {
    MethodId method = MethodId::IEDS;
    double T = 0.0;
    double lambda_tag = 0.0;
    double h = 0.0;
    /// +inf / nan when the run diverged.
    double error = 0.0;
    double wall_time = 0.0;
    /// Quasi-linear rows: the method column reads NSFD instead of EEDS.
    bool nsfd = false;
};

/// N = T / h, rejected with GridMismatch unless integral to 1e-9 relative.
long long grid_steps(double T, double h);

/// Integrates `prob` with `m` on [0, T] and measures the metric against the
/// closed-form solution. States are streamed, never stored.
BenchRecord run_cell(const LinearProblem& prob, MethodId m, double T, double h, ErrorMetric metric,
                     double cluster_tol = kDefaultClusterTol);

struct TableRow {
    double T;
    double h;
};

struct TableSpec {
    int id = 3;
    std::vector<TableRow> rows;
    std::vector<MethodId> methods;
    ErrorMetric metric = ErrorMetric::FinalSum;
};

/// Grids of the two published error tables: 3 (example 3 with lambda = 1/T)
/// and 4 (example 4). Throws InvalidArgument for other ids.
TableSpec table_spec(int id);
LinearProblem table_problem(int id, double T);

/// Every cell, row-major in (T, h) and then method order.
std::vector<BenchRecord> run_table(int id, double cluster_tol = kDefaultClusterTol);

/// A small fixed grid for one example. Examples 1..4 use MaxSum over
/// T = 10; example 5 compares NSFD and explicit Euler at T = 10 against a
/// fine-step RK4 reference.
std::vector<BenchRecord> run_example(int example, double cluster_tol = kDefaultClusterTol);

/// Shortest round-trip decimal; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);
/// Inverse of format_double. Throws InvalidArgument on malformed input.
double parse_double(const std::string& s);

void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& recs);
void write_records_json(std::ostream& os, const std::vector<BenchRecord>& recs);

/// `t,x1,x2,x3,err`; err is the max-norm deviation from `exact` (blank
/// when no exact solution is given).
void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const std::function<Vec3(double)>& exact);
void write_trajectory_json(std::ostream& os, const Trajectory& tr, const std::function<Vec3(double)>& exact);
Trajectory read_trajectory_csv(std::istream& is);

}  // namespace exactfd
