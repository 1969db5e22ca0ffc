#include "exactfd/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "exactfd/baselines.hpp"
#include "exactfd/bench.hpp"
#include "exactfd/errors.hpp"
#include "exactfd/params.hpp"
#include "exactfd/problems.hpp"
#include "exactfd/scheme.hpp"
#include "exactfd/verify.hpp"

namespace exactfd {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
    try {
        return parse_double(trim(s));
    } catch (const Error&) {
        throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
    }
}

std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::optional<LinearProblem> named_problem(const std::string& name) {
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "example3") return example3(1.0);
    if (name == "example4") return example4();
    return std::nullopt;
}

struct Output {
    std::ostream* os;
    std::ofstream file;
};

std::ostream& open_output(Output& o, const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        o.os = &fallback;
    } else {
        o.file.open(path);
        if (!o.file) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
        o.os = &o.file;
    }
    return *o.os;
}

void finish_output(Output& o, const std::string& path) {
    o.os->flush();
    if (!*o.os) throw Error(ErrorCode::Io, "write failed for '" + (path.empty() ? std::string("stdout") : path) + "'");
}

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::GridMismatch: return 2;
        default: return 1;
    }
}

}  // namespace

Mat3 parse_matrix_arg(const std::string& arg) {
    if (auto m = named_matrix(arg)) return *m;
    if (arg.find(';') != std::string::npos) {
        const auto rows = split(arg, ';');
        if (rows.size() != 3) throw Error(ErrorCode::InvalidArgument, "matrix needs 3 rows: '" + arg + "'");
        Mat3 A;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto cells = split(rows[i], ',');
            if (cells.size() != 3) throw Error(ErrorCode::InvalidArgument, "matrix row needs 3 entries: '" + rows[i] + "'");
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = parse_number(cells[j]);
        }
        return A;
    }
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::InvalidArgument, "unknown matrix name or unreadable file: '" + arg + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, "'" + arg + "': " + e.what());
    }
    const auto& rows = j.contains("rows") ? j["rows"] : j;
    if (!rows.is_array() || rows.size() != 3) throw Error(ErrorCode::InvalidArgument, "'" + arg + "': expected 3 rows");
    Mat3 A;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!rows[i].is_array() || rows[i].size() != 3) {
            throw Error(ErrorCode::InvalidArgument, "'" + arg + "': each row needs 3 numbers");
        }
        for (std::size_t k = 0; k < 3; ++k) {
            if (!rows[i][k].is_number()) throw Error(ErrorCode::InvalidArgument, "'" + arg + "': non-numeric entry");
            A(i, k) = rows[i][k].get<double>();
        }
    }
    return A;
}

Vec3 parse_vec_arg(const std::string& arg) {
    const auto cells = split(arg, ',');
    if (cells.size() != 3) throw Error(ErrorCode::InvalidArgument, "vector needs 3 entries: '" + arg + "'");
    return Vec3{{parse_number(cells[0]), parse_number(cells[1]), parse_number(cells[2])}};
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact finite-difference schemes for 3x3 linear systems x' = Ax"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help");

    double cluster_tol = kDefaultClusterTol;
    std::string format = "csv";
    app.add_option("--cluster-tol", cluster_tol, "relative eigenvalue clustering tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

    // solve
    auto* solve = app.add_subcommand("solve", "integrate one system");
    solve->set_help_flag("--help", "print this help");
    std::string s_matrix, s_x0, s_scheme = "ieds", s_out;
    double s_T = 0.0, s_h = 0.0;
    long long s_N = 0;
    bool s_one_shot = false;
    solve->add_option("--matrix", s_matrix, "name, inline a,b,c;d,e,f;g,h,i or JSON file")->required();
    solve->add_option("--x0", s_x0, "initial state a,b,c (defaults to the example's)");
    solve->add_option("--scheme", s_scheme, "ieds, eeds or a baseline method");
    solve->add_option("--T", s_T, "final time")->required()->check(CLI::PositiveNumber);
    auto* opt_h = solve->add_option("--h", s_h, "step size")->check(CLI::PositiveNumber);
    auto* opt_N = solve->add_option("--N", s_N, "number of steps")->check(CLI::PositiveNumber);
    opt_h->excludes(opt_N);
    solve->add_flag("--one-shot", s_one_shot, "single step of size T");
    solve->add_option("--out", s_out, "output file (default stdout)");

    // params
    auto* params = app.add_subcommand("params", "print scheme parameters");
    params->set_help_flag("--help", "print this help");
    std::string p_matrix, p_kind = "ieds";
    double p_h = 0.0;
    params->add_option("--matrix", p_matrix, "name, inline a,b,c;d,e,f;g,h,i or JSON file")->required();
    params->add_option("--h", p_h, "step size")->required()->check(CLI::PositiveNumber);
    params->add_option("--kind", p_kind, "scheme kind (default ieds)")->check(CLI::IsMember({"ieds", "eeds"}));

    // bench
    auto* bench = app.add_subcommand("bench", "reproduce an error table or run an example");
    bench->set_help_flag("--help", "print this help");
    int b_table = 0, b_example = 0;
    std::string b_out;
    auto* opt_table = bench->add_option("--table", b_table, "error table to reproduce")->check(CLI::IsMember({3, 4}));
    auto* opt_example = bench->add_option("--example", b_example, "worked example to run")->check(CLI::Range(1, 5));
    opt_table->excludes(opt_example);
    bench->add_option("--out", b_out, "output file (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the exactness property suite");
    verify->set_help_flag("--help", "print this help");
    std::uint64_t v_seed = 1;
    int v_cases = 500;
    verify->add_option("--seed", v_seed, "generator seed");
    verify->add_option("--cases", v_cases, "random matrices; a fifth as many Jordan constructions are added")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    const bool json = format == "json";

    try {
        if (*solve) {
            const Mat3 A = parse_matrix_arg(s_matrix);
            const auto prob = named_problem(s_matrix);
            Vec3 x0;
            if (!s_x0.empty()) {
                x0 = parse_vec_arg(s_x0);
            } else if (prob) {
                x0 = prob->x0;
            } else {
                err << "solve: --x0 is required for this matrix\n";
                return 2;
            }
            const auto method = parse_method(s_scheme);
            if (!method) {
                err << "solve: unknown scheme '" << s_scheme << "'\n";
                return 2;
            }
            long long N = 1;
            if (!s_one_shot) {
                if (*opt_N) {
                    N = s_N;
                } else if (*opt_h) {
                    N = grid_steps(s_T, s_h);
                } else {
                    err << "solve: give --h, --N or --one-shot\n";
                    return 2;
                }
            }
            const double h = s_T / static_cast<double>(N);
            const TransferMatrix Q = method_transfer(A, h, *method, cluster_tol);
            Trajectory tr;
            iterate(Q, x0, N, [&](long long, double t, const Vec3& x) {
                tr.times.push_back(t);
                tr.states.push_back(x);
            }, !is_exact_scheme(*method));
            tr.times.back() = s_T;

            // Closed form for the built-in examples (with their own x0), expm otherwise.
            std::function<Vec3(double)> exact;
            if (prob && s_x0.empty()) {
                exact = prob->exact;
            } else {
                exact = [A, x0](double t) { return expm(A, t) * x0; };
            }
            Output o;
            std::ostream& os = open_output(o, s_out, out);
            if (json) {
                write_trajectory_json(os, tr, exact);
            } else {
                write_trajectory_csv(os, tr, exact);
            }
            finish_output(o, s_out);
            return 0;
        }

        if (*params) {
            const Mat3 A = parse_matrix_arg(p_matrix);
            const SpectrumClass cls = classify(eigenvalues3(A), cluster_tol);
            const SchemeKind kind = p_kind == "eeds" ? SchemeKind::Explicit : SchemeKind::Implicit;
            const SchemeParams p = make_params(cls, p_h, kind);
            const double res = condition_residual(p, cls);
            if (json) {
                nlohmann::json j{{"class", std::string(to_string(cls.kind))},
                                 {"spectrum", cls.describe()},
                                 {"kind", p_kind},
                                 {"h", p.h},
                                 {"psi", p.psi},
                                 {"psi_minus_1", p.psi_m1},
                                 {"phi", p.phi},
                                 {"theta", p.theta},
                                 {"residual", res}};
                out << j.dump(2) << '\n';
            } else {
                out << "class," << to_string(cls.kind) << '\n'
                    << "spectrum," << cls.describe() << '\n'
                    << "kind," << p_kind << '\n'
                    << "h," << g17(p.h) << '\n'
                    << "psi," << g17(p.psi) << '\n'
                    << "psi_minus_1," << g17(p.psi_m1) << '\n'
                    << "phi," << g17(p.phi) << '\n'
                    << "theta," << g17(p.theta) << '\n'
                    << "residual," << g17(res) << '\n';
            }
            return 0;
        }

        if (*bench) {
            if (!*opt_table && !*opt_example) {
                err << "bench: give --table or --example\n";
                return 2;
            }
            const auto recs = *opt_table ? run_table(b_table, cluster_tol) : run_example(b_example, cluster_tol);
            Output o;
            std::ostream& os = open_output(o, b_out, out);
            if (json) {
                write_records_json(os, recs);
            } else {
                write_records_csv(os, recs);
            }
            finish_output(o, b_out);
            return 0;
        }

        if (*verify) {
            auto cases = random_cases(v_seed, v_cases);
            auto jordan = jordan_cases(v_seed + 1, v_cases / 5);
            cases.insert(cases.end(), jordan.begin(), jordan.end());
            const VerifyReport rep = run_exactness_suite(cases, 100, cluster_tol);
            if (json) {
                nlohmann::json j{{"cases", rep.cases},
                                 {"checks", rep.checks},
                                 {"worst_relative_error", rep.worst},
                                 {"worst_case", rep.worst_label},
                                 {"failures", rep.failures}};
                out << j.dump(2) << '\n';
            } else {
                out << "cases," << rep.cases << '\n'
                    << "checks," << rep.checks << '\n'
                    << "worst_relative_error," << g17(rep.worst) << '\n'
                    << "worst_case," << rep.worst_label << '\n'
                    << "failures," << rep.failures.size() << '\n';
                for (const auto& f : rep.failures) out << "failure," << f << '\n';
            }
            return rep.ok() ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return 2;
}

}  // namespace exactfd
