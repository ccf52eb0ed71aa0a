#include "cli_app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "cpx/report.hpp"
#include "cpx/stats.hpp"

namespace cpx {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitParam = 3;
constexpr int kExitResource = 4;

// The continuous approximations assume the sample size is already in the
// asymptotic regime; below this floor the report carries a warning.
constexpr std::size_t kSmallSampleFloor = 30;

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<double> read_observations(const std::string& path, bool skip_header,
                                      std::vector<std::string>& flags) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && skip_header) {
            flags.push_back("header skipped: " + line);
            continue;
        }
        // trim whitespace; blank lines are ignored
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw InputError("non-numeric value at line " + std::to_string(line_no) + ": '" +
                             token + "'");
        }
    }
    if (values.empty()) throw InputError("input file has no observations: " + path);
    if (values.size() < 2) throw InputError("need at least 2 observations, got 1");
    return values;
}

void emit_report(const RunReport& report, std::ostream& out, const std::string& out_path) {
    if (out_path.empty()) {
        out << report.dump();
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot open output file: " + out_path);
    f << report.dump();
}

// ---- stat ------------------------------------------------------------------

struct StatArgs {
    std::string input;
    std::string kind = "all";
    std::optional<double> mu0;
    std::optional<double> delta;
    bool skip_header = false;
    std::string out_path;
};

json stat_with_pvalue(StatKind kind, const ObservationSeries& series, const HypothesisParams& h,
                      std::vector<std::string>& flags) {
    StatReport rep;
    switch (kind) {
        case StatKind::Z1: rep = z1(series, h); break;
        case StatKind::Z2: rep = z2(series, h); break;
        case StatKind::Z3: rep = z3(series, h); break;
        case StatKind::Z4: rep = z4(series); break;
    }
    json j = to_json(rep);
    if (h.delta) {
        try {
            TailApprox tail;
            if (kind == StatKind::Z4) {
                tail = p4_tail(rep.value);
            } else {
                const auto q = discrete_to_continuous(series.m(), *h.delta, rep.value, kind);
                switch (kind) {
                    case StatKind::Z1: tail = p1_fixed(q); break;
                    case StatKind::Z2: tail = p2_fixed(q); break;
                    case StatKind::Z3: tail = p3_fixed(q); break;
                    default: break;
                }
            }
            j["p_value"] = to_json(tail);
            if (tail.pre_asymptotic) {
                flags.push_back("pre-asymptotic: " + to_string(kind) + " approximation exceeds 1");
            }
        } catch (const ParamError& e) {
            j["p_value"] = nullptr;
            flags.push_back(to_string(kind) + " p-value unavailable: " + std::string(e.what()));
        }
    } else if (kind == StatKind::Z4) {
        try {
            const TailApprox tail = p4_tail(rep.value);
            j["p_value"] = to_json(tail);
            if (tail.pre_asymptotic) flags.push_back("pre-asymptotic: z4 approximation exceeds 1");
        } catch (const ParamError& e) {
            j["p_value"] = nullptr;
            flags.push_back("z4 p-value unavailable: " + std::string(e.what()));
        }
    }
    return j;
}

int cmd_stat(const StatArgs& a, std::ostream& out) {
    RunReport report;
    report.command = "stat";
    const auto values = read_observations(a.input, a.skip_header, report.flags);
    ObservationSeries series(std::move(values));
    HypothesisParams h{a.mu0, a.delta};

    report.inputs = {{"input", a.input}, {"kind", a.kind}, {"m", series.m()}};
    if (a.mu0) report.inputs["mu0"] = *a.mu0;
    if (a.delta) report.inputs["delta"] = *a.delta;

    std::vector<StatKind> kinds;
    if (a.kind == "all") {
        if (h.mu0) {
            kinds.push_back(StatKind::Z1);
        } else {
            report.flags.push_back("z1 skipped: mu0 not given");
        }
        if (h.delta) {
            kinds.insert(kinds.end(), {StatKind::Z2, StatKind::Z3});
        } else {
            report.flags.push_back("z2, z3 skipped: delta not given");
        }
        kinds.push_back(StatKind::Z4);
    } else if (a.kind == "z1") {
        kinds = {StatKind::Z1};
    } else if (a.kind == "z2") {
        kinds = {StatKind::Z2};
    } else if (a.kind == "z3") {
        kinds = {StatKind::Z3};
    } else if (a.kind == "z4") {
        kinds = {StatKind::Z4};
    } else {
        throw ParamError("unknown statistic kind: " + a.kind);
    }

    if (h.delta && series.m() < kSmallSampleFloor) {
        report.flags.push_back("pre-asymptotic: m < " + std::to_string(kSmallSampleFloor) +
                               ", the continuous approximation is unreliable");
    }

    json stats = json::array();
    for (StatKind k : kinds) stats.push_back(stat_with_pvalue(k, series, h, report.flags));
    report.results["stats"] = stats;
    emit_report(report, out, a.out_path);
    return kExitOk;
}

// ---- pvalue ----------------------------------------------------------------

struct PvalueArgs {
    std::string kind;
    std::optional<double> c, d, u;
    std::string out_path;
};

double require_flag(const std::optional<double>& v, const char* name) {
    if (!v) throw ParamError(std::string("missing required option --") + name);
    return *v;
}

TailApprox dispatch_pvalue(const std::string& kind, const std::optional<double>& c,
                           const std::optional<double>& d, const std::optional<double>& u) {
    if (kind == "p1") return p1_fixed({require_flag(c, "c"), require_flag(d, "d"), require_flag(u, "u")});
    if (kind == "p2") return p2_fixed({require_flag(c, "c"), require_flag(d, "d"), require_flag(u, "u")});
    if (kind == "p3") return p3_fixed({require_flag(c, "c"), require_flag(d, "d"), require_flag(u, "u")});
    if (kind == "p4") return p4_tail(require_flag(d, "d"));
    if (kind == "free2") return p2_free_delta(c.value_or(0.0), require_flag(u, "u"));
    if (kind == "free3") return p3_free_delta(c.value_or(0.0), require_flag(u, "u"));
    throw ParamError("unknown p-value kind: " + kind);
}

int cmd_pvalue(const PvalueArgs& a, std::ostream& out) {
    RunReport report;
    report.command = "pvalue";
    report.inputs["kind"] = a.kind;
    if (a.c) report.inputs["c"] = *a.c;
    if (a.d) report.inputs["d"] = *a.d;
    if (a.u) report.inputs["u"] = *a.u;
    const TailApprox tail = dispatch_pvalue(a.kind, a.c, a.d, a.u);
    if (tail.pre_asymptotic) report.flags.push_back("pre-asymptotic: value > 1");
    report.results = to_json(tail);
    emit_report(report, out, a.out_path);
    return kExitOk;
}

// ---- constants -------------------------------------------------------------

struct ConstantsArgs {
    std::string kind;
    double alpha = 1.0;
    std::optional<double> lambda;
    std::optional<double> lambda1;
    std::optional<double> step;
    std::int64_t reps = 10000;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string estimator = "shift";
    double b_over_a = 0.0;
    double c_over_sqrt_a = 0.0;
    std::string out_path;
};

int cmd_constants(const ConstantsArgs& a, std::ostream& out) {
    RunReport report;
    report.command = "constants";
    const std::uint64_t seed = a.seed ? *a.seed : entropy_seed();
    report.seed = seed;
    // rougher paths need a finer default grid
    const double step = a.step ? *a.step : (a.alpha >= 1.0 ? 0.01 : 0.002);

    RefinedEstimate est;
    if (a.kind == "H") {
        HOptions opt;
        opt.alpha = a.alpha;
        opt.lambda = a.lambda.value_or(8.0);
        opt.step = step;
        opt.n_rep = a.reps;
        opt.seed = seed;
        opt.threads = a.threads;
        if (a.estimator == "shift") {
            opt.kind = ConstantKind::HShift;
        } else if (a.estimator == "rate") {
            opt.kind = ConstantKind::HRate;
            report.flags.push_back(
                "heavy-tailed estimator: the rate form's mean is carried by rare large paths");
        } else if (a.estimator == "lambda") {
            opt.kind = ConstantKind::HOfLambda;
        } else {
            throw ParamError("unknown estimator: " + a.estimator);
        }
        est = estimate_H(opt);
        report.inputs = {{"kind", a.kind},       {"alpha", a.alpha}, {"lambda", opt.lambda},
                         {"step", step},         {"reps", a.reps},   {"estimator", a.estimator},
                         {"threads", a.threads}};
    } else if (a.kind == "P" || a.kind == "Q") {
        PQOptions opt;
        opt.alpha = a.alpha;
        opt.lambda = a.lambda.value_or(4.0);
        opt.lambda1 = a.lambda1.value_or(2.0);
        opt.step = step;
        opt.n_rep = a.reps;
        opt.seed = seed;
        opt.threads = a.threads;
        opt.b_over_a = a.b_over_a;
        opt.c_over_sqrt_a = a.c_over_sqrt_a;
        est = a.kind == "P" ? estimate_P(opt) : estimate_Q(opt);
        report.inputs = {{"kind", a.kind},         {"alpha", a.alpha}, {"lambda", opt.lambda},
                         {"lambda1", opt.lambda1}, {"step", step},     {"reps", a.reps},
                         {"threads", a.threads}};
        if (a.kind == "P") {
            report.inputs["b_over_a"] = a.b_over_a;
            report.inputs["c_over_sqrt_a"] = a.c_over_sqrt_a;
        }
    } else {
        throw ParamError("unknown constants kind: " + a.kind);
    }

    report.results = {{"coarse", to_json(est.coarse)}, {"fine", to_json(est.fine)}};
    emit_report(report, out, a.out_path);
    return kExitOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string kind;
    std::optional<double> c, d, u;
    std::int64_t grid = 2000;
    std::int64_t reps = 10000;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out_path;
};

FieldKind parse_field_kind(const std::string& kind, const std::optional<double>& c,
                           const std::optional<double>& d) {
    FieldKind fk;
    if (kind == "p1") {
        fk.tag = FieldKind::Tag::P1;
        fk.c = require_flag(c, "c");
        fk.d = require_flag(d, "d");
    } else if (kind == "p2") {
        fk.tag = FieldKind::Tag::P2;
        fk.c = require_flag(c, "c");
        fk.d = require_flag(d, "d");
    } else if (kind == "p3") {
        fk.tag = FieldKind::Tag::P3;
        fk.c = require_flag(c, "c");
        fk.d = require_flag(d, "d");
    } else if (kind == "p4") {
        fk.tag = FieldKind::Tag::P4;
    } else if (kind == "free2") {
        fk.tag = FieldKind::Tag::Free2;
        fk.c = c.value_or(0.0);
    } else if (kind == "free3") {
        fk.tag = FieldKind::Tag::Free3;
        fk.c = c.value_or(0.0);
    } else {
        throw ParamError("unknown field kind: " + kind);
    }
    fk.validate();
    return fk;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    RunReport report;
    report.command = "simulate";
    const FieldKind fk = parse_field_kind(a.kind, a.c, a.d);
    const bool p4 = fk.tag == FieldKind::Tag::P4;
    const double u_or_d = p4 ? require_flag(a.d, "d") : require_flag(a.u, "u");

    const std::uint64_t seed = a.seed ? *a.seed : entropy_seed();
    report.seed = seed;
    if (a.grid < 100) report.flags.push_back("coarse grid: grid_m below the recommended 100");
    if (a.reps < 1000) report.flags.push_back("few replicates: reps below the recommended 1000");

    SimOptions opt{a.grid, a.reps, seed, a.threads};
    const TailEstimate est = simulate_sup(fk, u_or_d, opt);

    report.inputs = {{"kind", a.kind}, {"grid", a.grid}, {"reps", a.reps}, {"threads", a.threads}};
    if (a.c) report.inputs["c"] = *a.c;
    if (a.d) report.inputs["d"] = *a.d;
    if (a.u) report.inputs["u"] = *a.u;
    report.results = to_json(est);
    try {
        TailApprox analytic;
        switch (fk.tag) {
            case FieldKind::Tag::P1: analytic = p1_fixed({fk.c, fk.d, u_or_d}); break;
            case FieldKind::Tag::P2: analytic = p2_fixed({fk.c, fk.d, u_or_d}); break;
            case FieldKind::Tag::P3: analytic = p3_fixed({fk.c, fk.d, u_or_d}); break;
            case FieldKind::Tag::P4: analytic = p4_tail(u_or_d); break;
            case FieldKind::Tag::Free2: analytic = p2_free_delta(fk.c, u_or_d); break;
            case FieldKind::Tag::Free3: analytic = p3_free_delta(fk.c, u_or_d); break;
        }
        report.results["analytic"] = analytic.value;
        if (analytic.pre_asymptotic) report.flags.push_back("pre-asymptotic: analytic value > 1");
    } catch (const ParamError&) {
        report.results["analytic"] = nullptr;
    }
    emit_report(report, out, a.out_path);
    return kExitOk;
}

// ---- curve -----------------------------------------------------------------

struct CurveArgs {
    std::string kind;
    std::optional<double> c, d;
    double u_min = 1.0;
    double u_max = 3.0;
    int points = 0;
    std::int64_t grid = 2000;
    std::int64_t reps = 0;  // 0: analytic-only table
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out_path;
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
    if (a.points < 2) throw ParamError("curve needs at least 2 points");
    if (!(a.u_min < a.u_max)) throw ParamError("curve requires u_min < u_max");
    const FieldKind fk = parse_field_kind(a.kind, a.c, a.d);

    std::vector<double> grid_u(static_cast<std::size_t>(a.points));
    for (int i = 0; i < a.points; ++i) {
        grid_u[i] = a.u_min + (a.u_max - a.u_min) * static_cast<double>(i) /
                                  static_cast<double>(a.points - 1);
    }

    RunReport report;
    report.command = "curve";
    report.inputs = {{"kind", a.kind},   {"u_min", a.u_min}, {"u_max", a.u_max},
                     {"points", a.points}, {"reps", a.reps}};
    if (a.c) report.inputs["c"] = *a.c;
    if (a.d) report.inputs["d"] = *a.d;

    std::ostringstream csv;
    csv << std::setprecision(17);
    json rows = json::array();
    if (a.reps > 0) {
        const std::uint64_t seed = a.seed ? *a.seed : entropy_seed();
        report.seed = seed;
        report.inputs["grid"] = a.grid;
        const auto study = convergence_study(fk, grid_u, {a.grid, a.reps, seed, a.threads});
        csv << "u,analytic,empirical\n";
        for (const auto& row : study) {
            csv << row.threshold << "," << row.analytic << "," << row.p_hat << "\n";
            rows.push_back(to_json(row));
        }
    } else {
        csv << "u,analytic\n";
        for (double u : grid_u) {
            const double v = [&] {
                switch (fk.tag) {
                    case FieldKind::Tag::P1: return p1_fixed({fk.c, fk.d, u}).value;
                    case FieldKind::Tag::P2: return p2_fixed({fk.c, fk.d, u}).value;
                    case FieldKind::Tag::P3: return p3_fixed({fk.c, fk.d, u}).value;
                    case FieldKind::Tag::P4: return p4_tail(u).value;
                    case FieldKind::Tag::Free2: return p2_free_delta(fk.c, u).value;
                    case FieldKind::Tag::Free3: return p3_free_delta(fk.c, u).value;
                }
                throw ParamError("unknown field kind");
            }();
            csv << u << "," << v << "\n";
            rows.push_back(json{{"threshold", u}, {"analytic", v}});
        }
    }
    report.results["rows"] = rows;

    if (!a.out_path.empty()) {
        std::ofstream f(a.out_path);
        if (!f) throw InputError("cannot open output file: " + a.out_path);
        f << csv.str();
        report.results["csv"] = a.out_path;
        out << report.dump();
    } else {
        out << csv.str();
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"change-point statistics, asymptotic p-values and Monte Carlo validation"};
    app.require_subcommand(1);

    StatArgs sa;
    auto* stat = app.add_subcommand("stat", "compute Z1-Z4 from a data file");
    stat->add_option("--input", sa.input, "one observation per line")->required();
    stat->add_option("--kind", sa.kind, "z1|z2|z3|z4|all");
    stat->add_option("--mu0", sa.mu0, "baseline mean (required for z1)");
    stat->add_option("--delta", sa.delta, "mean shift delta > 0");
    stat->add_flag("--skip-header", sa.skip_header, "skip the first line");
    stat->add_option("--out", sa.out_path, "write the report to a file");

    PvalueArgs pa;
    auto* pvalue = app.add_subcommand("pvalue", "closed-form asymptotic p-value approximations");
    pvalue->add_option("--kind", pa.kind, "p1|p2|p3|p4|free2|free3")->required();
    pvalue->add_option("--c", pa.c, "trend coefficient");
    pvalue->add_option("--d", pa.d, "threshold coefficient");
    pvalue->add_option("--u", pa.u, "scale u");
    pvalue->add_option("--out", pa.out_path, "write the report to a file");

    ConstantsArgs ca;
    auto* constants = app.add_subcommand("constants", "Monte Carlo limit-constant estimation");
    constants->add_option("--kind", ca.kind, "H|P|Q")->required();
    constants->add_option("--alpha", ca.alpha, "variance exponent in (0,2]")->required();
    constants->add_option("--lambda", ca.lambda, "horizon (default 8 for H, 4 for P/Q)");
    constants->add_option("--lambda1", ca.lambda1, "lag window for P/Q (default 2)");
    constants->add_option("--step", ca.step, "grid step (default 0.01, 0.002 for alpha < 1)");
    constants->add_option("--reps", ca.reps, "replicates");
    constants->add_option("--seed", ca.seed, "64-bit seed (default: system entropy)");
    constants->add_option("--threads", ca.threads, "worker threads (0 = available parallelism)");
    constants->add_option("--estimator", ca.estimator, "H estimator: shift|rate|lambda");
    constants->add_option("--b-over-a", ca.b_over_a, "P penalty coefficient b/a");
    constants->add_option("--c-over-sqrt-a", ca.c_over_sqrt_a, "P linear penalty (alpha = 2)");
    constants->add_option("--out", ca.out_path, "write the report to a file");

    SimulateArgs ma;
    auto* simulate = app.add_subcommand("simulate", "Brownian-field supremum tail frequencies");
    simulate->add_option("--kind", ma.kind, "p1|p2|p3|p4|free2|free3")->required();
    simulate->add_option("--c", ma.c, "trend coefficient");
    simulate->add_option("--d", ma.d, "threshold coefficient");
    simulate->add_option("--u", ma.u, "scale u (threshold for free kinds)");
    simulate->add_option("--grid", ma.grid, "path discretization points");
    simulate->add_option("--reps", ma.reps, "replicates");
    simulate->add_option("--seed", ma.seed, "64-bit seed (default: system entropy)");
    simulate->add_option("--threads", ma.threads, "worker threads (0 = available parallelism)");
    simulate->add_option("--out", ma.out_path, "write the report to a file");

    CurveArgs cu;
    auto* curve = app.add_subcommand("curve", "emit threshold-vs-p tables for plotting");
    curve->add_option("--kind", cu.kind, "p1|p2|p3|p4|free2|free3")->required();
    curve->add_option("--c", cu.c, "trend coefficient");
    curve->add_option("--d", cu.d, "threshold coefficient");
    curve->add_option("--u-min", cu.u_min, "lowest threshold")->required();
    curve->add_option("--u-max", cu.u_max, "highest threshold")->required();
    curve->add_option("--points", cu.points, "number of grid points")->required();
    curve->add_option("--grid", cu.grid, "path discretization for the empirical column");
    curve->add_option("--reps", cu.reps, "replicates for the empirical column (0 = analytic only)");
    curve->add_option("--seed", cu.seed, "64-bit seed");
    curve->add_option("--threads", cu.threads, "worker threads");
    curve->add_option("--out", cu.out_path, "write the CSV table to a file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.name("cpx");
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitParam;
    }

    try {
        if (stat->parsed()) return cmd_stat(sa, out);
        if (pvalue->parsed()) return cmd_pvalue(pa, out);
        if (constants->parsed()) return cmd_constants(ca, out);
        if (simulate->parsed()) return cmd_simulate(ma, out);
        if (curve->parsed()) return cmd_curve(cu, out);
        err << "error: no subcommand given\n";
        return kExitParam;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ParamError& e) {
        err << "parameter error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitResource;
    }
}

}  // namespace cpx
