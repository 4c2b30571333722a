// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv_cli/cli.hpp"

#include "fsrv/error.hpp"
#include "fsrv/fib.hpp"
#include "fsrv/format.hpp"
#include "fsrv/joint.hpp"
#include "fsrv/limits.hpp"
#include "fsrv/marginal.hpp"
#include "fsrv/seed_spec.hpp"
#include "fsrv/simulate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fsrv::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kMaxNormDefect = 1e-6;
constexpr int kMaxDensityIndex = 90;

/// Validation failure attributed to one flag.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& flag, const std::string& what)
        : std::runtime_error(flag + ": " + what) {}
};

class NormDefectError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string seeds = "exp:1";
    int n = 4;
    int k = 3;
    int n_min = 3;
    int n_max = 30;
    std::string grid;
    std::string grid_y;
    std::string method = "auto";
    std::string output = "csv";
    std::string out_path;
    std::size_t paths = 1000;
    int horizon = 30;
    std::uint64_t rng_seed = 0;
    unsigned workers = 1;
    std::string paths_csv;
    bool n_given = false;
};

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
};

template <class T>
bool parse_number(std::string_view s, T& value) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

Grid parse_grid(const std::string& flag, const std::string& text) {
    if (text.empty()) {
        throw UsageError(flag, "is required (lo:hi:points)");
    }
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
        throw UsageError(flag, "expected lo:hi:points, got '" + text + "'");
    }
    Grid g;
    const std::string_view view(text);
    if (!parse_number(view.substr(0, first), g.lo) ||
        !parse_number(view.substr(first + 1, second - first - 1), g.hi) ||
        !parse_number(view.substr(second + 1), g.points)) {
        throw UsageError(flag, "expected lo:hi:points, got '" + text + "'");
    }
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo < g.hi)) {
        throw UsageError(flag, "requires finite lo < hi");
    }
    if (g.points < 2) {
        throw UsageError(flag, "requires at least 2 points");
    }
    return g;
}

std::vector<double> grid_values(const std::string& flag, const std::string& text) {
    const Grid g = parse_grid(flag, text);
    return linspace(g.lo, g.hi, g.points);
}

void require_range(const char* flag, int value, int lo, int hi) {
    if (value < lo || value > hi) {
        throw UsageError(flag, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                   "], got " + std::to_string(value));
    }
}

FsrvModel model_from(const Options& o) {
    try {
        return parse_seed_model(o.seeds);
    } catch (const ParseError& e) {
        throw UsageError("--seeds", e.what());
    } catch (const DomainError& e) {
        throw UsageError("--seeds", e.what());
    }
}

bool is_unit_exponential(const FsrvModel& model) {
    return model.closed_form() == ClosedForm::exponential && model.exponential_rate() == 1.0;
}

/// True when the closed route is used; UsageError if it was requested but
/// does not exist.
bool use_closed(const Options& o, bool available, const std::string& why) {
    if (o.method == "closed" && !available) {
        throw UsageError("--method", "no closed form " + why);
    }
    return o.method == "closed" || (o.method == "auto" && available);
}

std::string seeds_label(const FsrvModel& m) {
    return m.seed0().describe() + "," + m.seed1().describe();
}

// Density tables.

struct Table {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    Json meta = Json::object();
    std::vector<std::pair<std::string, std::string>> trailer;
};

std::string render(const Table& t, const std::string& output) {
    std::ostringstream os;
    if (output == "json") {
        Json j = t.meta;
        auto rows = Json::array();
        for (const auto& r : t.rows) {
            Json row;
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                row[t.columns[i]] = r[i];
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        os << j.dump(2) << '\n';
        return os.str();
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << (i ? "," : "") << format_double(r[i]);
        }
        os << '\n';
    }
    for (const auto& [key, value] : t.trailer) {
        os << "# " << key << '=' << value << '\n';
    }
    return os.str();
}

Table curve_table(const std::string& kind, const DensityCurve& curve, Json meta) {
    if (!(curve.norm_defect <= kMaxNormDefect)) {
        throw NormDefectError("norm_defect " + format_double(curve.norm_defect) +
                              " exceeds " + format_double(kMaxNormDefect));
    }
    Table t;
    t.kind = kind;
    t.columns = {"x", "density"};
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
        t.rows.push_back({curve.xs[i], curve.ys[i]});
    }
    meta["norm_defect"] = curve.norm_defect;
    t.meta = std::move(meta);
    t.trailer.emplace_back("norm_defect", format_double(curve.norm_defect));
    return t;
}

Json base_meta(const std::string& command, const FsrvModel& model) {
    Json j;
    j["command"] = command;
    j["seeds"] = seeds_label(model);
    return j;
}

// Subcommands. Each returns the rendered artifact.

std::string cmd_fib(const Options& o) {
    require_range("--n", o.n, 0, kMaxFibIndex);
    const std::string value = to_string(fib(o.n));
    if (o.output == "json") {
        Json j;
        j["n"] = o.n;
        j["a_n"] = value;
        return j.dump(2) + "\n";
    }
    return "n,a_n\n" + std::to_string(o.n) + "," + value + "\n";
}

std::string cmd_pdf(const Options& o, const QuadratureConfig& cfg) {
    require_range("--n", o.n, 2, kMaxDensityIndex);
    const FsrvModel model = model_from(o);
    const auto xs = grid_values("--grid", o.grid);
    Density1D law = marginal_density(model, o.n, cfg);
    const bool closed = use_closed(o, model.closed_form().has_value(), "for these seeds");
    if (closed) {
        law.pdf = [model, n = o.n](double x) { return pdf_closed(model, n, x); };
    }
    Json meta = base_meta("pdf", model);
    meta["n"] = o.n;
    meta["method"] = closed ? "closed" : "numeric";
    return render(curve_table("pdf", tabulate(law, xs, cfg), std::move(meta)), o.output);
}

std::string cmd_moments(const Options& o) {
    require_range("--n-min", o.n_min, 1, kMaxDensityIndex);
    require_range("--n-max", o.n_max, o.n_min, kMaxDensityIndex);
    const FsrvModel model = model_from(o);
    Table t;
    t.columns = {"n", "mean", "variance"};
    for (int n = o.n_min; n <= o.n_max; ++n) {
        const Moments m = moments_xn(model, n);
        t.rows.push_back({static_cast<double>(n), m.mean, m.variance});
    }
    if (o.output == "json") {
        auto rows = Json::array();
        for (const auto& r : t.rows) {
            rows.push_back({{"n", static_cast<int>(r[0])}, {"mean", r[1]}, {"variance", r[2]}});
        }
        Json j = base_meta("moments", model);
        j["rows"] = std::move(rows);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "n,mean,variance\n";
    for (const auto& r : t.rows) {
        os << static_cast<int>(r[0]) << ',' << format_double(r[1]) << ',' << format_double(r[2])
           << '\n';
    }
    return os.str();
}

std::string cmd_ratios(const Options& o) {
    require_range("--n-min", o.n_min, 3, kMaxDensityIndex);
    require_range("--n-max", o.n_max, o.n_min, kMaxDensityIndex);
    const auto rows = ratio_diagnostics(o.n_min, o.n_max);
    if (o.output == "json") {
        auto j = Json::array();
        for (const auto& r : rows) {
            j.push_back({{"n", r.n},
                         {"max_ratio", r.max_ratio},
                         {"mode_ratio", r.mode_ratio},
                         {"mean_ratio", r.mean_ratio},
                         {"var_ratio", r.var_ratio}});
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "n,max_ratio,mode_ratio,mean_ratio,var_ratio\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.max_ratio) << ',' << format_double(r.mode_ratio)
           << ',' << format_double(r.mean_ratio) << ',' << format_double(r.var_ratio) << '\n';
    }
    return os.str();
}

std::string cmd_limit(const Options& o, const QuadratureConfig& cfg) {
    const FsrvModel model = model_from(o);
    const auto xs = grid_values("--grid", o.grid);
    Json meta = base_meta("limit", model);
    Density1D law;
    bool closed = false;
    if (o.n_given) {
        require_range("--n", o.n, 2, kMaxDensityIndex);
        law = standardized_xn_density(model, o.n, cfg);
        closed = use_closed(o, model.closed_form().has_value(), "for these seeds");
        if (closed) {
            const Standardization s = normalized_xn_law(o.n, model);
            law.pdf = [model, s, n = o.n](double y) {
                return s.sd * pdf_closed(model, n, s.mean + s.sd * y);
            };
        }
        meta["n"] = o.n;
    } else {
        const LimitLaw limit = LimitLaw::of(model);
        law = limit.density(cfg);
        const auto form = model.closed_form();
        const bool has = form == ClosedForm::exponential || form == ClosedForm::uniform;
        closed = use_closed(o, has, "for the limit law of these seeds");
        if (closed) {
            law.pdf = form == ClosedForm::exponential ? RealFn(pdf_limit_exponential_closed)
                                                      : RealFn(pdf_limit_uniform_closed);
        }
        meta["a"] = limit.a_scale();
        meta["b"] = limit.b_shift();
    }
    meta["method"] = closed ? "closed" : "numeric";
    return render(curve_table("limit", tabulate(law, xs, cfg), std::move(meta)), o.output);
}

std::string cmd_sums(const Options& o, const QuadratureConfig& cfg) {
    require_range("--n", o.n, 2, kMaxDensityIndex);
    const FsrvModel model = model_from(o);
    const auto xs = grid_values("--grid", o.grid);
    Density1D law = sum_density(model, o.n, cfg);
    const bool closed = use_closed(o, is_unit_exponential(model), "for these seeds");
    if (closed) {
        law.pdf = [n = o.n](double x) { return pdf_sum_exponential_closed(n, x); };
    }
    Json meta = base_meta("sums", model);
    meta["n"] = o.n;
    meta["method"] = closed ? "closed" : "numeric";
    return render(curve_table("sums", tabulate(law, xs, cfg), std::move(meta)), o.output);
}

std::string cmd_joint(const Options& o, const QuadratureConfig& cfg) {
    require_range("--n", o.n, 2, kMaxDensityIndex);
    require_range("--k", o.k, 1, kMaxDensityIndex - o.n);
    const FsrvModel model = model_from(o);
    const auto ys0 = grid_values("--grid", o.grid);
    const auto ys1 = grid_values("--grid-y", o.grid_y);
    const JointLaw law = JointLaw::of(o.n, o.k);
    const double defect = std::abs(joint_normalization_check(law, model, cfg) - 1.0);
    if (!(defect <= kMaxNormDefect)) {
        throw NormDefectError("norm_defect " + format_double(defect) + " exceeds " +
                              format_double(kMaxNormDefect));
    }
    Table t;
    t.columns = {"x", "y", "density"};
    for (double y0 : ys0) {
        for (double y1 : ys1) {
            t.rows.push_back({y0, y1, joint_pdf(law, model, y0, y1)});
        }
    }
    t.meta = base_meta("joint", model);
    t.meta["n"] = o.n;
    t.meta["k"] = o.k;
    t.meta["norm_defect"] = defect;
    t.trailer.emplace_back("norm_defect", format_double(defect));
    return render(t, o.output);
}

std::string cmd_predict(const Options& o, const QuadratureConfig& cfg) {
    require_range("--n", o.n, 2, kMaxDensityIndex);
    require_range("--k", o.k, 1, kMaxDensityIndex - o.n);
    const FsrvModel model = model_from(o);
    const auto xs = grid_values("--grid", o.grid);
    const bool closed =
        use_closed(o, is_unit_exponential(model) && o.n == 4 && o.k == 3, "for these seeds and n, k");
    PredictionCurve curve;
    if (closed) {
        curve.method = PredictionMethod::closed_form;
        for (double x : xs) {
            if (x > 0.0) {
                curve.xs.push_back(x);
                curve.g_values.push_back(predict_exponential_n4_k3_closed(x));
            } else {
                ++curve.skipped;
            }
        }
    } else {
        curve = prediction_curve(JointLaw::of(o.n, o.k), model, xs, cfg);
    }
    Table t;
    t.columns = {"x", "g"};
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
        t.rows.push_back({curve.xs[i], curve.g_values[i]});
    }
    t.meta = base_meta("predict", model);
    t.meta["n"] = o.n;
    t.meta["k"] = o.k;
    t.meta["method"] = closed ? "closed" : "numeric";
    t.meta["skipped"] = curve.skipped;
    t.trailer.emplace_back("skipped", std::to_string(curve.skipped));
    return render(t, o.output);
}

std::string cmd_simulate(const Options& o) {
    require_range("--horizon", o.horizon, 2, kMaxHorizon);
    if (o.paths < 1) {
        throw UsageError("--paths", "must be at least 1");
    }
    if (o.workers < 1) {
        throw UsageError("--workers", "must be at least 1");
    }
    SimulationConfig config{model_from(o), o.rng_seed, o.paths, o.horizon};
    const SimulationRun run = SimulationRun::execute(config, o.workers);
    if (!o.paths_csv.empty()) {
        std::ofstream f(o.paths_csv, std::ios::binary);
        write_paths_csv(run, f);
        if (!f) {
            throw std::ios_base::failure("cannot write " + o.paths_csv);
        }
    }
    if (o.output == "json") {
        return summary_json(run) + "\n";
    }
    std::ostringstream os;
    os << "n,mean,variance\n";
    for (const auto& s : run.steps()) {
        os << s.n << ',' << format_double(s.mean) << ',' << format_double(s.variance) << '\n';
    }
    return os.str();
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--output", o.output, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "Write to this file instead of standard output");
}

void add_seeds(CLI::App* sub, Options& o) {
    sub->add_option("--seeds", o.seeds,
                    "exp:<rate>, unif01, normal01 or table:<path>; 'a,b' for X_0 and X_1");
}

void add_method(CLI::App* sub, Options& o) {
    sub->add_option("--method", o.method, "auto, closed or numeric")
        ->check(CLI::IsMember({"auto", "closed", "numeric"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Densities, limits and simulation for random Fibonacci-type recurrences", "fsrv"};
    app.require_subcommand(1, 1);

    auto* fib_cmd = app.add_subcommand("fib", "Fibonacci number a_n");
    fib_cmd->add_option("--n", o.n, "Index")->required();
    add_common(fib_cmd, o);

    auto* pdf_cmd = app.add_subcommand("pdf", "Density of X_n on a grid");
    add_seeds(pdf_cmd, o);
    pdf_cmd->add_option("--n", o.n, "Index n >= 2")->required();
    pdf_cmd->add_option("--grid", o.grid, "lo:hi:points")->required();
    add_method(pdf_cmd, o);
    add_common(pdf_cmd, o);

    auto* mom_cmd = app.add_subcommand("moments", "Mean and variance of X_n");
    add_seeds(mom_cmd, o);
    mom_cmd->add_option("--n-min", o.n_min, "First index");
    mom_cmd->add_option("--n-max", o.n_max, "Last index");
    add_common(mom_cmd, o);

    auto* ratio_cmd = app.add_subcommand("ratios", "Mode, maximum and moment ratios, Exp(1) seeds");
    ratio_cmd->add_option("--n-min", o.n_min, "First index (>= 3)");
    ratio_cmd->add_option("--n-max", o.n_max, "Last index (<= 90)");
    add_common(ratio_cmd, o);

    auto* limit_cmd = app.add_subcommand("limit", "Density of the limit law, or of Y_n with --n");
    add_seeds(limit_cmd, o);
    auto* limit_n = limit_cmd->add_option("--n", o.n, "Standardize X_n instead of the limit");
    limit_cmd->add_option("--grid", o.grid, "lo:hi:points")->required();
    add_method(limit_cmd, o);
    add_common(limit_cmd, o);

    auto* sums_cmd = app.add_subcommand("sums", "Density of S_n = X_0 + ... + X_n");
    add_seeds(sums_cmd, o);
    sums_cmd->add_option("--n", o.n, "Index n >= 2")->required();
    sums_cmd->add_option("--grid", o.grid, "lo:hi:points")->required();
    add_method(sums_cmd, o);
    add_common(sums_cmd, o);

    auto* joint_cmd = app.add_subcommand("joint", "Joint density of (X_n, X_{n+k})");
    add_seeds(joint_cmd, o);
    joint_cmd->add_option("--n", o.n, "Index n >= 2")->required();
    joint_cmd->add_option("--k", o.k, "Lag k >= 1")->required();
    joint_cmd->add_option("--grid", o.grid, "X_n grid lo:hi:points")->required();
    joint_cmd->add_option("--grid-y", o.grid_y, "X_{n+k} grid lo:hi:points")->required();
    add_common(joint_cmd, o);

    auto* pred_cmd = app.add_subcommand("predict", "E[X_{n+k} | X_n = x] on a grid");
    add_seeds(pred_cmd, o);
    pred_cmd->add_option("--n", o.n, "Index n >= 2")->required();
    pred_cmd->add_option("--k", o.k, "Lag k >= 1")->required();
    pred_cmd->add_option("--grid", o.grid, "lo:hi:points")->required();
    add_method(pred_cmd, o);
    add_common(pred_cmd, o);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo paths and summary");
    add_seeds(sim_cmd, o);
    sim_cmd->add_option("--paths", o.paths, "Number of paths");
    sim_cmd->add_option("--horizon", o.horizon, "Last index (2..90)");
    sim_cmd->add_option("--rng-seed", o.rng_seed, "64-bit seed");
    sim_cmd->add_option("--workers", o.workers, "Worker threads");
    sim_cmd->add_option("--paths-csv", o.paths_csv, "Also write raw paths to this CSV file");
    add_common(sim_cmd, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "fsrv: " << e.what() << '\n';
        return kUsage;
    }
    o.n_given = limit_n->count() > 0;

    try {
        const QuadratureConfig cfg = QuadratureConfig::from_environment();
        std::string text;
        if (fib_cmd->parsed()) {
            text = cmd_fib(o);
        } else if (pdf_cmd->parsed()) {
            text = cmd_pdf(o, cfg);
        } else if (mom_cmd->parsed()) {
            text = cmd_moments(o);
        } else if (ratio_cmd->parsed()) {
            text = cmd_ratios(o);
        } else if (limit_cmd->parsed()) {
            text = cmd_limit(o, cfg);
        } else if (sums_cmd->parsed()) {
            text = cmd_sums(o, cfg);
        } else if (joint_cmd->parsed()) {
            text = cmd_joint(o, cfg);
        } else if (pred_cmd->parsed()) {
            text = cmd_predict(o, cfg);
        } else {
            text = cmd_simulate(o);
        }
        if (o.out_path.empty()) {
            out << text;
            out.flush();
        } else {
            std::ofstream f(o.out_path, std::ios::binary);
            f << text;
            if (!f) {
                err << "fsrv: --out: cannot write " << o.out_path << '\n';
                return kIoError;
            }
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "fsrv: " << e.what() << '\n';
        return kUsage;
    } catch (const NonConvergenceError& e) {
        err << "fsrv: quadrature did not converge: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const NormDefectError& e) {
        err << "fsrv: " << e.what() << '\n';
        return kNormDefect;
    } catch (const DomainError& e) {
        err << "fsrv: " << e.what() << '\n';
        return kUsage;
    } catch (const OverflowError& e) {
        err << "fsrv: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "fsrv: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace fsrv::cli
