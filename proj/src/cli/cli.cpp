#include "voisel/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

namespace voisel::cli {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* problem_name(ProblemKind p) {
    return p == ProblemKind::ackley ? "ackley" : "table";
}

const char* scheme_name(VoiScheme s) {
    return s == VoiScheme::myopic ? "myopic" : "blinkered";
}

const char* selector_name(Selector s) {
    switch (s) {
        case Selector::greedy: return "greedy";
        case Selector::rational: return "rational";
        case Selector::random: return "random";
    }
    return "?";
}

const char* utility_name(UtilityFn::Kind k) {
    return k == UtilityFn::Kind::identity ? "identity" : "tanh";
}

}  // namespace

std::string csv_header() {
    return "problem,scheme,selector,c_v,replications,mean_reward,sd_reward,mean_intrinsic,"
           "sd_intrinsic,mean_cost,sd_cost,mean_recomputes,sd_recomputes";
}

std::string csv_row(const ExperimentConfig& cfg, const ExperimentStats& stats) {
    std::ostringstream os;
    os << problem_name(cfg.problem) << ',' << scheme_name(cfg.scheme) << ','
       << selector_name(cfg.selector) << ',' << fmt(cfg.recompute_cost) << ','
       << stats.replications << ',' << fmt(stats.reward.mean) << ',' << fmt(stats.reward.sd)
       << ',' << fmt(stats.intrinsic.mean) << ',' << fmt(stats.intrinsic.sd) << ','
       << fmt(stats.cost.mean) << ',' << fmt(stats.cost.sd) << ',' << fmt(stats.recomputes.mean)
       << ',' << fmt(stats.recomputes.sd);
    return os.str();
}

std::string effective_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[run]\n";
    os << "problem=" << problem_name(cfg.problem) << '\n';
    if (!cfg.table_path.empty()) os << "table=\"" << cfg.table_path << "\"\n";
    os << "x-min=" << fmt(cfg.ackley.x_min) << '\n'
       << "x-max=" << fmt(cfg.ackley.x_max) << '\n'
       << "y-min=" << fmt(cfg.ackley.y_min) << '\n'
       << "y-max=" << fmt(cfg.ackley.y_max) << '\n'
       << "step=" << fmt(cfg.ackley.step) << '\n'
       << "offset=" << fmt(cfg.ackley.offset) << '\n'
       << "noise-variance=" << fmt(cfg.noise_variance) << '\n'
       << "cost=" << fmt(cfg.measurement_cost) << '\n'
       << "dependency-variance=" << fmt(cfg.dependency_variance) << '\n'
       << "budget=" << fmt(cfg.budget) << '\n'
       << "anchor-variance=" << fmt(cfg.anchor_variance) << '\n'
       << "anchor-mean=" << fmt(cfg.anchor_mean) << '\n'
       << "utility=" << utility_name(cfg.utility.kind) << '\n'
       << "utility-scale=" << fmt(cfg.utility.scale) << '\n'
       << "utility-shift=" << fmt(cfg.utility.shift) << '\n'
       << "scheme=" << scheme_name(cfg.scheme) << '\n'
       << "selector=" << selector_name(cfg.selector) << '\n';
    if (cfg.recompute_cost > 0.0) os << "cv=" << fmt(cfg.recompute_cost) << '\n';
    os << "replications=" << cfg.replications << '\n'
       << "seed=" << cfg.base_seed << '\n';
    if (cfg.random_measurements >= 0) os << "random-n=" << cfg.random_measurements << '\n';
    os << "gh-nodes=" << cfg.gh_nodes << '\n';
    return os.str();
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const ExperimentStats stats = run_experiment(cfg);
        out << csv_header() << '\n' << csv_row(cfg, stats) << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.cv_values.empty()) throw std::invalid_argument("cv values: none given");
        for (double cv : spec.cv_values)
            if (cv <= 0.0) throw std::invalid_argument("cv values: must be > 0");
        if (spec.selectors.empty()) throw std::invalid_argument("selectors: none given");

        ExperimentConfig base = spec.base;
        const Problem problem = make_problem(base);

        const bool wants_greedy = std::count(spec.selectors.begin(), spec.selectors.end(),
                                             Selector::greedy) > 0;
        const bool wants_rational = std::count(spec.selectors.begin(), spec.selectors.end(),
                                               Selector::rational) > 0;
        const bool wants_random = std::count(spec.selectors.begin(), spec.selectors.end(),
                                             Selector::random) > 0;

        // Greedy ignores c_V; compute once and repeat the metrics per row.
        ExperimentStats greedy_stats{};
        if (wants_greedy) {
            ExperimentConfig g = base;
            g.selector = Selector::greedy;
            g.recompute_cost = 0.0;
            std::vector<Trace> traces;
            for (int i = 0; i < g.replications; ++i)
                traces.push_back(
                    run_greedy(problem, g.scheme, g.base_seed + std::uint64_t(i),
                               PolicyOptions{g.gh_nodes}));
            greedy_stats = aggregate_traces(traces);
        }

        out << csv_header() << '\n';
        for (double cv : spec.cv_values) {
            // The rational traces double as the pairing source for random.
            std::vector<Trace> rational_traces;
            if (wants_rational || wants_random) {
                for (int i = 0; i < base.replications; ++i)
                    rational_traces.push_back(run_rational(problem, base.scheme, cv,
                                                           base.base_seed + std::uint64_t(i),
                                                           PolicyOptions{base.gh_nodes}));
            }
            for (Selector sel : spec.selectors) {
                ExperimentConfig row_cfg = base;
                row_cfg.selector = sel;
                row_cfg.recompute_cost = cv;
                ExperimentStats stats;
                if (sel == Selector::greedy) {
                    stats = greedy_stats;
                } else if (sel == Selector::rational) {
                    stats = aggregate_traces(rational_traces);
                } else {
                    std::vector<Trace> traces;
                    for (int i = 0; i < base.replications; ++i) {
                        const std::uint64_t seed = base.base_seed + std::uint64_t(i);
                        const std::size_t n = base.random_measurements >= 0
                                                  ? std::size_t(base.random_measurements)
                                                  : rational_traces[std::size_t(i)].performed.size();
                        traces.push_back(run_random(problem, n, seed,
                                                    PolicyOptions{base.gh_nodes}));
                    }
                    stats = aggregate_traces(traces);
                }
                out << csv_row(row_cfg, stats) << '\n';
            }
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

namespace {

struct ParsedArgs {
    ExperimentConfig cfg;
    SweepSpec sweep;
    bool is_sweep = false;
    bool print_config = false;
};

// Options whose defaults depend on the problem kind are parsed through NaN
// sentinels and resolved afterwards.
struct RawFields {
    double noise_variance = std::nan("");
    double dependency_variance = std::nan("");
    double utility_scale = std::nan("");
    double utility_shift = std::nan("");
};

void add_common_options(CLI::App* cmd, ExperimentConfig& cfg, RawFields& raw,
                        std::string& problem, std::string& utility, std::string& scheme) {
    cmd->fallthrough(true);  // lets --config reach the parent app
    cmd->add_option("--problem", problem, "Problem kind: ackley | table")
        ->check(CLI::IsMember({"ackley", "table"}));
    cmd->add_option("--table", cfg.table_path, "Path to a numeric grid file (table problems)");
    cmd->add_option("--x-min", cfg.ackley.x_min, "Ackley grid: smallest x");
    cmd->add_option("--x-max", cfg.ackley.x_max, "Ackley grid: largest x");
    cmd->add_option("--y-min", cfg.ackley.y_min, "Ackley grid: smallest y");
    cmd->add_option("--y-max", cfg.ackley.y_max, "Ackley grid: largest y");
    cmd->add_option("--step", cfg.ackley.step, "Ackley grid step along each axis")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--offset", cfg.ackley.offset,
                    "Subtracted from A(x,y) to form the true item values");
    cmd->add_option("--noise-variance", raw.noise_variance,
                    "Measurement noise variance sigma_m^2")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cost", cfg.measurement_cost, "Measurement cost c_m")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dependency-variance", raw.dependency_variance,
                    "Grid neighbor dependency variance sigma_w^2")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget", cfg.budget, "Measurement budget C")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--anchor-variance", cfg.anchor_variance,
                    "Prior anchor variance sigma_0^2")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--anchor-mean", cfg.anchor_mean, "Prior mean mu_0");
    cmd->add_option("--utility", utility, "Utility function: identity | tanh")
        ->check(CLI::IsMember({"identity", "tanh"}));
    cmd->add_option("--utility-scale", raw.utility_scale, "tanh utility scale a");
    cmd->add_option("--utility-shift", raw.utility_shift, "tanh utility shift b");
    cmd->add_option("--scheme", scheme, "VOI scheme: myopic | blinkered")
        ->check(CLI::IsMember({"myopic", "blinkered"}));
    cmd->add_option("--cv", cfg.recompute_cost, "VOI recomputation cost c_V")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--replications", cfg.replications, "Independent runs to average")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.base_seed, "Base seed; replication i uses seed + i");
    cmd->add_option("--random-n", cfg.random_measurements,
                    "Explicit measurement count for the random selector")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--gh-nodes", cfg.gh_nodes, "Gauss-Hermite node count")
        ->check(CLI::Range(kMinGhNodes, kMaxGhNodes));
}

void resolve_config(ExperimentConfig& cfg, const RawFields& raw, const std::string& problem,
                    const std::string& utility, const std::string& scheme) {
    cfg.problem = problem == "table" ? ProblemKind::table : ProblemKind::ackley;
    const bool table = cfg.problem == ProblemKind::table;
    cfg.noise_variance =
        std::isnan(raw.noise_variance) ? (table ? 0.25 : 0.5) : raw.noise_variance;
    cfg.dependency_variance =
        std::isnan(raw.dependency_variance) ? (table ? 0.4 : 0.5) : raw.dependency_variance;
    cfg.utility.kind =
        utility == "identity" ? UtilityFn::Kind::identity : UtilityFn::Kind::tanh_scaled;
    cfg.utility.scale = std::isnan(raw.utility_scale) ? (table ? 4.0 : 2.0) : raw.utility_scale;
    cfg.utility.shift = std::isnan(raw.utility_shift) ? (table ? 0.5 : 0.0) : raw.utility_shift;
    cfg.scheme = scheme == "blinkered" ? VoiScheme::blinkered : VoiScheme::myopic;
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Budget-constrained measurement selection with selective VOI recomputation"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Key=value file with a [run] or [sweep] section per subcommand");

    ParsedArgs parsed;
    RawFields raw;
    std::string problem = "ackley", utility = "tanh", scheme = "myopic", selector = "greedy";

    CLI::App* run = app.add_subcommand("run", "Run one configuration; CSV row on stdout");
    add_common_options(run, parsed.cfg, raw, problem, utility, scheme);
    run->add_option("--selector", selector, "Selector: greedy | rational | random")
        ->check(CLI::IsMember({"greedy", "rational", "random"}));
    run->add_flag("--print-config", parsed.print_config,
                  "Print the effective configuration instead of running");

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep c_V across selectors; CSV on stdout");
    add_common_options(sweep, parsed.cfg, raw, problem, utility, scheme);
    double cv_min = 0.0, cv_max = 0.0;
    int cv_count = 8;
    std::vector<double> cv_list;
    std::vector<std::string> selector_list{"greedy", "rational", "random"};
    sweep->add_option("--cv-min", cv_min, "Smallest swept c_V (default 1e-5 * cost)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--cv-max", cv_max, "Largest swept c_V (default 1e-1 * cost)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--cv-count", cv_count, "Number of log-spaced c_V points")
        ->check(CLI::Range(2, 1000));
    sweep->add_option("--cv-list", cv_list, "Explicit c_V values (overrides the range)");
    sweep->add_option("--selectors", selector_list,
                      "Selectors to compare (subset of greedy,rational,random)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::stringstream out_buf, err_buf;
        const int code = app.exit(e, out_buf, err_buf);
        out << out_buf.str();
        err << err_buf.str();
        return code;
    }

    resolve_config(parsed.cfg, raw, problem, utility, scheme);

    if (run->parsed()) {
        parsed.cfg.selector = selector == "rational" ? Selector::rational
                              : selector == "random" ? Selector::random
                                                     : Selector::greedy;
        if (parsed.print_config) {
            try {
                parsed.cfg.validate();
            } catch (const std::exception& e) {
                err << "error: " << e.what() << '\n';
                return 1;
            }
            out << effective_config(parsed.cfg);
            return 0;
        }
        return cmd_run(parsed.cfg, out, err);
    }

    // sweep
    parsed.sweep.base = parsed.cfg;
    if (!cv_list.empty()) {
        parsed.sweep.cv_values = cv_list;
    } else {
        const double lo = cv_min > 0.0 ? cv_min : 1e-5 * parsed.cfg.measurement_cost;
        const double hi = cv_max > 0.0 ? cv_max : 1e-1 * parsed.cfg.measurement_cost;
        if (hi <= lo) {
            err << "error: cv-max: must exceed cv-min\n";
            return 1;
        }
        for (int i = 0; i < cv_count; ++i) {
            const double f = cv_count == 1 ? 0.0 : double(i) / (cv_count - 1);
            parsed.sweep.cv_values.push_back(lo * std::pow(hi / lo, f));
        }
    }
    for (const std::string& s : selector_list) {
        if (s == "greedy")
            parsed.sweep.selectors.push_back(Selector::greedy);
        else if (s == "rational")
            parsed.sweep.selectors.push_back(Selector::rational);
        else if (s == "random")
            parsed.sweep.selectors.push_back(Selector::random);
        else {
            err << "error: selectors: unknown selector '" << s << "'\n";
            return 1;
        }
    }
    // Validate once with a selector that exercises the c_V requirements.
    try {
        ExperimentConfig probe = parsed.sweep.base;
        probe.selector = Selector::greedy;
        probe.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return cmd_sweep(parsed.sweep, out, err);
}

}  // namespace voisel::cli
