#include "voisel/bench.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace voisel {

double ackley(double x, double y) {
    const double two_pi = 2.0 * std::numbers::pi;
    return 20.0 * std::exp(-0.2 * std::sqrt((x * x + y * y) / 2.0)) +
           std::exp((std::cos(two_pi * x) + std::cos(two_pi * y)) / 2.0);
}

ExperimentConfig ExperimentConfig::ackley_defaults() { return {}; }

ExperimentConfig ExperimentConfig::table_defaults(std::string path) {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::table;
    cfg.table_path = std::move(path);
    cfg.noise_variance = 0.25;
    cfg.dependency_variance = 0.4;
    cfg.utility = UtilityFn::tanh_scaled(4.0, 0.5);
    return cfg;
}

namespace {

int axis_count(double lo, double hi, double step, const char* axis) {
    if (!(step > 0.0)) throw std::invalid_argument("ackley.step: must be > 0");
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw std::invalid_argument(std::string("ackley.") + axis + ": invalid extent");
    const double span = (hi - lo) / step;
    if (!(span < 1e7))
        throw std::invalid_argument(std::string("ackley.") + axis + ": extent/step too large");
    const double rounded = std::round(span);
    if (std::fabs(span - rounded) > 1e-9 * std::max(1.0, span))
        throw std::invalid_argument(std::string("ackley.") + axis +
                                    ": extent is not a multiple of step");
    return int(rounded) + 1;
}

Problem problem_shell(const ExperimentConfig& cfg, GridShape shape, double step) {
    Problem p;
    p.grid_shape = shape;
    p.grid_step = step;
    p.measurement_types = {{cfg.measurement_cost, cfg.noise_variance}};
    p.utility = cfg.utility;
    p.budget = cfg.budget;
    p.dependency_variance = cfg.dependency_variance;
    p.anchor_variance = cfg.anchor_variance;
    p.anchor_mean = cfg.anchor_mean;
    return p;
}

}  // namespace

Problem make_ackley_problem(const ExperimentConfig& cfg) {
    const AckleySpec& a = cfg.ackley;
    const int nx = axis_count(a.x_min, a.x_max, a.step, "x");
    const int ny = axis_count(a.y_min, a.y_max, a.step, "y");
    Problem p = problem_shell(cfg, {ny, nx}, a.step);
    p.items.reserve(std::size_t(nx) * ny);
    p.true_values.reserve(std::size_t(nx) * ny);
    for (int r = 0; r < ny; ++r) {
        for (int c = 0; c < nx; ++c) {
            const double x = a.x_min + c * a.step;
            const double y = a.y_min + r * a.step;
            p.items.push_back({p.items.size(), x, y});
            p.true_values.push_back(ackley(x, y) - a.offset);
        }
    }
    p.validate();
    return p;
}

Problem load_table_problem(const std::string& path, const ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("table '" + path + "': cannot open");
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<double> row;
        std::string cell;
        while (ls >> cell) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size())
                throw std::runtime_error("table '" + path + "' row " + std::to_string(line_no) +
                                         " column " + std::to_string(row.size() + 1) +
                                         ": not a number: '" + cell + "'");
            row.push_back(v);
        }
        if (row.empty()) continue;  // blank line
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("table '" + path + "' row " + std::to_string(line_no) +
                                     ": expected " + std::to_string(rows.front().size()) +
                                     " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("table '" + path + "': empty");

    const int nr = int(rows.size()), nc = int(rows.front().size());
    Problem p = problem_shell(cfg, {nr, nc}, 1.0);
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) {
            // Axes scaled to 1-based unit steps, matching the parameter-grid
            // convention of the surrogate benchmark.
            p.items.push_back({p.items.size(), double(c + 1), double(r + 1)});
            p.true_values.push_back(rows[r][c]);
        }
    p.validate();
    return p;
}

Problem make_problem(const ExperimentConfig& cfg) {
    return cfg.problem == ProblemKind::ackley ? make_ackley_problem(cfg)
                                              : load_table_problem(cfg.table_path, cfg);
}

double simulate_measurement(const Problem& problem, const Candidate& candidate, Rng& rng) {
    const MeasurementType& mt = problem.measurement_types.at(candidate.type_index);
    return rng.normal(problem.true_value(candidate.item_index), std::sqrt(mt.noise_variance));
}

void ExperimentConfig::validate() const {
    if (noise_variance <= 0.0) throw std::invalid_argument("noise_variance: must be > 0");
    if (measurement_cost <= 0.0) throw std::invalid_argument("measurement_cost: must be > 0");
    if (dependency_variance <= 0.0)
        throw std::invalid_argument("dependency_variance: must be > 0");
    if (anchor_variance <= 0.0) throw std::invalid_argument("anchor_variance: must be > 0");
    if (budget < 0.0) throw std::invalid_argument("budget: must be >= 0");
    if (replications < 1) throw std::invalid_argument("replications: must be >= 1");
    if (gh_nodes < kMinGhNodes || gh_nodes > kMaxGhNodes)
        throw std::invalid_argument("gh_nodes: out of supported range");
    if (utility.kind == UtilityFn::Kind::tanh_scaled && utility.scale <= 0.0)
        throw std::invalid_argument("utility.scale: must be > 0");
    if (problem == ProblemKind::table && table_path.empty())
        throw std::invalid_argument("table_path: required for table problems");
    if (selector == Selector::rational && recompute_cost <= 0.0)
        throw std::invalid_argument("recompute_cost: must be > 0 for the rational selector");
    if (selector == Selector::random && recompute_cost <= 0.0 && random_measurements < 0)
        throw std::invalid_argument(
            "selector=random needs either recompute_cost > 0 (to pair with a rational run) "
            "or an explicit random_measurements count");
    if (problem == ProblemKind::ackley) {
        axis_count(ackley.x_min, ackley.x_max, ackley.step, "x");
        axis_count(ackley.y_min, ackley.y_max, ackley.step, "y");
    }
}

Trace run_replication(const ExperimentConfig& cfg, const Problem& problem, std::uint64_t seed) {
    const PolicyOptions opts{cfg.gh_nodes};
    switch (cfg.selector) {
        case Selector::greedy:
            return run_greedy(problem, cfg.scheme, seed, opts);
        case Selector::rational:
            return run_rational(problem, cfg.scheme, cfg.recompute_cost, seed, opts);
        case Selector::random: {
            std::size_t n;
            if (cfg.random_measurements >= 0) {
                n = std::size_t(cfg.random_measurements);
            } else {
                // Same number of measurements as the rational run at this seed.
                n = run_rational(problem, cfg.scheme, cfg.recompute_cost, seed, opts)
                        .performed.size();
            }
            return run_random(problem, n, seed, opts);
        }
    }
    throw std::logic_error("run_replication: bad selector");
}

namespace {

MetricStats aggregate(const std::vector<double>& xs) {
    MetricStats s;
    const std::size_t n = xs.size();
    for (double x : xs) s.mean += x;
    s.mean /= double(n);
    if (n > 1) {
        double acc = 0.0;
        for (double x : xs) acc += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(acc / double(n - 1));
    }
    return s;
}

}  // namespace

ExperimentStats aggregate_traces(std::span<const Trace> traces) {
    std::vector<double> reward, intrinsic, cost, recomputes;
    for (const Trace& t : traces) {
        reward.push_back(t.reward);
        intrinsic.push_back(t.intrinsic_utility);
        cost.push_back(t.total_cost);
        recomputes.push_back(double(t.recompute_count));
    }
    return {aggregate(reward), aggregate(intrinsic), aggregate(cost), aggregate(recomputes),
            int(traces.size())};
}

ExperimentStats run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const Problem problem = make_problem(cfg);
    std::vector<Trace> traces;
    traces.reserve(std::size_t(cfg.replications));
    for (int i = 0; i < cfg.replications; ++i)
        traces.push_back(run_replication(cfg, problem, cfg.base_seed + std::uint64_t(i)));
    return aggregate_traces(traces);
}

}  // namespace voisel
