#include "parksense/harness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace parksense {

double time_avg_error(const std::vector<std::pair<double, double>>& series, double horizon) {
    if (series.empty()) throw std::invalid_argument("time_avg_error: empty series");
    if (horizon <= 0.0) throw std::invalid_argument("time_avg_error: horizon must be > 0");
    double integral = 0.0;
    for (size_t k = 0; k < series.size(); ++k) {
        double t0 = series[k].first;
        double t1 = (k + 1 < series.size()) ? series[k + 1].first : horizon;
        t1 = std::min(t1, horizon);
        if (t1 > t0) integral += series[k].second * (t1 - t0);
    }
    return integral / horizon;
}

double time_weighted_std(const std::vector<std::pair<double, double>>& series, double horizon) {
    double mean = time_avg_error(series, horizon);
    double var = 0.0;
    for (size_t k = 0; k < series.size(); ++k) {
        double t0 = series[k].first;
        double t1 = (k + 1 < series.size()) ? series[k + 1].first : horizon;
        t1 = std::min(t1, horizon);
        if (t1 > t0) var += (series[k].second - mean) * (series[k].second - mean) * (t1 - t0);
    }
    return std::sqrt(var / horizon);
}

std::mt19937_64 replication_rng(std::uint64_t master, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(index), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

LotGraph make_lot(const ExperimentConfig& config) {
    if (config.lot_file) return LotGraph::from_json_file(*config.lot_file);
    return LotGraph::grid(config.aisles, config.spaces_per_aisle_side);
}

ReplicationResult run_replication(const ExperimentConfig& config, const RoutingTable& routes,
                                  int index, bool keep_series) {
    ReplicationResult r;
    r.index = index;
    r.seed = config.seed;
    auto rng = replication_rng(config.seed, index);
    BeliefState belief(routes.lot().space_count(), config.belief);
    DayResult day = run_day(config, routes, belief, rng);
    r.mean_error = time_avg_error(day.error_series, config.horizon_hours);
    r.error_std = time_weighted_std(day.error_series, config.horizon_hours);
    r.counters = day.counters;
    if (keep_series) r.series = std::move(day.error_series);
    return r;
}

namespace {

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;
};

MeanStderr summarize(const std::vector<double>& xs) {
    MeanStderr out;
    double n = static_cast<double>(xs.size());
    for (double x : xs) out.mean += x;
    out.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

std::vector<double> run_point(const ExperimentConfig& cfg, const RoutingTable& routes) {
    std::vector<double> errors(static_cast<size_t>(cfg.replications));
    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, cfg.replications));
    if (workers == 1) {
        for (int i = 0; i < cfg.replications; ++i)
            errors[static_cast<size_t>(i)] = run_replication(cfg, routes, i).mean_error;
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < cfg.replications; i += workers)
                    errors[static_cast<size_t>(i)] = run_replication(cfg, routes, i).mean_error;
            });
        }
        for (auto& th : pool) th.join();
    }
    return errors;
}

}  // namespace

std::vector<SweepRow> sweep(const ExperimentConfig& config, const SweepSpec& spec) {
    LotGraph lot = make_lot(config);
    std::vector<SweepRow> rows;
    for (PolicyId policy : spec.policies) {
        for (RouteMode mode : spec.modes) {
            RoutingTable routes(lot, mode);
            for (double gamma : spec.gammas) {
                ExperimentConfig cfg = config;
                cfg.policy = policy;
                cfg.mode = mode;
                cfg.gamma = gamma;
                auto stats = summarize(run_point(cfg, routes));
                rows.push_back(SweepRow{policy, mode, gamma, cfg.replications, stats.mean,
                                        stats.se});
            }
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "policy,route_mode,gamma,replications,mean_error,stderr\n";
    out.precision(10);
    for (const SweepRow& r : rows)
        out << to_string(r.policy) << ',' << to_string(r.mode) << ',' << r.gamma << ','
            << r.replications << ',' << r.mean_error << ',' << r.stderr_error << '\n';
    return out.str();
}

}  // namespace parksense
