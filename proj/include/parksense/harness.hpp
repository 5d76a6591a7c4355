#ifndef PARKSENSE_HARNESS_HPP
#define PARKSENSE_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "parksense/config.hpp"
#include "parksense/events.hpp"

namespace parksense {

/// Step-function time average of an event-indexed error series over [0, T];
/// e holds its value between consecutive events.
double time_avg_error(const std::vector<std::pair<double, double>>& series, double horizon);

/// Standard deviation of the series values weighted by holding time.
double time_weighted_std(const std::vector<std::pair<double, double>>& series, double horizon);

struct ReplicationResult {
    double mean_error = 0.0;  // e-bar
    double error_std = 0.0;   // within-replication time-weighted std of e(t)
    std::vector<std::pair<double, double>> series;
    Counters counters;
    std::uint64_t seed = 0;
    int index = 0;
};

/// RNG stream for replication `index` under `master` seed.
std::mt19937_64 replication_rng(std::uint64_t master, int index);

LotGraph make_lot(const ExperimentConfig& config);

ReplicationResult run_replication(const ExperimentConfig& config, const RoutingTable& routes,
                                  int index, bool keep_series = false);

struct SweepRow {
    PolicyId policy;
    RouteMode mode;
    double gamma = 0.0;
    int replications = 0;
    double mean_error = 0.0;
    double stderr_error = 0.0;
};

struct SweepSpec {
    std::vector<PolicyId> policies{PolicyId::Random, PolicyId::Nearest, PolicyId::MaxSatisfaction,
                                   PolicyId::NearOptimal};
    std::vector<RouteMode> modes{RouteMode::OneWay, RouteMode::TwoWay};
    std::vector<double> gammas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

/// Full policy x gamma x mode table; rows in policy-major deterministic order,
/// aggregation independent of execution order.
std::vector<SweepRow> sweep(const ExperimentConfig& config, const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace parksense

#endif
