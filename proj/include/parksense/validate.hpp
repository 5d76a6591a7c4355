#ifndef PARKSENSE_VALIDATE_HPP
#define PARKSENSE_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "parksense/config.hpp"
#include "parksense/harness.hpp"

namespace parksense {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool informational = false;  // reported, not gating
    std::string detail;
};

/// Bayes update via odds ratios: posterior odds = prior odds x likelihood
/// ratio. Independent route for cross-checking posterior_update.
double odds_ratio_posterior(double p, Measurement obs, const SensorModel& model);

/// Stationary blocking probability of M/M/s/(s+q) from the birth-death
/// balance equations.
double birth_death_blocking(double lambda, double mu, int servers, int queue_capacity);

/// posterior_update vs the odds-ratio oracle over a 1,001-point prior grid.
/// `oracle_perturbation` shifts the oracle's p_hit (test canary).
CheckResult check_bayes_grid(const SensorModel& model, double oracle_perturbation = 0.0);

CheckResult check_decay_contraction(double beta = 0.9);

/// Diminishing returns of route_info_gain's covered-set function on a
/// 12-space lot with randomized beliefs.
CheckResult check_submodularity(std::uint64_t seed = 12345, int triples = 1000);

/// Simulated blocking probability (constant lambda=30/h, 3 spaces, queue 2,
/// gamma=0) vs the birth-death value, 3-stderr band.
CheckResult check_queueing(std::uint64_t seed = 7, int replications = 200,
                           double horizon_hours = 200.0);

/// Within-replication std of e(t), one-way vs two-way, gamma=0.5.
/// Informational: the expected direction is smaller oscillation one-way.
CheckResult check_oscillation(const ExperimentConfig& base, int replications = 100);

std::vector<CheckResult> run_all_checks(const ExperimentConfig& base, int oscillation_reps = 100,
                                        double sensor_perturbation = 0.0);

/// Three-space test lot (one aisle node seeing all three spaces); exercises
/// the JSON loader and backs the queueing check.
LotGraph three_space_lot();

}  // namespace parksense

#endif
