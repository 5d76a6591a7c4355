#ifndef PARKSENSE_BELIEF_HPP
#define PARKSENSE_BELIEF_HPP

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "parksense/lot.hpp"

namespace parksense {

enum class Occupancy : int { Free = 0, Probe = 1, Normal = 2 };

enum class Measurement { Empty, OccupiedSeen };

enum class Classification { Empty, Occupied, Unknown };

/// Sensor confusion probabilities P(measurement | truth).
struct SensorModel {
    double p_hit = 0.907;          // P(occupied seen | occupied)
    double p_false_alarm = 0.059;  // P(occupied seen | free)

    double p_miss() const { return 1.0 - p_hit; }
    double p_true_neg() const { return 1.0 - p_false_alarm; }

    static SensorModel noiseless() { return SensorModel{1.0, 0.0}; }
};

struct BeliefConfig {
    SensorModel sensor;
    double beta = 0.9;              // decay per hour toward 0.5
    double empty_threshold = 0.4;   // p <  threshold  -> empty
    double occupied_threshold = 0.6;  // p > threshold -> occupied
};

/// Single-measurement Bayes update of the occupancy probability.
double posterior_update(double p, Measurement obs, const SensorModel& model);

/// Draw a noisy measurement of the true state.
Measurement sample_measurement(Occupancy truth, const SensorModel& model, std::mt19937_64& rng);

/// Shrink the belief toward the uninformative 0.5 after `dt` unscanned hours.
double decay(double p, double dt, double beta);

Classification classify(double p, const BeliefConfig& cfg);

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 := 0.
double binary_entropy(double p);

/// Expected entropy reduction of one noisy measurement at prior `p`:
/// H(p) - E_obs[H(posterior)], the per-space mutual information.
double expected_info_gain(double p, const SensorModel& model);

/// Per-space occupancy beliefs (ES vector). Decay is lazy: each space stores
/// the time it was last touched and reads apply beta^dt on the fly.
class BeliefState {
public:
    BeliefState(int n_spaces, BeliefConfig cfg);

    int size() const { return static_cast<int>(p_.size()); }
    const BeliefConfig& config() const { return cfg_; }

    /// Belief decayed to `now` without mutating state.
    double probability(SpaceId s, double now) const;

    Classification classify_space(SpaceId s, double now) const {
        return classify(probability(s, now), cfg_);
    }

    /// Spaces occupied by parked probe cars are pinned at certainty and do
    /// not decay until the probe departs.
    void set_known_occupied(SpaceId s, double now);
    void set_known_free(SpaceId s, double now);
    bool pinned(SpaceId s) const { return pinned_[static_cast<size_t>(s - 1)]; }

    /// Apply decay-then-measure-then-update for one scan of space `s`.
    void observe(SpaceId s, Measurement obs, double now);

    /// Overwrite a belief directly (validation and scenario setup).
    void set_probability(SpaceId s, double p, double now);

    /// Scan every space visible from the route, each at most once per
    /// traversal. Returns the spaces scanned.
    std::vector<SpaceId> apply_scan(const Route& route, const LotGraph& lot,
                                    const std::vector<Occupancy>& truth, std::mt19937_64& rng,
                                    double now);

    /// Fraction of wrongly classified spaces; unknown counts as wrong.
    double estimation_error(const std::vector<Occupancy>& truth, double now) const;

    /// Decayed belief vector snapshot.
    Eigen::ArrayXd snapshot(double now) const;

private:
    void check_space(SpaceId s) const;

    Eigen::ArrayXd p_;
    Eigen::ArrayXd last_touched_;
    std::vector<bool> pinned_;
    BeliefConfig cfg_;
};

}  // namespace parksense

#endif
