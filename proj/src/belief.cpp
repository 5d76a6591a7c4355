#include "parksense/belief.hpp"

#include <algorithm>
#include <stdexcept>

namespace parksense {

double posterior_update(double p, Measurement obs, const SensorModel& model) {
    double like_occ, like_free;
    if (obs == Measurement::Empty) {
        like_occ = model.p_miss();
        like_free = model.p_true_neg();
    } else {
        like_occ = model.p_hit;
        like_free = model.p_false_alarm;
    }
    double num = like_occ * p;
    double den = num + like_free * (1.0 - p);
    if (den == 0.0) return p;  // impossible observation under a degenerate model
    return num / den;
}

Measurement sample_measurement(Occupancy truth, const SensorModel& model, std::mt19937_64& rng) {
    double p_seen = (truth == Occupancy::Free) ? model.p_false_alarm : model.p_hit;
    std::bernoulli_distribution seen(p_seen);
    return seen(rng) ? Measurement::OccupiedSeen : Measurement::Empty;
}

double decay(double p, double dt, double beta) {
    if (dt < 0.0) throw std::invalid_argument("decay: dt must be >= 0");
    return 0.5 + std::pow(beta, dt) * (p - 0.5);
}

Classification classify(double p, const BeliefConfig& cfg) {
    if (p < cfg.empty_threshold) return Classification::Empty;
    if (p > cfg.occupied_threshold) return Classification::Occupied;
    return Classification::Unknown;
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double expected_info_gain(double p, const SensorModel& model) {
    double gain = binary_entropy(p);
    const Measurement obs_values[] = {Measurement::Empty, Measurement::OccupiedSeen};
    for (Measurement obs : obs_values) {
        double like_occ = (obs == Measurement::Empty) ? model.p_miss() : model.p_hit;
        double like_free = (obs == Measurement::Empty) ? model.p_true_neg() : model.p_false_alarm;
        double p_obs = like_occ * p + like_free * (1.0 - p);
        if (p_obs == 0.0) continue;
        gain -= p_obs * binary_entropy(posterior_update(p, obs, model));
    }
    return std::max(gain, 0.0);  // clamp -0.0 / rounding residue
}

BeliefState::BeliefState(int n_spaces, BeliefConfig cfg)
    : p_(Eigen::ArrayXd::Constant(n_spaces, 0.5)),
      last_touched_(Eigen::ArrayXd::Zero(n_spaces)),
      pinned_(static_cast<size_t>(n_spaces), false),
      cfg_(cfg) {}

void BeliefState::check_space(SpaceId s) const {
    if (s < 1 || s > size())
        throw std::out_of_range("belief: unknown space id " + std::to_string(s));
}

double BeliefState::probability(SpaceId s, double now) const {
    check_space(s);
    size_t i = static_cast<size_t>(s - 1);
    if (pinned_[i]) return p_[s - 1];
    return decay(p_[s - 1], now - last_touched_[s - 1], cfg_.beta);
}

void BeliefState::set_known_occupied(SpaceId s, double now) {
    check_space(s);
    p_[s - 1] = 1.0;
    last_touched_[s - 1] = now;
    pinned_[static_cast<size_t>(s - 1)] = true;
}

void BeliefState::set_known_free(SpaceId s, double now) {
    check_space(s);
    p_[s - 1] = 0.0;
    last_touched_[s - 1] = now;
    pinned_[static_cast<size_t>(s - 1)] = false;
}

void BeliefState::observe(SpaceId s, Measurement obs, double now) {
    check_space(s);
    if (pinned_[static_cast<size_t>(s - 1)]) return;  // probe telemetry beats the sensor
    double prior = decay(p_[s - 1], now - last_touched_[s - 1], cfg_.beta);
    p_[s - 1] = posterior_update(prior, obs, cfg_.sensor);
    last_touched_[s - 1] = now;
}

void BeliefState::set_probability(SpaceId s, double p, double now) {
    check_space(s);
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("belief probability out of [0,1]");
    p_[s - 1] = p;
    last_touched_[s - 1] = now;
    pinned_[static_cast<size_t>(s - 1)] = false;
}

std::vector<SpaceId> BeliefState::apply_scan(const Route& route, const LotGraph& lot,
                                             const std::vector<Occupancy>& truth,
                                             std::mt19937_64& rng, double now) {
    std::vector<SpaceId> scanned;
    std::vector<bool> seen(static_cast<size_t>(size() + 1), false);
    for (NodeId n : route.nodes) {
        for (SpaceId s : lot.scan_adjacency(n)) {
            if (seen[static_cast<size_t>(s)]) continue;
            seen[static_cast<size_t>(s)] = true;
            Measurement obs =
                sample_measurement(truth[static_cast<size_t>(s - 1)], cfg_.sensor, rng);
            observe(s, obs, now);
            scanned.push_back(s);
        }
    }
    return scanned;
}

double BeliefState::estimation_error(const std::vector<Occupancy>& truth, double now) const {
    int wrong = 0;
    for (SpaceId s = 1; s <= size(); ++s) {
        Classification est = classify_space(s, now);
        bool occupied = truth[static_cast<size_t>(s - 1)] != Occupancy::Free;
        if (est == Classification::Unknown)
            ++wrong;
        else if ((est == Classification::Occupied) != occupied)
            ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(size());
}

Eigen::ArrayXd BeliefState::snapshot(double now) const {
    Eigen::ArrayXd out(size());
    for (SpaceId s = 1; s <= size(); ++s) out[s - 1] = probability(s, now);
    return out;
}

}  // namespace parksense
