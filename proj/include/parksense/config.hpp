#ifndef PARKSENSE_CONFIG_HPP
#define PARKSENSE_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parksense/belief.hpp"
#include "parksense/lot.hpp"

namespace parksense {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PolicyId { Random, Nearest, MaxSatisfaction, NearOptimal };

std::string to_string(PolicyId id);
PolicyId policy_from_string(const std::string& s);
std::string to_string(RouteMode mode);
RouteMode mode_from_string(const std::string& s);

struct LambdaSegment {
    double t_begin = 0.0;
    double t_end = 0.0;
    double rate = 0.0;  // cars/hour
};

/// Piecewise arrival intensity; gaps between segments fall back to base_rate.
struct ArrivalProfile {
    std::vector<LambdaSegment> segments;
    double base_rate = 120.0;
    double time_scale = 1.0;  // clock multiplier applied to t before lookup

    double rate_at(double t) const;
    double max_rate() const;

    /// The paper-shaped commuter-day profile: morning/evening peaks at 288,
    /// off-peak 72, lunch bump 144, base fill 120.
    static ArrivalProfile commuter_day();
    static ArrivalProfile constant(double rate);
};

struct ExperimentConfig {
    // lot
    int aisles = 4;
    int spaces_per_aisle_side = 20;
    std::optional<std::string> lot_file;

    PolicyId policy = PolicyId::Random;
    RouteMode mode = RouteMode::TwoWay;
    double gamma = 0.5;  // probe fraction of arrivals

    ArrivalProfile profile = ArrivalProfile::commuter_day();
    double mean_dwell_hours = 1.0;  // mu = 60 minutes
    int queue_capacity = 10;
    double horizon_hours = 9.0;

    BeliefConfig belief;
    bool entropy_scoring = false;  // score routes by H(p) instead of expected gain

    int replications = 1000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = hardware concurrency

    void validate() const;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
};

}  // namespace parksense

#endif
