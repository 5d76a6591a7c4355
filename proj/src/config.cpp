#include "parksense/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace parksense {

std::string to_string(PolicyId id) {
    switch (id) {
        case PolicyId::Random: return "random";
        case PolicyId::Nearest: return "nearest";
        case PolicyId::MaxSatisfaction: return "max-satisfaction";
        case PolicyId::NearOptimal: return "near-optimal";
    }
    return "?";
}

PolicyId policy_from_string(const std::string& s) {
    if (s == "random") return PolicyId::Random;
    if (s == "nearest") return PolicyId::Nearest;
    if (s == "max-satisfaction" || s == "max_satisfaction") return PolicyId::MaxSatisfaction;
    if (s == "near-optimal" || s == "near_optimal") return PolicyId::NearOptimal;
    throw ConfigError("unknown policy '" + s +
                      "' (expected random|nearest|max-satisfaction|near-optimal)");
}

std::string to_string(RouteMode mode) {
    return mode == RouteMode::OneWay ? "one-way" : "two-way";
}

RouteMode mode_from_string(const std::string& s) {
    if (s == "one-way" || s == "one_way") return RouteMode::OneWay;
    if (s == "two-way" || s == "two_way") return RouteMode::TwoWay;
    throw ConfigError("unknown mode '" + s + "' (expected one-way|two-way)");
}

double ArrivalProfile::rate_at(double t) const {
    if (t < 0.0) throw ConfigError("arrival rate queried at negative time");
    double tt = t * time_scale;
    for (const LambdaSegment& s : segments)
        if (tt >= s.t_begin && tt < s.t_end) return s.rate;
    return base_rate;
}

double ArrivalProfile::max_rate() const {
    double m = base_rate;
    for (const LambdaSegment& s : segments) m = std::max(m, s.rate);
    return m;
}

ArrivalProfile ArrivalProfile::commuter_day() {
    ArrivalProfile p;
    p.segments = {{0.0, 1.0, 288.0}, {1.0, 3.0, 72.0}, {4.0, 6.0, 144.0},
                  {7.0, 8.0, 72.0},  {8.0, 9.0, 288.0}};
    p.base_rate = 120.0;
    return p;
}

ArrivalProfile ArrivalProfile::constant(double rate) {
    ArrivalProfile p;
    p.base_rate = rate;
    return p;
}

void ExperimentConfig::validate() const {
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma out of range [0,1]");
    if (belief.beta <= 0.0 || belief.beta > 1.0) throw ConfigError("beta out of range (0,1]");
    if (horizon_hours <= 0.0) throw ConfigError("horizon must be > 0");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (queue_capacity < 0) throw ConfigError("queue_capacity must be >= 0");
    if (mean_dwell_hours <= 0.0) throw ConfigError("mean_dwell_hours must be > 0");
    if (!lot_file && (aisles < 1 || spaces_per_aisle_side < 1))
        throw ConfigError("lot dimensions must be >= 1");
    if (belief.sensor.p_hit < 0.0 || belief.sensor.p_hit > 1.0 ||
        belief.sensor.p_false_alarm < 0.0 || belief.sensor.p_false_alarm > 1.0)
        throw ConfigError("sensor probabilities out of range [0,1]");
    if (!(belief.empty_threshold <= belief.occupied_threshold))
        throw ConfigError("empty_threshold must be <= occupied_threshold");
    if (profile.base_rate < 0.0) throw ConfigError("base_rate must be >= 0");
    for (const LambdaSegment& s : profile.segments)
        if (s.rate < 0.0 || s.t_end < s.t_begin)
            throw ConfigError("lambda segment invalid (rate >= 0, t_end >= t_begin)");
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["lot"] = {{"aisles", aisles}, {"spaces_per_aisle_side", spaces_per_aisle_side}};
    if (lot_file) j["lot"]["file"] = *lot_file;
    j["policy"] = to_string(policy);
    j["mode"] = to_string(mode);
    j["gamma"] = gamma;
    j["lambda"] = nlohmann::json::object();
    j["lambda"]["segments"] = nlohmann::json::array();
    for (const LambdaSegment& s : profile.segments)
        j["lambda"]["segments"].push_back({s.t_begin, s.t_end, s.rate});
    j["lambda"]["base_rate"] = profile.base_rate;
    j["lambda"]["time_scale"] = profile.time_scale;
    j["mean_dwell_hours"] = mean_dwell_hours;
    j["queue_capacity"] = queue_capacity;
    j["horizon_hours"] = horizon_hours;
    j["beta"] = belief.beta;
    j["sensor"] = {{"p_hit", belief.sensor.p_hit}, {"p_false_alarm", belief.sensor.p_false_alarm}};
    j["thresholds"] = {{"empty", belief.empty_threshold}, {"occupied", belief.occupied_threshold}};
    j["scan_range_cap"] = kScanRangeCap;
    j["entropy_scoring"] = entropy_scoring;
    j["replications"] = replications;
    j["seed"] = seed;
    j["workers"] = workers;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        if (j.contains("lot")) {
            const auto& jl = j["lot"];
            c.aisles = jl.value("aisles", c.aisles);
            c.spaces_per_aisle_side = jl.value("spaces_per_aisle_side", c.spaces_per_aisle_side);
            if (jl.contains("file")) c.lot_file = jl["file"].get<std::string>();
        }
        if (j.contains("policy")) c.policy = policy_from_string(j["policy"].get<std::string>());
        if (j.contains("mode")) c.mode = mode_from_string(j["mode"].get<std::string>());
        c.gamma = j.value("gamma", c.gamma);
        if (j.contains("lambda")) {
            const auto& jl = j["lambda"];
            if (jl.contains("segments")) {
                c.profile.segments.clear();
                for (const auto& js : jl["segments"]) {
                    if (!js.is_array() || js.size() != 3)
                        throw ConfigError("lambda.segments entries must be [t_begin, t_end, rate]");
                    c.profile.segments.push_back(
                        {js[0].get<double>(), js[1].get<double>(), js[2].get<double>()});
                }
            }
            c.profile.base_rate = jl.value("base_rate", c.profile.base_rate);
            c.profile.time_scale = jl.value("time_scale", c.profile.time_scale);
        }
        c.mean_dwell_hours = j.value("mean_dwell_hours", c.mean_dwell_hours);
        if (j.contains("mu_minutes")) c.mean_dwell_hours = j["mu_minutes"].get<double>() / 60.0;
        c.queue_capacity = j.value("queue_capacity", c.queue_capacity);
        c.horizon_hours = j.value("horizon_hours", c.horizon_hours);
        c.belief.beta = j.value("beta", c.belief.beta);
        if (j.contains("sensor")) {
            c.belief.sensor.p_hit = j["sensor"].value("p_hit", c.belief.sensor.p_hit);
            c.belief.sensor.p_false_alarm =
                j["sensor"].value("p_false_alarm", c.belief.sensor.p_false_alarm);
        }
        if (j.contains("thresholds")) {
            c.belief.empty_threshold = j["thresholds"].value("empty", c.belief.empty_threshold);
            c.belief.occupied_threshold =
                j["thresholds"].value("occupied", c.belief.occupied_threshold);
        }
        c.entropy_scoring = j.value("entropy_scoring", c.entropy_scoring);
        c.replications = j.value("replications", c.replications);
        c.seed = j.value("seed", c.seed);
        c.workers = j.value("workers", c.workers);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace parksense
