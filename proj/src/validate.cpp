#include "parksense/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "parksense/policies.hpp"

namespace parksense {

double odds_ratio_posterior(double p, Measurement obs, const SensorModel& model) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double like_occ = (obs == Measurement::Empty) ? model.p_miss() : model.p_hit;
    double like_free = (obs == Measurement::Empty) ? model.p_true_neg() : model.p_false_alarm;
    if (like_free == 0.0) return like_occ > 0.0 ? 1.0 : p;
    double odds = (p / (1.0 - p)) * (like_occ / like_free);
    return odds / (1.0 + odds);
}

double birth_death_blocking(double lambda, double mu, int servers, int queue_capacity) {
    const int states = servers + queue_capacity;
    // pi_k relative to pi_0; normalize at the end
    std::vector<double> pi(static_cast<size_t>(states + 1), 0.0);
    pi[0] = 1.0;
    for (int k = 1; k <= states; ++k) {
        double death = mu * std::min(k, servers);
        pi[static_cast<size_t>(k)] = pi[static_cast<size_t>(k - 1)] * lambda / death;
    }
    double total = 0.0;
    for (double x : pi) total += x;
    return pi[static_cast<size_t>(states)] / total;
}

CheckResult check_bayes_grid(const SensorModel& model, double oracle_perturbation) {
    SensorModel oracle_model = model;
    oracle_model.p_hit += oracle_perturbation;
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        double p = static_cast<double>(k) / 1000.0;
        for (Measurement obs : {Measurement::Empty, Measurement::OccupiedSeen}) {
            double direct = posterior_update(p, obs, model);
            double oracle = odds_ratio_posterior(p, obs, oracle_model);
            worst = std::max(worst, std::abs(direct - oracle));
        }
    }
    CheckResult r;
    r.name = "bayes_grid";
    r.pass = worst <= 1e-12;
    std::ostringstream d;
    d << "max |direct - odds-ratio| = " << worst << " over 1001-point grid (limit 1e-12)";
    r.detail = d.str();
    return r;
}

CheckResult check_decay_contraction(double beta) {
    double worst = 0.0;
    for (int pi = 0; pi <= 100; ++pi) {
        double p = static_cast<double>(pi) / 100.0;
        for (double dt : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            double got = std::abs(decay(p, dt, beta) - 0.5);
            double want = std::pow(beta, dt) * std::abs(p - 0.5);
            worst = std::max(worst, std::abs(got - want));
        }
    }
    double worst_limit = 0.0;
    for (double p0 : {0.0, 0.013, 0.25, 0.51, 0.77, 1.0}) {
        double p = p0;
        for (int i = 0; i < 100; ++i) p = decay(p, 1.0, beta);
        worst_limit = std::max(worst_limit, std::abs(p - 0.5));
    }
    CheckResult r;
    r.name = "decay_contraction";
    r.pass = worst <= 1e-15 && worst_limit <= 1e-6;
    std::ostringstream d;
    d << "contraction identity error " << worst << " (limit 1e-15); 100-step residual "
      << worst_limit << " (limit 1e-6)";
    r.detail = d.str();
    return r;
}

CheckResult check_submodularity(std::uint64_t seed, int triples) {
    LotGraph lot = LotGraph::grid(3, 2);  // 12 spaces, 6 aisle nodes
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<NodeId> aisle_nodes;
    for (NodeId v = 0; v < lot.node_count(); ++v)
        if (lot.node(v).kind == NodeKind::Aisle) aisle_nodes.push_back(v);

    BeliefConfig cfg;
    BeliefState belief(lot.space_count(), cfg);
    auto gain_of = [&](const std::vector<NodeId>& nodes) {
        Route r;
        r.nodes = nodes;
        return route_info_gain(belief, r, lot, cfg.sensor, 0.0);
    };

    int violations = 0;
    double worst = 0.0;
    for (int trial = 0; trial < triples; ++trial) {
        for (SpaceId s = 1; s <= lot.space_count(); ++s)
            belief.set_probability(s, unif(rng), 0.0);
        std::vector<NodeId> a, b;
        NodeId v = aisle_nodes[rng() % aisle_nodes.size()];
        for (NodeId u : aisle_nodes) {
            if (u == v) continue;
            bool in_b = unif(rng) < 0.6;
            if (in_b) {
                b.push_back(u);
                if (unif(rng) < 0.5) a.push_back(u);  // A subset of B
            }
        }
        auto with = [&](std::vector<NodeId> set) {
            set.push_back(v);
            return set;
        };
        double marg_a = gain_of(with(a)) - gain_of(a);
        double marg_b = gain_of(with(b)) - gain_of(b);
        double slack = marg_a - marg_b;  // must be >= 0 up to rounding
        if (slack < -1e-12) {
            ++violations;
            worst = std::min(worst, slack);
        }
    }
    CheckResult r;
    r.name = "submodularity";
    r.pass = violations == 0;
    std::ostringstream d;
    d << violations << "/" << triples << " diminishing-return violations beyond 1e-12";
    if (violations > 0) d << " (worst " << worst << ")";
    r.detail = d.str();
    return r;
}

LotGraph three_space_lot() {
    static const char* doc = R"({
      "entrance": 0,
      "exit": 2,
      "nodes": [
        {"id": 0, "kind": "entrance"},
        {"id": 1, "kind": "aisle"},
        {"id": 2, "kind": "exit"},
        {"id": 3, "kind": "space", "space": 1, "aisle": 1},
        {"id": 4, "kind": "space", "space": 2, "aisle": 1},
        {"id": 5, "kind": "space", "space": 3, "aisle": 1}
      ],
      "edges": [
        {"from": 0, "to": 1, "two_way": false},
        {"from": 1, "to": 2, "two_way": false}
      ],
      "scan_adjacency": {"1": [1, 2, 3]}
    })";
    return LotGraph::from_json(doc);
}

CheckResult check_queueing(std::uint64_t seed, int replications, double horizon_hours) {
    ExperimentConfig cfg;
    cfg.lot_file.reset();
    cfg.profile = ArrivalProfile::constant(30.0);
    cfg.mean_dwell_hours = 1.0;
    cfg.queue_capacity = 2;
    cfg.gamma = 0.0;
    cfg.horizon_hours = horizon_hours;
    cfg.policy = PolicyId::Random;
    cfg.seed = seed;
    cfg.replications = replications;

    LotGraph lot = three_space_lot();
    RoutingTable routes(lot, RouteMode::TwoWay);

    std::vector<double> fractions;
    fractions.reserve(static_cast<size_t>(replications));
    for (int i = 0; i < replications; ++i) {
        ReplicationResult rep = run_replication(cfg, routes, i);
        double arrivals = static_cast<double>(rep.counters.arrivals());
        if (arrivals > 0.0)
            fractions.push_back(static_cast<double>(rep.counters.balked) / arrivals);
    }
    double mean = 0.0;
    for (double f : fractions) mean += f;
    mean /= static_cast<double>(fractions.size());
    double ss = 0.0;
    for (double f : fractions) ss += (f - mean) * (f - mean);
    double se = std::sqrt(ss / (static_cast<double>(fractions.size()) - 1.0) /
                          static_cast<double>(fractions.size()));

    double analytic = birth_death_blocking(30.0, 1.0, 3, 2);
    CheckResult r;
    r.name = "queueing_blocking";
    r.pass = std::abs(mean - analytic) <= 3.0 * se;
    std::ostringstream d;
    d << "simulated " << mean << " vs analytic " << analytic << " (|diff| "
      << std::abs(mean - analytic) << ", 3se " << 3.0 * se << ", " << fractions.size() << " reps)";
    r.detail = d.str();
    return r;
}

CheckResult check_oscillation(const ExperimentConfig& base, int replications) {
    LotGraph lot = make_lot(base);
    std::ostringstream d;
    bool direction_ok = true;
    for (PolicyId policy : {PolicyId::Random, PolicyId::Nearest, PolicyId::MaxSatisfaction,
                            PolicyId::NearOptimal}) {
        double stds[2] = {0.0, 0.0};
        int m = 0;
        for (RouteMode mode : {RouteMode::OneWay, RouteMode::TwoWay}) {
            ExperimentConfig cfg = base;
            cfg.policy = policy;
            cfg.mode = mode;
            cfg.gamma = 0.5;
            cfg.replications = replications;
            RoutingTable routes(lot, mode);
            double acc = 0.0;
            for (int i = 0; i < replications; ++i)
                acc += run_replication(cfg, routes, i).error_std;
            stds[m++] = acc / static_cast<double>(replications);
        }
        d << to_string(policy) << ": std(e) one-way " << stds[0] << ", two-way " << stds[1]
          << "; ";
        if (stds[0] > stds[1]) direction_ok = false;
    }
    CheckResult r;
    r.name = "oscillation_one_way_vs_two_way";
    r.informational = true;
    r.pass = true;  // reported, not gated
    d << (direction_ok ? "one-way oscillation smaller for all policies"
                       : "direction differs from the expected ordering for some policy");
    r.detail = d.str();
    return r;
}

std::vector<CheckResult> run_all_checks(const ExperimentConfig& base, int oscillation_reps,
                                        double sensor_perturbation) {
    std::vector<CheckResult> out;
    out.push_back(check_bayes_grid(base.belief.sensor, sensor_perturbation));
    out.push_back(check_submodularity());
    out.push_back(check_queueing());
    if (oscillation_reps > 0) out.push_back(check_oscillation(base, oscillation_reps));
    return out;
}

}  // namespace parksense
