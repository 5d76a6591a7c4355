#include "parksense/policies.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace parksense {

RoutingTable::RoutingTable(const LotGraph& lot, RouteMode mode) : lot_(&lot), mode_(mode) {
    const int n = lot.space_count();
    arrival_.reserve(static_cast<size_t>(n));
    departure_.reserve(static_cast<size_t>(n));
    coverage_.reserve(static_cast<size_t>(n));
    for (SpaceId s = 1; s <= n; ++s) {
        arrival_.push_back(lot.arrival_route(s, mode));
        departure_.push_back(lot.departure_route(s, mode));
        std::set<SpaceId> cov;
        for (NodeId v : arrival_.back().nodes)
            for (SpaceId sp : lot.scan_adjacency(v)) cov.insert(sp);
        coverage_.emplace_back(cov.begin(), cov.end());
    }
}

double route_info_gain(const BeliefState& belief, const Route& route, const LotGraph& lot,
                       const SensorModel& model, double now) {
    std::set<SpaceId> seen;
    double gain = 0.0;
    for (NodeId v : route.nodes)
        for (SpaceId s : lot.scan_adjacency(v))
            if (seen.insert(s).second) gain += expected_info_gain(belief.probability(s, now), model);
    return gain;
}

namespace {

std::vector<SpaceId> free_spaces(const std::vector<Occupancy>& truth) {
    std::vector<SpaceId> out;
    for (size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == Occupancy::Free) out.push_back(static_cast<SpaceId>(i + 1));
    if (out.empty()) throw std::logic_error("policy invoked with no free space");
    return out;
}

Assignment make_assignment(SpaceId s, const RoutingTable& routes, double gain = 0.0) {
    return Assignment{s, routes.arrival(s), gain};
}

// nearest-then-smallest-id comparison used for tie-breaking everywhere
bool nearer(SpaceId a, SpaceId b, const RoutingTable& routes) {
    double la = routes.arrival_length(a), lb = routes.arrival_length(b);
    if (la != lb) return la < lb;
    return a < b;
}

}  // namespace

Assignment assign_random(const std::vector<Occupancy>& truth, const RoutingTable& routes,
                         std::mt19937_64& rng) {
    auto free = free_spaces(truth);
    std::uniform_int_distribution<size_t> pick(0, free.size() - 1);
    return make_assignment(free[pick(rng)], routes);
}

Assignment assign_nearest(const std::vector<Occupancy>& truth, const RoutingTable& routes) {
    auto free = free_spaces(truth);
    SpaceId best = free.front();
    for (SpaceId s : free)
        if (nearer(s, best, routes)) best = s;
    return make_assignment(best, routes);
}

Assignment assign_max_satisfaction(const BeliefState& belief, const std::vector<Occupancy>& truth,
                                   const RoutingTable& routes, double now) {
    auto free = free_spaces(truth);
    SpaceId best = free.front();
    double best_p = belief.probability(best, now);
    for (SpaceId s : free) {
        double p = belief.probability(s, now);
        if (p < best_p || (p == best_p && nearer(s, best, routes))) {
            best = s;
            best_p = p;
        }
    }
    return make_assignment(best, routes);
}

Assignment assign_near_optimal(const BeliefState& belief, const std::vector<Occupancy>& truth,
                               const RoutingTable& routes, double now, bool entropy_scoring) {
    auto free = free_spaces(truth);

    // Per-space gains computed once; a route's gain is the sum over its
    // covered set.
    const int n = belief.size();
    std::vector<double> gain(static_cast<size_t>(n));
    for (SpaceId s = 1; s <= n; ++s) {
        double p = belief.probability(s, now);
        gain[static_cast<size_t>(s - 1)] =
            entropy_scoring ? binary_entropy(p) : expected_info_gain(p, belief.config().sensor);
    }

    SpaceId best = free.front();
    double best_gain = -1.0;
    for (SpaceId s : free) {
        double g = 0.0;
        for (SpaceId sp : routes.arrival_coverage(s)) g += gain[static_cast<size_t>(sp - 1)];
        if (g > best_gain || (g == best_gain && nearer(s, best, routes))) {
            best = s;
            best_gain = g;
        }
    }
    return make_assignment(best, routes, best_gain);
}

Assignment assign(PolicyId policy, bool is_probe, const BeliefState& belief,
                  const std::vector<Occupancy>& truth, const RoutingTable& routes, double now,
                  std::mt19937_64& rng, bool entropy_scoring) {
    switch (policy) {
        case PolicyId::Random: return assign_random(truth, routes, rng);
        case PolicyId::Nearest: return assign_nearest(truth, routes);
        case PolicyId::MaxSatisfaction:
            return is_probe ? assign_max_satisfaction(belief, truth, routes, now)
                            : assign_nearest(truth, routes);
        case PolicyId::NearOptimal:
            return is_probe ? assign_near_optimal(belief, truth, routes, now, entropy_scoring)
                            : assign_nearest(truth, routes);
    }
    throw std::logic_error("unknown policy");
}

}  // namespace parksense
