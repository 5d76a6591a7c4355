#ifndef PARKSENSE_POLICIES_HPP
#define PARKSENSE_POLICIES_HPP

#include <random>
#include <vector>

#include "parksense/belief.hpp"
#include "parksense/config.hpp"
#include "parksense/lot.hpp"

namespace parksense {

struct Assignment {
    SpaceId space = 0;
    Route route;             // arrival route, entrance -> space's aisle node
    double info_gain = 0.0;  // bits; 0 for non-probe policies
};

/// Per-(lot, mode) routing tables shared by every replication of a run:
/// arrival/departure routes, their lengths, and the set of spaces each
/// arrival route scans.
class RoutingTable {
public:
    RoutingTable(const LotGraph& lot, RouteMode mode);

    const LotGraph& lot() const { return *lot_; }
    RouteMode mode() const { return mode_; }

    const Route& arrival(SpaceId s) const { return arrival_[static_cast<size_t>(s - 1)]; }
    const Route& departure(SpaceId s) const { return departure_[static_cast<size_t>(s - 1)]; }
    double arrival_length(SpaceId s) const { return arrival(s).length; }
    /// Distinct spaces visible along the arrival route, sorted.
    const std::vector<SpaceId>& arrival_coverage(SpaceId s) const {
        return coverage_[static_cast<size_t>(s - 1)];
    }

private:
    const LotGraph* lot_;
    RouteMode mode_;
    std::vector<Route> arrival_;
    std::vector<Route> departure_;
    std::vector<std::vector<SpaceId>> coverage_;
};

/// Expected information gain (bits) of scanning along `route`, each visible
/// space counted once.
double route_info_gain(const BeliefState& belief, const Route& route, const LotGraph& lot,
                       const SensorModel& model, double now);

Assignment assign_random(const std::vector<Occupancy>& truth, const RoutingTable& routes,
                         std::mt19937_64& rng);

Assignment assign_nearest(const std::vector<Occupancy>& truth, const RoutingTable& routes);

/// Probe cars: most-likely-empty space under the decayed belief.
Assignment assign_max_satisfaction(const BeliefState& belief, const std::vector<Occupancy>& truth,
                                   const RoutingTable& routes, double now);

/// Probe cars: arrival route maximizing expected information gain.
Assignment assign_near_optimal(const BeliefState& belief, const std::vector<Occupancy>& truth,
                               const RoutingTable& routes, double now,
                               bool entropy_scoring = false);

/// Policy dispatch for one arriving car. Normal cars under policies 3 and 4
/// fall back to nearest.
Assignment assign(PolicyId policy, bool is_probe, const BeliefState& belief,
                  const std::vector<Occupancy>& truth, const RoutingTable& routes, double now,
                  std::mt19937_64& rng, bool entropy_scoring = false);

}  // namespace parksense

#endif
