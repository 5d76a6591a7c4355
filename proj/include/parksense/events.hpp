#ifndef PARKSENSE_EVENTS_HPP
#define PARKSENSE_EVENTS_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "parksense/belief.hpp"
#include "parksense/config.hpp"
#include "parksense/lot.hpp"
#include "parksense/policies.hpp"

namespace parksense {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

enum class CarKind { Probe, Normal };

struct Car {
    std::int64_t id = 0;
    CarKind kind = CarKind::Normal;
    double arrival_time = 0.0;
};

/// Ground truth (the SS vector): per-space occupancy, totals, FIFO queue.
struct SystemState {
    std::vector<Occupancy> occupancy;    // X_i
    std::vector<double> departure_time;  // t_i, kNever when free
    std::vector<std::int64_t> car_at;    // car id per space, 0 when free
    int in_system = 0;                   // n
    std::deque<Car> queue;               // c = queue.size()

    explicit SystemState(int n_spaces)
        : occupancy(static_cast<size_t>(n_spaces), Occupancy::Free),
          departure_time(static_cast<size_t>(n_spaces), kNever),
          car_at(static_cast<size_t>(n_spaces), 0) {}

    int occupied_count() const;
    int queue_count() const { return static_cast<int>(queue.size()); }
    void check_invariants(int queue_capacity) const;
};

struct Counters {
    std::int64_t probe_arrivals = 0;
    std::int64_t normal_arrivals = 0;
    std::int64_t probe_departures = 0;
    std::int64_t normal_departures = 0;
    std::int64_t balked = 0;

    std::int64_t arrivals() const { return probe_arrivals + normal_arrivals; }
    std::int64_t departures() const { return probe_departures + normal_departures; }
};

enum class EventKind { Arrival, Departure, Balk, Assignment, Scan, QueuePromote, HorizonEnd };

std::string to_string(EventKind k);

struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::Arrival;
    std::int64_t car = 0;
    SpaceId space = 0;  // 0 = none
    double error = 0.0;  // e(t) after the event
};

struct NextArrival {
    double time = 0.0;
    CarKind kind = CarKind::Normal;
};

/// Lambda(t) of the paper's commuter-day shape (via the configured profile).
double arrival_rate(double t, const ArrivalProfile& profile);

/// Next nonhomogeneous-Poisson arrival after `t` by thinning against the
/// profile's max rate; car kind is probe with probability gamma.
NextArrival sample_next_arrival(double t, const ArrivalProfile& profile, double gamma,
                                std::mt19937_64& rng);

/// Exponential dwell with the configured mean.
double sample_dwell(double mean_hours, std::mt19937_64& rng);

struct DayResult {
    std::vector<SimEvent> trace;
    std::vector<std::pair<double, double>> error_series;  // (t, e(t)); starts at t=0
    std::vector<std::vector<double>> belief_snapshots;    // per trace event, when captured
    Counters counters;
    SystemState final_state{0};
};

/// One simulated day: the M_t/M/N/C event loop with policy assignment,
/// queueing, balking, and probe scanning.
DayResult run_day(const ExperimentConfig& config, const RoutingTable& routes,
                  BeliefState& belief, std::mt19937_64& rng, bool capture_beliefs = false);

}  // namespace parksense

#endif
