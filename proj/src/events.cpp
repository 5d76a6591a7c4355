#include "parksense/events.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace parksense {

int SystemState::occupied_count() const {
    return static_cast<int>(
        std::count_if(occupancy.begin(), occupancy.end(),
                      [](Occupancy o) { return o != Occupancy::Free; }));
}

void SystemState::check_invariants(int queue_capacity) const {
    assert(in_system == occupied_count() + queue_count());
    assert(queue_count() <= queue_capacity);
    for (size_t i = 0; i < occupancy.size(); ++i)
        assert((occupancy[i] == Occupancy::Free) == (departure_time[i] == kNever));
    (void)queue_capacity;
}

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::Arrival: return "arrival";
        case EventKind::Departure: return "departure";
        case EventKind::Balk: return "balk";
        case EventKind::Assignment: return "assignment";
        case EventKind::Scan: return "scan";
        case EventKind::QueuePromote: return "queue_promote";
        case EventKind::HorizonEnd: return "horizon_end";
    }
    return "?";
}

double arrival_rate(double t, const ArrivalProfile& profile) { return profile.rate_at(t); }

NextArrival sample_next_arrival(double t, const ArrivalProfile& profile, double gamma,
                                std::mt19937_64& rng) {
    const double lam_max = profile.max_rate();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double cand = t;
    if (lam_max <= 0.0) return {kNever, CarKind::Normal};
    std::exponential_distribution<double> exp(lam_max);
    for (;;) {
        cand += exp(rng);
        if (unif(rng) * lam_max <= profile.rate_at(cand)) break;
    }
    CarKind kind = (unif(rng) < gamma) ? CarKind::Probe : CarKind::Normal;
    return {cand, kind};
}

double sample_dwell(double mean_hours, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp(1.0 / mean_hours);
    return exp(rng);
}

namespace {

struct Loop {
    const ExperimentConfig& cfg;
    const RoutingTable& routes;
    const LotGraph& lot;
    BeliefState& belief;
    std::mt19937_64& rng;
    DayResult& out;
    SystemState state;
    bool capture_beliefs = false;
    std::int64_t next_car_id = 1;

    Loop(const ExperimentConfig& c, const RoutingTable& r, BeliefState& b, std::mt19937_64& g,
         DayResult& o)
        : cfg(c), routes(r), lot(r.lot()), belief(b), rng(g), out(o),
          state(r.lot().space_count()) {}

    void record(double t, EventKind kind, std::int64_t car, SpaceId space) {
        double e = belief.estimation_error(state.occupancy, t);
        out.trace.push_back(SimEvent{t, kind, car, space, e});
        out.error_series.emplace_back(t, e);
        if (capture_beliefs) {
            Eigen::ArrayXd snap = belief.snapshot(t);
            out.belief_snapshots.emplace_back(snap.data(), snap.data() + snap.size());
        }
    }

    void park(const Car& car, SpaceId space, double t) {
        size_t i = static_cast<size_t>(space - 1);
        state.occupancy[i] = car.kind == CarKind::Probe ? Occupancy::Probe : Occupancy::Normal;
        state.departure_time[i] = t + sample_dwell(cfg.mean_dwell_hours, rng);
        state.car_at[i] = car.id;
    }

    void probe_scan(const Route& route, std::int64_t car, double t) {
        belief.apply_scan(route, lot, state.occupancy, rng, t);
        record(t, EventKind::Scan, car, 0);
    }

    void handle_arrival(const NextArrival& arr, double t) {
        Car car{next_car_id++, arr.kind, t};
        bool probe = car.kind == CarKind::Probe;
        (probe ? out.counters.probe_arrivals : out.counters.normal_arrivals)++;
        const int n_spaces = lot.space_count();

        if (state.in_system < n_spaces) {
            Assignment a = assign(cfg.policy, probe, belief, state.occupancy, routes, t, rng,
                                  cfg.entropy_scoring);
            state.in_system++;
            record(t, EventKind::Arrival, car.id, 0);
            if (probe) probe_scan(a.route, car.id, t);  // scans on the drive in
            park(car, a.space, t);
            if (probe) belief.set_known_occupied(a.space, t);
            record(t, EventKind::Assignment, car.id, a.space);
        } else if (state.in_system < n_spaces + cfg.queue_capacity) {
            state.in_system++;
            state.queue.push_back(car);
            record(t, EventKind::Arrival, car.id, 0);
        } else {
            out.counters.balked++;
            record(t, EventKind::Balk, car.id, 0);
        }
        state.check_invariants(cfg.queue_capacity);
    }

    void handle_departure(SpaceId space, double t) {
        size_t i = static_cast<size_t>(space - 1);
        Occupancy was = state.occupancy[i];
        std::int64_t car = state.car_at[i];
        bool probe = was == Occupancy::Probe;
        (probe ? out.counters.probe_departures : out.counters.normal_departures)++;
        state.occupancy[i] = Occupancy::Free;
        state.departure_time[i] = kNever;
        state.car_at[i] = 0;
        state.in_system--;
        if (probe) {
            probe_scan(routes.departure(space), car, t);
            belief.set_known_free(space, t);
        }
        record(t, EventKind::Departure, car, space);

        // FCFS promotion: the queue head takes the freed space, no policy call.
        if (!state.queue.empty()) {
            Car head = state.queue.front();
            state.queue.pop_front();
            bool head_probe = head.kind == CarKind::Probe;
            if (head_probe) probe_scan(routes.arrival(space), head.id, t);
            park(head, space, t);
            if (head_probe) belief.set_known_occupied(space, t);
            record(t, EventKind::QueuePromote, head.id, space);
        }
        state.check_invariants(cfg.queue_capacity);
    }
};

}  // namespace

DayResult run_day(const ExperimentConfig& config, const RoutingTable& routes, BeliefState& belief,
                  std::mt19937_64& rng, bool capture_beliefs) {
    if (belief.size() != routes.lot().space_count())
        throw std::invalid_argument("belief state size does not match lot");

    DayResult out;
    Loop loop(config, routes, belief, rng, out);
    loop.capture_beliefs = capture_beliefs;
    const double horizon = config.horizon_hours;

    out.error_series.emplace_back(0.0, belief.estimation_error(loop.state.occupancy, 0.0));

    NextArrival next = sample_next_arrival(0.0, config.profile, config.gamma, rng);
    for (;;) {
        SpaceId dep_space = 0;
        double dep_time = kNever;
        for (SpaceId s = 1; s <= routes.lot().space_count(); ++s) {
            double td = loop.state.departure_time[static_cast<size_t>(s - 1)];
            if (td < dep_time) {
                dep_time = td;
                dep_space = s;
            }
        }
        double t_next = std::min(next.time, dep_time);
        if (t_next >= horizon) break;
        if (next.time <= dep_time) {
            loop.handle_arrival(next, next.time);
            next = sample_next_arrival(next.time, config.profile, config.gamma, rng);
        } else {
            loop.handle_departure(dep_space, dep_time);
        }
    }

    loop.record(horizon, EventKind::HorizonEnd, 0, 0);
    out.final_state = std::move(loop.state);
    return out;
}

}  // namespace parksense
