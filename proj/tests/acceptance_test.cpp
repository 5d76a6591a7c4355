// Acceptance suite: one line per criterion, nonzero exit if any gating
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "parksense/harness.hpp"
#include "parksense/policies.hpp"
#include "parksense/validate.hpp"

using namespace parksense;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            bool informational = false) {
    const char* tag = informational ? "INFO" : (pass ? "PASS" : "FAIL");
    std::cout << tag << " criterion " << id << " (" << name << "): " << detail << std::endl;
    if (!pass && !informational) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig paper_config() {
    ExperimentConfig cfg;  // 160-space lot, commuter-day profile, paper defaults
    cfg.seed = 90210;
    return cfg;
}

struct PointStats {
    std::vector<double> mean_errors;
    std::vector<double> error_stds;
    std::vector<double> final_hour_means;

    double mean() const {
        double m = 0.0;
        for (double x : mean_errors) m += x;
        return m / static_cast<double>(mean_errors.size());
    }
    double stderr_mean() const {
        double m = mean(), ss = 0.0;
        double n = static_cast<double>(mean_errors.size());
        for (double x : mean_errors) ss += (x - m) * (x - m);
        return std::sqrt(ss / (n - 1.0) / n);
    }
};

// replication results are cached per (policy, mode, gamma, reps)
std::map<std::string, PointStats> g_cache;

PointStats& collect(const LotGraph& lot, PolicyId policy, RouteMode mode, double gamma,
                    int reps) {
    std::ostringstream key;
    key << to_string(policy) << '|' << to_string(mode) << '|' << gamma << '|' << reps;
    auto it = g_cache.find(key.str());
    if (it != g_cache.end()) return it->second;

    ExperimentConfig cfg = paper_config();
    cfg.policy = policy;
    cfg.mode = mode;
    cfg.gamma = gamma;
    cfg.replications = reps;
    RoutingTable routes(lot, mode);
    PointStats stats;
    for (int i = 0; i < reps; ++i) {
        ReplicationResult r = run_replication(cfg, routes, i, /*keep_series=*/true);
        stats.mean_errors.push_back(r.mean_error);
        stats.error_stds.push_back(r.error_std);
        // time average of e over the final hour [TT-1, TT]
        std::vector<std::pair<double, double>> tail;
        double t0 = cfg.horizon_hours - 1.0;
        double held = 1.0;
        for (const auto& [t, e] : r.series) {
            if (t <= t0)
                held = e;
            else
                tail.emplace_back(t - t0, e);
        }
        tail.insert(tail.begin(), {0.0, held});
        stats.final_hour_means.push_back(time_avg_error(tail, 1.0));
    }
    return g_cache.emplace(key.str(), std::move(stats)).first->second;
}

void criterion_1_bayes() {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = check_bayes_grid(SensorModel{});
    double dt = seconds_since(t0);
    report(1, "bayes oracle equivalence", r.pass && dt < 1.0,
           r.detail + "; runtime " + std::to_string(dt) + " s (limit 1)");
}

void criterion_2_queueing() {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = check_queueing(/*seed=*/7, /*replications=*/200, /*horizon=*/200.0);
    double dt = seconds_since(t0);
    report(2, "M/M/3/5 blocking", r.pass && dt < 30.0,
           r.detail + "; runtime " + std::to_string(dt) + " s (limit 30)");
}

void criterion_3_submodularity() {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = check_submodularity(/*seed=*/12345, /*triples=*/1000);
    double dt = seconds_since(t0);
    report(3, "submodularity", r.pass && dt < 5.0,
           r.detail + "; runtime " + std::to_string(dt) + " s (limit 5)");
}

void criterion_4_decay() {
    CheckResult r = check_decay_contraction(0.9);
    report(4, "decay contraction", r.pass, r.detail);
}

void criterion_5_policy_ordering(const LotGraph& lot) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;
    for (RouteMode mode : {RouteMode::OneWay, RouteMode::TwoWay}) {
        for (double gamma : {0.1, 0.5, 0.9}) {
            PointStats& no = collect(lot, PolicyId::NearOptimal, mode, gamma, 100);
            PointStats& ms = collect(lot, PolicyId::MaxSatisfaction, mode, gamma, 100);
            double diff = ms.mean() - no.mean();  // want >= 0
            double margin = 2.0 * std::sqrt(no.stderr_mean() * no.stderr_mean() +
                                            ms.stderr_mean() * ms.stderr_mean());
            bool point_ok = gamma <= 0.5 ? diff >= margin : diff >= 0.0;
            if (!point_ok) pass = false;
            detail << to_string(mode) << "/g=" << gamma << ": near-opt " << no.mean()
                   << " vs max-sat " << ms.mean() << (point_ok ? " ok" : " VIOLATION") << "; ";
        }
    }
    detail << "runtime " << seconds_since(t0) << " s";
    report(5, "near-optimal beats max-satisfaction", pass, detail.str());
}

void criterion_6_low_penetration(const LotGraph& lot) {
    RouteMode mode = RouteMode::TwoWay;
    PointStats& no_lo = collect(lot, PolicyId::NearOptimal, mode, 0.1, 100);
    PointStats& no_hi = collect(lot, PolicyId::NearOptimal, mode, 0.9, 100);
    PointStats& rd_lo = collect(lot, PolicyId::Random, mode, 0.1, 100);
    PointStats& rd_hi = collect(lot, PolicyId::Random, mode, 0.9, 100);
    double no_diff = no_lo.mean() - no_hi.mean();
    double rd_diff = rd_lo.mean() - rd_hi.mean();
    double se = std::sqrt(no_lo.stderr_mean() * no_lo.stderr_mean() +
                          no_hi.stderr_mean() * no_hi.stderr_mean() +
                          rd_lo.stderr_mean() * rd_lo.stderr_mean() +
                          rd_hi.stderr_mean() * rd_hi.stderr_mean());
    bool pass = rd_diff - no_diff >= 2.0 * se;
    std::ostringstream d;
    d << "gamma 0.1->0.9 improvement: near-opt " << no_diff << ", random " << rd_diff
      << " (needs random - near-opt >= 2se = " << 2.0 * se << ")";
    report(6, "near-optimal robust at low penetration", pass, d.str());
}

void criterion_7_error_dynamics(const LotGraph& lot) {
    bool pass = true;
    std::ostringstream d;
    ExperimentConfig cfg = paper_config();
    for (PolicyId policy : {PolicyId::Random, PolicyId::Nearest, PolicyId::MaxSatisfaction,
                            PolicyId::NearOptimal}) {
        cfg.policy = policy;
        cfg.gamma = 0.5;
        cfg.replications = 20;
        RoutingTable routes(lot, cfg.mode);
        double final_hour = 0.0;
        for (int i = 0; i < 20; ++i) {
            ReplicationResult r = run_replication(cfg, routes, i, /*keep_series=*/true);
            if (r.series.front() != std::pair<double, double>{0.0, 1.0}) pass = false;
            std::vector<std::pair<double, double>> tail;
            double t0 = cfg.horizon_hours - 1.0, held = 1.0;
            for (const auto& [t, e] : r.series)
                if (t <= t0)
                    held = e;
                else
                    tail.emplace_back(t - t0, e);
            tail.insert(tail.begin(), {0.0, held});
            final_hour += time_avg_error(tail, 1.0) / 20.0;
        }
        if (!(final_hour < 0.8)) pass = false;
        d << to_string(policy) << " final-hour mean e = " << final_hour << "; ";
    }
    d << "e(0)=1.0 held for every replication";
    report(7, "error starts at 1 and drops", pass, d.str());
}

void criterion_8_determinism(const char* binary) {
    std::string cfg_path = "acceptance_sweep_config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"lot": {"aisles": 1, "spaces_per_aisle_side": 2}, "horizon_hours": 2.0,
                   "replications": 3, "seed": 77})";
    }
    auto run = [&](const std::string& out) {
        std::string cmd = std::string(binary) + " sweep --config " + cfg_path +
                          " --gammas 0.2 0.8 --out " + out + " --manifest " + out + ".manifest";
        return std::system(cmd.c_str());
    };
    bool pass = run("acc_sweep_a.csv") == 0 && run("acc_sweep_b.csv") == 0;
    std::string a, b;
    if (pass) {
        std::ifstream fa("acc_sweep_a.csv"), fb("acc_sweep_b.csv");
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        a = sa.str();
        b = sb.str();
        pass = !a.empty() && a == b;
    }
    report(8, "sweep determinism", pass,
           pass ? "two sweep runs produced byte-identical CSV (" +
                      std::to_string(a.size()) + " bytes)"
                : "CSV outputs differ or sweep failed");
}

void criterion_9_oscillation(const LotGraph& lot) {
    PointStats& one = collect(lot, PolicyId::NearOptimal, RouteMode::OneWay, 0.5, 100);
    PointStats& two = collect(lot, PolicyId::NearOptimal, RouteMode::TwoWay, 0.5, 100);
    auto avg = [](const std::vector<double>& xs) {
        double m = 0.0;
        for (double x : xs) m += x;
        return m / static_cast<double>(xs.size());
    };
    double s1 = avg(one.error_stds), s2 = avg(two.error_stds);
    std::ostringstream d;
    d << "within-replication std of e(t): one-way " << s1 << ", two-way " << s2 << " ("
      << (s1 < s2 ? "one-way smaller, matching the expected direction"
                  : "one-way not smaller; informational only")
      << ")";
    report(9, "oscillation comparison", true, d.str(), /*informational=*/true);
}

}  // namespace

int main(int argc, char** argv) {
    const char* binary = argc > 1 ? argv[1] : "./parksense";
    LotGraph lot = LotGraph::grid(4, 20);

    criterion_1_bayes();
    criterion_2_queueing();
    criterion_3_submodularity();
    criterion_4_decay();
    criterion_5_policy_ordering(lot);
    criterion_6_low_penetration(lot);
    criterion_7_error_dynamics(lot);
    criterion_8_determinism(binary);
    criterion_9_oscillation(lot);

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all gating criteria passed" << std::endl;
    return 0;
}
