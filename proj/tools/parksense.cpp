#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "parksense/harness.hpp"
#include "parksense/validate.hpp"

namespace {

constexpr const char* kVersion = "parksense 0.1.0";
constexpr int kTraceSchema = 1;

using namespace parksense;

struct CommonFlags {
    std::string config_path;
    std::string policy;
    std::string mode;
    double gamma = -1.0;
    long long seed = -1;
    int reps = -1;
    std::string out_path;
    std::string manifest_path;
};

ExperimentConfig resolve(const CommonFlags& f) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = ExperimentConfig::from_json_file(f.config_path);
    if (!f.policy.empty()) cfg.policy = policy_from_string(f.policy);
    if (!f.mode.empty()) cfg.mode = mode_from_string(f.mode);
    if (f.gamma >= 0.0) cfg.gamma = f.gamma;
    if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
    if (f.reps >= 0) cfg.replications = f.reps;
    cfg.validate();
    return cfg;
}

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
    return buf;
}

// Written before any output row; replaying it reproduces outputs.
void write_manifest(const std::string& path, const std::string& command,
                    const ExperimentConfig& cfg, const std::vector<std::string>& artifacts) {
    nlohmann::json m;
    m["schema"] = kTraceSchema;
    m["tool"] = kVersion;
    m["command"] = command;
    m["config"] = nlohmann::json::parse(cfg.to_json());
    m["seed"] = cfg.seed;
    m["artifacts"] = artifacts;
    m["started"] = iso_now();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << m.dump(2) << '\n';
}

nlohmann::json counters_json(const Counters& c) {
    return {{"probe_arrivals", c.probe_arrivals},   {"normal_arrivals", c.normal_arrivals},
            {"probe_departures", c.probe_departures}, {"normal_departures", c.normal_departures},
            {"balked", c.balked}};
}

int cmd_run(const CommonFlags& flags, bool trace, bool trace_beliefs) {
    ExperimentConfig cfg = resolve(flags);
    std::string trace_path = flags.out_path.empty() ? "trace.jsonl" : flags.out_path;
    std::string manifest_path =
        flags.manifest_path.empty() ? trace_path + ".manifest.json" : flags.manifest_path;

    std::vector<std::string> artifacts;
    if (trace) artifacts.push_back(trace_path);
    write_manifest(manifest_path, "run", cfg, artifacts);

    LotGraph lot = make_lot(cfg);
    RoutingTable routes(lot, cfg.mode);
    auto rng = replication_rng(cfg.seed, 0);
    BeliefState belief(lot.space_count(), cfg.belief);
    DayResult day = run_day(cfg, routes, belief, rng, trace_beliefs);

    if (trace) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot write trace: " + trace_path);
        for (size_t k = 0; k < day.trace.size(); ++k) {
            const SimEvent& ev = day.trace[k];
            nlohmann::json line{{"schema", kTraceSchema}, {"t", ev.time},
                                {"kind", to_string(ev.kind)}, {"car", ev.car},
                                {"error", ev.error}};
            if (ev.space != 0) line["space"] = ev.space;
            if (trace_beliefs) line["beliefs"] = day.belief_snapshots[k];
            out << line.dump() << '\n';
        }
    }

    nlohmann::json summary;
    summary["schema"] = kTraceSchema;
    summary["policy"] = to_string(cfg.policy);
    summary["mode"] = to_string(cfg.mode);
    summary["gamma"] = cfg.gamma;
    summary["seed"] = cfg.seed;
    summary["mean_error"] = time_avg_error(day.error_series, cfg.horizon_hours);
    summary["error_std"] = time_weighted_std(day.error_series, cfg.horizon_hours);
    summary["events"] = day.trace.size();
    summary["counters"] = counters_json(day.counters);
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::vector<std::string>& policies,
              const std::vector<double>& gammas, const std::vector<std::string>& modes) {
    ExperimentConfig cfg = resolve(flags);
    SweepSpec spec;
    if (!policies.empty()) {
        spec.policies.clear();
        for (const auto& p : policies) spec.policies.push_back(policy_from_string(p));
    }
    if (!modes.empty()) {
        spec.modes.clear();
        for (const auto& m : modes) spec.modes.push_back(mode_from_string(m));
    }
    if (!gammas.empty()) {
        for (double g : gammas)
            if (g < 0.0 || g > 1.0) throw ConfigError("gamma out of range [0,1]");
        spec.gammas = gammas;
    }

    std::string manifest_path =
        flags.manifest_path.empty()
            ? (flags.out_path.empty() ? "sweep.manifest.json" : flags.out_path + ".manifest.json")
            : flags.manifest_path;
    std::vector<std::string> artifacts;
    if (!flags.out_path.empty()) artifacts.push_back(flags.out_path);
    write_manifest(manifest_path, "sweep", cfg, artifacts);

    std::string csv = sweep_csv(sweep(cfg, spec));
    if (flags.out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(flags.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write CSV: " + flags.out_path);
        out << csv;
    }
    return 0;
}

int cmd_validate(const CommonFlags& flags, int oscillation_reps, double perturb_sensor) {
    ExperimentConfig cfg = resolve(flags);
    auto checks = run_all_checks(cfg, oscillation_reps, perturb_sensor);
    bool all_pass = true;
    for (const CheckResult& c : checks) {
        const char* tag = c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL");
        std::cout << tag << " " << c.name << ": " << c.detail << '\n';
        if (!c.informational && !c.pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parking-guidance policy simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonFlags flags;
    bool trace = false, trace_beliefs = false;
    std::vector<std::string> policies, modes;
    std::vector<double> gammas;
    int oscillation_reps = 100;
    double perturb_sensor = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_path, "JSON config file");
        sub->add_option("--policy", flags.policy,
                        "random|nearest|max-satisfaction|near-optimal");
        sub->add_option("--mode", flags.mode, "one-way|two-way");
        sub->add_option("--gamma", flags.gamma, "probe-car fraction in [0,1]");
        sub->add_option("--seed", flags.seed, "master seed");
        sub->add_option("--reps", flags.reps, "replication count");
        sub->add_option("--out", flags.out_path, "output path");
        sub->add_option("--manifest", flags.manifest_path, "manifest path");
    };

    CLI::App* run = app.add_subcommand("run", "single replication");
    add_common(run);
    run->add_flag("--trace", trace, "write JSON-lines event trace");
    run->add_flag("--trace-beliefs", trace_beliefs, "include belief snapshots in the trace");

    CLI::App* sw = app.add_subcommand("sweep", "policy x gamma x mode table");
    add_common(sw);
    sw->add_option("--policies", policies, "subset of policies to sweep");
    sw->add_option("--gammas", gammas, "gamma values to sweep");
    sw->add_option("--modes", modes, "route modes to sweep");

    CLI::App* val = app.add_subcommand("validate", "run the built-in oracle checks");
    add_common(val);
    val->add_option("--oscillation-reps", oscillation_reps,
                    "replications for the oscillation report (0 skips it)");
    val->add_option("--perturb-sensor", perturb_sensor, "oracle perturbation canary")
        ->group("");  // hidden test hook

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(flags, trace, trace_beliefs);
        if (sw->parsed()) return cmd_sweep(flags, policies, gammas, modes);
        if (val->parsed()) return cmd_validate(flags, oscillation_reps, perturb_sensor);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const LotError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
