#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uavsim/config.hpp"
#include "uavsim/engine.hpp"
#include "uavsim/io.hpp"
#include "uavsim/metrics.hpp"

namespace uavsim {

struct RunOptions {
    unsigned workers = 1;
    std::optional<int> dump_q_every; // rounds between Q-table snapshots of MDP runs
};

inline std::string seed_stem(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

// Runs every policy of the experiment on the same per-seed traces and writes
// runs/<policy>/seed_<n>_{voi,events,encounters}.csv (plus _qtable.csv for
// MDP), summary.csv and voi_curve.csv under the output directory. Prints a
// summary table ordered by mean final VoI.
inline std::vector<PolicySummary> cmd_run(const ExperimentSpec& spec, const RunOptions& opts, std::ostream& log) {
    const auto& out_dir = spec.output_dir;
    std::vector<PolicySummary> summaries;
    std::vector<PolicyKind> kinds;
    std::vector<std::vector<double>> curves;

    for (const auto& policy : spec.policies) {
        SimConfig cfg = spec.sim;
        cfg.policy = policy;
        const auto dir = out_dir / "runs" / std::string(policy_name(policy.kind));

        std::function<RunHooks(std::uint64_t)> hooks_for;
        if (opts.dump_q_every && policy.kind == PolicyKind::mdp) {
            const int every = *opts.dump_q_every;
            if (every < 1) throw config_error("--dump-q-every must be positive");
            hooks_for = [dir, every](std::uint64_t seed) {
                auto file = std::make_shared<std::ofstream>(open_output(dir / (seed_stem(seed) + "_qtable_rounds.csv")));
                *file << "round,row,col,action,q_value\n";
                auto next_mark = std::make_shared<int>(0);
                RunHooks hooks;
                hooks.on_decision = [file, next_mark, every](int round, const Planner& p) {
                    if (round < *next_mark || !p.q_table()) return;
                    write_qtable(*file, *p.q_table(), round);
                    *next_mark = (round / every + 1) * every;
                };
                return hooks;
            };
        }

        const auto results = run_many(cfg, spec.dataset, opts.workers, hooks_for);
        for (const auto& r : results) {
            const auto stem = dir / seed_stem(r.seed);
            auto voi = open_output(stem.string() + "_voi.csv");
            write_voi_timeline(voi, r);
            auto events = open_output(stem.string() + "_events.csv");
            write_event_log(events, r);
            auto enc = open_output(stem.string() + "_encounters.csv");
            write_encounters(enc, r);
            if (r.final_q) {
                auto q = open_output(stem.string() + "_qtable.csv");
                q << "row,col,action,q_value\n";
                write_qtable(q, *r.final_q);
            }
        }
        summaries.push_back(summarize(policy.kind, results));
        kinds.push_back(policy.kind);
        curves.push_back(mean_voi_curve(results));
    }

    std::vector<PolicySummary> ordered = summaries;
    std::stable_sort(ordered.begin(), ordered.end(), [](const PolicySummary& a, const PolicySummary& b) {
        return a.final_voi.mean > b.final_voi.mean;
    });

    {
        auto f = open_output(out_dir / "summary.csv");
        write_summary(f, ordered);
        auto c = open_output(out_dir / "voi_curve.csv");
        write_voi_curves(c, kinds, curves);
    }

    log << std::left << std::setw(8) << "policy" << std::right << std::setw(12) << "final VoI" << std::setw(10)
        << "stddev" << std::setw(10) << "median" << std::setw(8) << "q3" << std::setw(12) << "encounters"
        << std::setw(8) << "std" << '\n';
    for (const auto& s : ordered) {
        log << std::left << std::setw(8) << policy_name(s.policy) << std::right << std::fixed << std::setprecision(1)
            << std::setw(12) << s.final_voi.mean << std::setw(10) << s.final_voi.stddev;
        if (s.delays) log << std::setw(10) << s.delays->median << std::setw(8) << s.delays->q3;
        else log << std::setw(10) << "-" << std::setw(8) << "-";
        log << std::setw(12) << s.encounters.mean << std::setw(8) << s.encounters.stddev << '\n';
    }
    log.unsetf(std::ios::floatfield);
    return ordered;
}

inline SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "epsilon") return SweepAxis::epsilon;
    if (s == "grid") return SweepAxis::grid;
    throw config_error("unknown sweep axis '" + s + "' (expected epsilon or grid)");
}

// Sweeps the first policy of the experiment and writes sweep.csv.
inline std::vector<SweepRow> cmd_sweep(const ExperimentSpec& spec, SweepAxis axis, const std::vector<double>& values,
                                       const RunOptions& opts, std::ostream& log) {
    SimConfig cfg = spec.sim;
    cfg.policy = spec.policies.front();
    for (double v : values) with_axis_value(cfg, axis, v).validate();
    const auto rows = sweep(cfg, spec.dataset, axis, values, opts.workers);
    auto f = open_output(spec.output_dir / "sweep.csv");
    write_sweep(f, rows);

    log << "sweep of " << (axis == SweepAxis::epsilon ? "epsilon" : "grid side") << " for policy "
        << policy_name(cfg.policy.kind) << '\n';
    for (const auto& r : rows) {
        log << std::setw(8) << r.value << std::fixed << std::setprecision(1) << std::setw(12) << r.mean_final_voi
            << std::setw(10) << r.stddev_final_voi << '\n';
        log.unsetf(std::ios::floatfield);
    }
    return rows;
}

struct GenOptions {
    std::uint64_t seed = 1;
    int animals = 5;
    int hotspots = 2;
    int rounds = 4000;
    int sample_interval = 10;
    double width = 10000.0;
    double height = 10000.0;
    double stddev = 150.0;
    double switch_prob = 0.01;
    int min_dwell = 240;
    std::filesystem::path out = "traces.csv";
};

inline HotspotTraceParams gen_params(const GenOptions& o) {
    HotspotTraceParams p;
    p.seed = o.seed;
    p.animals = o.animals;
    p.hotspots = default_hotspots(o.hotspots, o.width, o.height, o.stddev);
    p.min_dwell_rounds = o.min_dwell;
    p.switch_prob = o.switch_prob;
    p.total_rounds = o.rounds;
    p.sample_interval = o.sample_interval;
    p.area_width = o.width;
    p.area_height = o.height;
    return p;
}

inline std::size_t cmd_gen(const GenOptions& opts) {
    const auto samples = synthesize_hotspot_traces(gen_params(opts));
    auto f = open_output(opts.out);
    write_trace_csv(f, samples);
    if (!f) throw config_error("failed writing '" + opts.out.string() + "'");
    return samples.size();
}

} // namespace uavsim
