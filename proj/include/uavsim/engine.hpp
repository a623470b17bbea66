#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "uavsim/error.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/planners.hpp"
#include "uavsim/trace.hpp"
#include "uavsim/voi.hpp"

namespace uavsim {

struct SimConfig {
    GridSpec grid;
    PolicyConfig policy;
    VoiParams voi;
    InitialRewardParams ir;
    double uav_speed = 1000.0;       // meters per round
    double encounter_radius = 200.0; // meters
    int dwell_period = 60;           // rounds
    int total_rounds = 4000;
    Cell start_cell{0, 0};
    int n_runs = 10;
    std::uint64_t base_seed = 1;

    void validate() const {
        grid.validate();
        policy.validate();
        voi.validate();
        ir.validate();
        if (!(uav_speed > 0.0)) throw config_error("sim: uav_speed must be positive");
        if (!(encounter_radius >= 0.0)) throw config_error("sim: encounter_radius must be nonnegative");
        if (dwell_period < 1) throw config_error("sim: dwell_period must be at least 1");
        if (total_rounds < 1) throw config_error("sim: total_rounds must be at least 1");
        if (n_runs < 1) throw config_error("sim: n_runs must be at least 1");
        if (!grid.contains(start_cell)) throw config_error("sim: start cell " + to_string(start_cell) + " outside grid");
    }
};

// Rounds needed to fly between two cell centers at `uav_speed`; staying put
// takes one round.
inline int travel_rounds(Cell from, Cell to, const GridSpec& grid, double uav_speed) {
    if (from == to) return 1;
    return static_cast<int>(std::ceil(center_distance(grid, from, to) / uav_speed));
}

// Per-round animal positions, linearly interpolated between fixes. An animal
// has no position before its first or after its last fix.
class AnimalTrack {
public:
    AnimalTrack() = default;
    explicit AnimalTrack(const AnimalTrace& trace) : id_(trace.animal_id) {
        for (const auto& s : trace.samples) {
            rounds_.push_back(s.round);
            points_.push_back(s.pos);
        }
    }

    const std::string& id() const { return id_; }

    std::optional<GeoPoint> at(int round) const {
        if (rounds_.empty() || round < rounds_.front() || round > rounds_.back()) return std::nullopt;
        const auto it = std::lower_bound(rounds_.begin(), rounds_.end(), round);
        const auto i = static_cast<std::size_t>(it - rounds_.begin());
        if (rounds_[i] == round) return points_[i];
        const double w = static_cast<double>(round - rounds_[i - 1]) / (rounds_[i] - rounds_[i - 1]);
        return GeoPoint{points_[i - 1].x + w * (points_[i].x - points_[i - 1].x),
                        points_[i - 1].y + w * (points_[i].y - points_[i - 1].y)};
    }

private:
    std::string id_;
    std::vector<int> rounds_;
    std::vector<GeoPoint> points_;
};

struct EncounterEpisode {
    std::size_t animal = 0;  // index into the scenario's tracks
    int open_round = 0;
    int close_round = 0;     // first round out of range; total_rounds + 1 if still open at the end
};

// Tracks contiguous intervals during which each animal is within `radius` of the UAV.
class EncounterLog {
public:
    EncounterLog(std::size_t animals, double radius) : open_(animals), radius_(radius) {}

    void observe(int round, GeoPoint uav, std::span<const std::optional<GeoPoint>> animals) {
        if (animals.size() != open_.size()) throw contract_violation("encounter log: animal count changed");
        for (std::size_t a = 0; a < animals.size(); ++a) {
            const bool inside = animals[a] && distance(*animals[a], uav) <= radius_;
            if (inside && !open_[a]) {
                open_[a] = episodes_.size();
                episodes_.push_back({a, round, -1});
            } else if (!inside && open_[a]) {
                episodes_[*open_[a]].close_round = round;
                open_[a].reset();
            }
        }
    }

    void finish(int end_round) {
        for (auto& slot : open_) {
            if (slot) {
                episodes_[*slot].close_round = end_round;
                slot.reset();
            }
        }
    }

    const std::vector<EncounterEpisode>& episodes() const { return episodes_; }

private:
    std::vector<std::optional<std::size_t>> open_;
    std::vector<EncounterEpisode> episodes_;
    double radius_;
};

// Everything a run consumes besides the config: the event stream and the
// animal movements used for encounter detection.
struct Scenario {
    std::vector<AnimalEvent> events;
    std::vector<AnimalTrack> tracks;
};

inline Scenario make_scenario(const SimConfig& cfg, std::span<const TraceSample> traces) {
    check_in_bounds(traces, cfg.grid);
    Scenario sc;
    sc.events = generate_events(traces, cfg.grid, cfg.dwell_period, cfg.ir);
    for (const auto& a : group_by_animal(traces)) sc.tracks.emplace_back(a);
    return sc;
}

struct RunResult {
    std::uint64_t seed = 0;
    PolicyKind policy = PolicyKind::mdp;
    std::vector<double> voi_timeline; // cumulative collected VoI after each round 0..total_rounds
    std::vector<int> delays;          // per collected event, in collection order
    std::size_t encounters = 0;
    std::size_t uncollected_count = 0;
    std::vector<AnimalEvent> events;  // events created within the horizon, with collection rounds
    std::vector<double> event_voi;    // VoI credited per event (0 when uncollected)
    std::vector<std::string> animal_ids;
    std::vector<EncounterEpisode> episodes;
    std::optional<QTable> final_q;

    double final_voi() const { return voi_timeline.empty() ? 0.0 : voi_timeline.back(); }
};

struct RunHooks {
    // Called after each arrival with the round and the planner.
    std::function<void(int, const Planner&)> on_decision;
};

// Round loop. Each round: buffer newly created events, advance the UAV one
// round along its straight-line leg, and on arrival collect the cell's buffer,
// report the observation to the planner and take its next target. Encounters
// are sampled at the UAV's end-of-round position.
inline RunResult run(const SimConfig& cfg, const Scenario& scenario, std::uint64_t seed, const RunHooks& hooks = {}) {
    cfg.validate();
    const GridSpec& grid = cfg.grid;
    auto planner = make_planner(cfg.policy, grid, cfg.start_cell, seed);

    RunResult res;
    res.seed = seed;
    res.policy = cfg.policy.kind;
    res.voi_timeline.assign(static_cast<std::size_t>(cfg.total_rounds) + 1, 0.0);
    for (const auto& t : scenario.tracks) res.animal_ids.push_back(t.id());

    for (const auto& e : scenario.events) {
        if (!grid.contains(e.cell)) throw contract_violation("event " + std::to_string(e.id) + " lies outside the grid");
        if (e.created_round <= cfg.total_rounds) res.events.push_back(e);
    }
    std::stable_sort(res.events.begin(), res.events.end(),
                     [](const AnimalEvent& l, const AnimalEvent& r) { return l.created_round < r.created_round; });
    res.event_voi.assign(res.events.size(), 0.0);

    std::vector<std::vector<std::size_t>> buffers(grid.size());
    std::size_t next_event = 0;

    Cell cell = cfg.start_cell;
    Cell target = cfg.start_cell;
    GeoPoint pos = grid.center(cell);
    int rounds_to_arrival = 0;

    EncounterLog encounters(scenario.tracks.size(), cfg.encounter_radius);
    std::vector<std::optional<GeoPoint>> animal_pos(scenario.tracks.size());
    double cumulative = 0.0;

    for (int round = 0; round <= cfg.total_rounds; ++round) {
        while (next_event < res.events.size() && res.events[next_event].created_round <= round) {
            const auto& e = res.events[next_event];
            buffers[grid.index(e.cell)].push_back(next_event);
            ++next_event;
        }

        if (rounds_to_arrival > 0) {
            const GeoPoint goal = grid.center(target);
            const double left = distance(pos, goal);
            --rounds_to_arrival;
            if (rounds_to_arrival == 0 || left <= cfg.uav_speed) {
                pos = goal;
            } else {
                pos = {pos.x + (goal.x - pos.x) * cfg.uav_speed / left, pos.y + (goal.y - pos.y) * cfg.uav_speed / left};
            }
        }

        if (rounds_to_arrival == 0) {
            cell = target;
            auto& buffer = buffers[grid.index(cell)];
            double ir_sum = 0.0;
            for (std::size_t idx : buffer) {
                auto& e = res.events[idx];
                if (e.collected_round) throw contract_violation("event collected twice");
                e.collected_round = round;
                const int delay = round - e.created_round;
                const double v = voi_at(e.initial_reward, cfg.voi.decay_rate, delay);
                res.delays.push_back(delay);
                res.event_voi[idx] = v;
                cumulative += v;
                ir_sum += e.initial_reward;
            }
            buffer.clear();

            planner->observe({cell, ir_sum, ir_sum > 0.0});
            target = planner->next_target(cell);
            if (!grid.contains(target)) {
                throw contract_violation(std::string(policy_name(planner->kind())) + " planner chose cell " +
                                         to_string(target) + " outside the grid at round " + std::to_string(round));
            }
            rounds_to_arrival = travel_rounds(cell, target, grid, cfg.uav_speed);
            if (hooks.on_decision) hooks.on_decision(round, *planner);
        }

        for (std::size_t a = 0; a < scenario.tracks.size(); ++a) animal_pos[a] = scenario.tracks[a].at(round);
        encounters.observe(round, pos, animal_pos);

        res.voi_timeline[static_cast<std::size_t>(round)] = cumulative;
    }

    encounters.finish(cfg.total_rounds + 1);
    res.episodes = encounters.episodes();
    res.encounters = res.episodes.size();
    for (const auto& e : res.events) {
        if (!e.collected_round) ++res.uncollected_count;
    }
    if (const QTable* q = planner->q_table()) res.final_q = *q;
    return res;
}

// Where the traces for each run come from: a fixed set (a real dataset) or the
// synthetic hotspot generator reseeded per run.
struct Dataset {
    std::variant<std::vector<TraceSample>, HotspotTraceParams> source;

    std::vector<TraceSample> traces_for(std::uint64_t seed) const {
        if (const auto* fixed = std::get_if<std::vector<TraceSample>>(&source)) return *fixed;
        auto params = std::get<HotspotTraceParams>(source);
        params.seed = seed;
        return synthesize_hotspot_traces(params);
    }
};

inline RunResult run(const SimConfig& cfg, const Dataset& data, std::uint64_t seed, const RunHooks& hooks = {}) {
    cfg.validate();
    const auto traces = data.traces_for(seed);
    return run(cfg, make_scenario(cfg, traces), seed, hooks);
}

// Runs i = 0..n_runs-1 with seed base_seed + i on up to `workers` threads.
// Output order follows the run index regardless of scheduling. `hooks_for`
// supplies per-run hooks by seed.
inline std::vector<RunResult> run_many(const SimConfig& cfg, const Dataset& data, unsigned workers = 1,
                                       const std::function<RunHooks(std::uint64_t)>& hooks_for = {}) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.n_runs);
    std::vector<RunResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                const std::uint64_t seed = cfg.base_seed + i;
                results[i] = run(cfg, data, seed, hooks_for ? hooks_for(seed) : RunHooks{});
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace uavsim
