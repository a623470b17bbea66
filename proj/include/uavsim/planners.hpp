#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "uavsim/error.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/policy.hpp"
#include "uavsim/tsp.hpp"

namespace uavsim {

enum class PolicyKind { mdp, greedy, tsp, random };

inline constexpr std::string_view policy_name(PolicyKind k) {
    switch (k) {
    case PolicyKind::mdp: return "mdp";
    case PolicyKind::greedy: return "greedy";
    case PolicyKind::tsp: return "tsp";
    case PolicyKind::random: return "random";
    }
    return "?";
}

inline PolicyKind parse_policy_kind(std::string_view s) {
    for (PolicyKind k : {PolicyKind::mdp, PolicyKind::greedy, PolicyKind::tsp, PolicyKind::random}) {
        if (policy_name(k) == s) return k;
    }
    throw config_error("unknown policy '" + std::string(s) + "' (expected mdp, greedy, tsp or random)");
}

struct PolicyConfig {
    PolicyKind kind = PolicyKind::mdp;
    double epsilon = 0.2;
    double gamma = 0.9;
    double r_negative = -1.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw config_error("policy: epsilon must be in [0, 1]");
        if (!(gamma >= 0.0 && gamma < 1.0)) throw config_error("policy: gamma must be in [0, 1)");
        if (!std::isfinite(r_negative)) throw config_error("policy: r_negative must be finite");
    }
};

// A path planner owns its learning state and random stream for one run. The
// engine reports each arrival through observe() and then asks for the next
// target cell.
class Planner {
public:
    virtual ~Planner() = default;

    virtual void observe(const PolicyObservation& obs) = 0;
    virtual Cell next_target(Cell current) = 0;
    virtual PolicyKind kind() const = 0;

    // Learned values, for planners that have them.
    virtual const QTable* q_table() const { return nullptr; }
};

class MdpPlanner final : public Planner {
public:
    MdpPlanner(const GridSpec& grid, const PolicyConfig& cfg, std::uint64_t seed)
        : q_(grid), cfg_(cfg), rng_(seed) {}

    void observe(const PolicyObservation& obs) override {
        if (pending_) {
            q_update(q_, pending_->from, pending_->action, reward(obs, cfg_.r_negative), obs.arrived_cell, cfg_.gamma);
            pending_.reset();
        }
    }

    Cell next_target(Cell current) override {
        const Action a = mdp_next_action(q_, current, cfg_.epsilon, rng_);
        pending_ = Step{current, a};
        return apply(current, a);
    }

    PolicyKind kind() const override { return PolicyKind::mdp; }
    const QTable* q_table() const override { return &q_; }

private:
    struct Step {
        Cell from;
        Action action;
    };
    QTable q_;
    PolicyConfig cfg_;
    std::mt19937_64 rng_;
    std::optional<Step> pending_;
};

// Remembers the IR sum found at each cell's latest visit (0 when nothing was
// there) and moves to the best remembered neighbour.
class GreedyPlanner final : public Planner {
public:
    GreedyPlanner(const GridSpec& grid, std::uint64_t seed) : grid_(grid), memory_(grid.size(), 0.0), rng_(seed) {}

    void observe(const PolicyObservation& obs) override {
        memory_[grid_.index(obs.arrived_cell)] = obs.had_events ? obs.collected_ir_sum : 0.0;
    }

    Cell next_target(Cell current) override {
        return apply(current, greedy_next_action(std::span<const double>(memory_), grid_, current, rng_));
    }

    PolicyKind kind() const override { return PolicyKind::greedy; }
    std::span<const double> memory() const { return memory_; }

private:
    GridSpec grid_;
    std::vector<double> memory_;
    std::mt19937_64 rng_;
};

// Cycles through a fixed shortest closed tour.
class TspPlanner final : public Planner {
public:
    TspPlanner(const GridSpec& grid, Cell start) : tour_(tsp_tour(grid, start)) {}

    void observe(const PolicyObservation&) override {}

    Cell next_target(Cell current) override {
        if (tour_.size() == 1) return tour_.front();
        if (tour_[cursor_] != current) {
            const auto it = std::find(tour_.begin(), tour_.end(), current);
            if (it == tour_.end()) throw contract_violation("tsp: current cell is not on the tour");
            cursor_ = static_cast<std::size_t>(it - tour_.begin());
        }
        cursor_ = (cursor_ + 1) % tour_.size();
        return tour_[cursor_];
    }

    PolicyKind kind() const override { return PolicyKind::tsp; }
    const std::vector<Cell>& tour() const { return tour_; }

private:
    std::vector<Cell> tour_;
    std::size_t cursor_ = 0;
};

class RandomPlanner final : public Planner {
public:
    RandomPlanner(const GridSpec& grid, std::uint64_t seed) : grid_(grid), rng_(seed) {}

    void observe(const PolicyObservation&) override {}
    Cell next_target(Cell) override { return random_next_cell(grid_, rng_); }
    PolicyKind kind() const override { return PolicyKind::random; }

private:
    GridSpec grid_;
    std::mt19937_64 rng_;
};

// Planner random streams depend on the run seed and the configured rng_seed,
// not on the policy kind, so every policy sees the same stream for a seed.
inline std::uint64_t planner_seed(std::uint64_t run_seed, const PolicyConfig& cfg) {
    std::seed_seq seq{static_cast<std::uint32_t>(run_seed), static_cast<std::uint32_t>(run_seed >> 32),
                      static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      0x9a7au};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

inline std::unique_ptr<Planner> make_planner(const PolicyConfig& cfg, const GridSpec& grid, Cell start,
                                             std::uint64_t run_seed) {
    cfg.validate();
    const std::uint64_t seed = planner_seed(run_seed, cfg);
    switch (cfg.kind) {
    case PolicyKind::mdp: return std::make_unique<MdpPlanner>(grid, cfg, seed);
    case PolicyKind::greedy: return std::make_unique<GreedyPlanner>(grid, seed);
    case PolicyKind::tsp: return std::make_unique<TspPlanner>(grid, start);
    case PolicyKind::random: return std::make_unique<RandomPlanner>(grid, seed);
    }
    throw contract_violation("unknown policy kind");
}

} // namespace uavsim
