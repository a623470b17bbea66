#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavsim/error.hpp"
#include "uavsim/geometry.hpp"

namespace uavsim {

// Eight compass moves plus stay. North is +row (+y), east is +col (+x).
enum class Action : std::uint8_t { north, east, south, west, northeast, southeast, southwest, northwest, stay };

inline constexpr std::size_t action_count = 9;

inline constexpr std::array<Action, action_count> all_actions{
    Action::north,     Action::east,      Action::south,     Action::west, Action::northeast,
    Action::southeast, Action::southwest, Action::northwest, Action::stay};

inline constexpr std::string_view action_name(Action a) {
    constexpr std::array<std::string_view, action_count> names{
        "north", "east", "south", "west", "northeast", "southeast", "southwest", "northwest", "stay"};
    return names[static_cast<std::size_t>(a)];
}

inline constexpr Cell action_offset(Action a) {
    switch (a) {
    case Action::north: return {1, 0};
    case Action::east: return {0, 1};
    case Action::south: return {-1, 0};
    case Action::west: return {0, -1};
    case Action::northeast: return {1, 1};
    case Action::southeast: return {-1, 1};
    case Action::southwest: return {-1, -1};
    case Action::northwest: return {1, -1};
    case Action::stay: return {0, 0};
    }
    return {0, 0};
}

inline Cell apply(Cell c, Action a) {
    const Cell d = action_offset(a);
    return {c.row + d.row, c.col + d.col};
}

inline bool is_valid(const GridSpec& grid, Cell c, Action a) {
    return grid.contains(c) && grid.contains(apply(c, a));
}

// Actions whose target stays inside the grid, in `all_actions` order.
inline std::vector<Action> valid_actions(const GridSpec& grid, Cell c) {
    std::vector<Action> out;
    out.reserve(action_count);
    for (Action a : all_actions) {
        if (is_valid(grid, c, a)) out.push_back(a);
    }
    return out;
}

// Action that moves from `from` to the neighbouring (or same) cell `to`.
inline Action action_towards(Cell from, Cell to) {
    for (Action a : all_actions) {
        if (apply(from, a) == to) return a;
    }
    throw contract_violation("cell " + to_string(to) + " is not adjacent to " + to_string(from));
}

// Q(s, a) for every in-grid (cell, action) pair, all starting at zero.
class QTable {
public:
    explicit QTable(const GridSpec& grid) : grid_(grid), values_(grid.size() * action_count, 0.0) {}

    const GridSpec& grid() const { return grid_; }

    bool valid(Cell c, Action a) const { return is_valid(grid_, c, a); }

    double at(Cell c, Action a) const { return values_[slot(c, a)]; }
    void set(Cell c, Action a, double v) { values_[slot(c, a)] = v; }

    double max_value(Cell c) const {
        double best = -HUGE_VAL;
        for (Action a : all_actions) {
            if (valid(c, a)) best = std::max(best, at(c, a));
        }
        return best;
    }

    // Visits valid pairs in (row, col, action) order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            const Cell c = grid_.cell_at(i);
            for (Action a : all_actions) {
                if (valid(c, a)) f(c, a, values_[i * action_count + static_cast<std::size_t>(a)]);
            }
        }
    }

    std::size_t entry_count() const {
        std::size_t n = 0;
        for_each([&](Cell, Action, double) { ++n; });
        return n;
    }

private:
    std::size_t slot(Cell c, Action a) const {
        if (!valid(c, a))
            throw contract_violation("no Q entry for action " + std::string(action_name(a)) + " at " + to_string(c));
        return grid_.index(c) * action_count + static_cast<std::size_t>(a);
    }

    GridSpec grid_;
    std::vector<double> values_;
};

struct PolicyObservation {
    Cell arrived_cell;
    double collected_ir_sum = 0.0;
    bool had_events = false;
};

// Summed initial rewards of what was collected, or the penalty on an empty visit.
inline double reward(const PolicyObservation& obs, double r_negative) {
    return obs.had_events ? obs.collected_ir_sum : r_negative;
}

// Q(s,a) <- r + gamma * max_a' Q(s', a'), no learning rate.
inline void q_update(QTable& q, Cell s, Action a, double r, Cell s_next, double gamma) {
    if (!q.valid(s, a))
        throw contract_violation("q_update: invalid pair " + to_string(s) + "/" + std::string(action_name(a)));
    if (apply(s, a) != s_next)
        throw contract_violation("q_update: successor " + to_string(s_next) + " is not where " +
                                 std::string(action_name(a)) + " leads from " + to_string(s));
    q.set(s, a, r + gamma * q.max_value(s_next));
}

template <class Urbg>
Action uniform_choice(std::span<const Action> actions, Urbg& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
    return actions[pick(rng)];
}

// epsilon-greedy over the valid actions at s; exact ties at the maximum are
// broken uniformly at random.
template <class Urbg>
Action mdp_next_action(const QTable& q, Cell s, double epsilon, Urbg& rng) {
    const auto actions = valid_actions(q.grid(), s);
    if (actions.empty()) throw contract_violation("mdp_next_action: cell " + to_string(s) + " outside grid");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < epsilon) return uniform_choice<Urbg>(actions, rng);

    const double best = q.max_value(s);
    std::vector<Action> ties;
    for (Action a : actions) {
        if (q.at(s, a) == best) ties.push_back(a);
    }
    return uniform_choice<Urbg>(ties, rng);
}

// Move (or stay) towards the neighbour with the largest remembered IR sum;
// `ir_memory` is indexed by GridSpec::index.
template <class Urbg>
Action greedy_next_action(std::span<const double> ir_memory, const GridSpec& grid, Cell s, Urbg& rng) {
    if (ir_memory.size() != grid.size()) throw contract_violation("greedy memory does not match grid size");
    const auto actions = valid_actions(grid, s);
    if (actions.empty()) throw contract_violation("greedy_next_action: cell " + to_string(s) + " outside grid");
    double best = -HUGE_VAL;
    std::vector<Action> ties;
    for (Action a : actions) {
        const double v = ir_memory[grid.index(apply(s, a))];
        if (v > best) {
            best = v;
            ties.assign(1, a);
        } else if (v == best) {
            ties.push_back(a);
        }
    }
    return uniform_choice<Urbg>(ties, rng);
}

// Any cell of the grid, uniformly.
template <class Urbg>
Cell random_next_cell(const GridSpec& grid, Urbg& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    return grid.cell_at(pick(rng));
}

} // namespace uavsim
