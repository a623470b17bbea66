#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "uavsim/error.hpp"
#include "uavsim/geometry.hpp"

namespace uavsim {

inline constexpr std::size_t held_karp_max_cells = 20;

// Length of the closed tour. Edge lengths are summed in ascending order so
// tours made of the same edge lengths report bit-identical totals.
inline double tour_length(const GridSpec& grid, std::span<const Cell> tour) {
    if (tour.size() < 2) return 0.0;
    std::vector<double> edges;
    edges.reserve(tour.size());
    for (std::size_t i = 0; i < tour.size(); ++i) {
        edges.push_back(center_distance(grid, tour[i], tour[(i + 1) % tour.size()]));
    }
    std::sort(edges.begin(), edges.end());
    return std::accumulate(edges.begin(), edges.end(), 0.0);
}

// Exact minimum Hamiltonian cycle over n nodes (row-major distance matrix),
// starting at node 0. Ties resolve to the lowest node index at each step.
inline std::vector<std::size_t> held_karp(std::span<const double> dist, std::size_t n) {
    if (dist.size() != n * n) throw contract_violation("held_karp: distance matrix is not n x n");
    if (n == 0) return {};
    if (n <= 2) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        return order;
    }
    if (n > held_karp_max_cells) throw contract_violation("held_karp: too many nodes for the exact solver");

    // Subsets of nodes 1..n-1 as bitmasks over m = n-1 bits; node j+1 is bit j.
    const std::size_t m = n - 1;
    const std::size_t subsets = std::size_t{1} << m;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(subsets * m, inf);
    std::vector<std::uint8_t> parent(subsets * m, 0xff);
    auto d = [&](std::size_t a, std::size_t b) { return dist[a * n + b]; };

    for (std::size_t j = 0; j < m; ++j) cost[(std::size_t{1} << j) * m + j] = d(0, j + 1);

    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const double here = cost[mask * m + j];
            if (here == inf) continue;
            for (std::size_t k = 0; k < m; ++k) {
                if (mask & (std::size_t{1} << k)) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const double cand = here + d(j + 1, k + 1);
                if (cand < cost[next * m + k]) {
                    cost[next * m + k] = cand;
                    parent[next * m + k] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    const std::size_t full = subsets - 1;
    double best = inf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double cand = cost[full * m + j] + d(j + 1, 0);
        if (cand < best) {
            best = cand;
            last = j;
        }
    }

    std::vector<std::size_t> order(n);
    std::size_t mask = full;
    std::size_t j = last;
    for (std::size_t pos = n - 1; pos >= 1; --pos) {
        order[pos] = j + 1;
        const std::size_t prev = parent[mask * m + j];
        mask &= ~(std::size_t{1} << j);
        j = prev;
    }
    order[0] = 0;
    return order;
}

// Row-by-row boustrophedon over the grid starting at (0, 0).
inline std::vector<Cell> serpentine_tour(const GridSpec& grid) {
    std::vector<Cell> out;
    out.reserve(grid.size());
    for (int r = 0; r < grid.rows; ++r) {
        for (int k = 0; k < grid.cols; ++k) out.push_back({r, r % 2 == 0 ? k : grid.cols - 1 - k});
    }
    return out;
}

// Closed tour over every cell center, beginning at `start`. Exact (Held-Karp)
// up to held_karp_max_cells cells, serpentine beyond. Of the two traversal
// directions, the one whose second cell is lexicographically smaller is used.
inline std::vector<Cell> tsp_tour(const GridSpec& grid, Cell start = {0, 0}) {
    if (!grid.contains(start)) throw contract_violation("tsp_tour: start cell outside grid");
    std::vector<Cell> cycle;
    if (grid.size() <= held_karp_max_cells) {
        const std::size_t n = grid.size();
        std::vector<double> dist(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) dist[a * n + b] = center_distance(grid, grid.cell_at(a), grid.cell_at(b));
        for (std::size_t i : held_karp(dist, n)) cycle.push_back(grid.cell_at(i));
    } else {
        cycle = serpentine_tour(grid);
    }

    const auto it = std::find(cycle.begin(), cycle.end(), start);
    std::rotate(cycle.begin(), it, cycle.end());
    if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
    return cycle;
}

} // namespace uavsim
