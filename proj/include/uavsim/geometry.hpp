#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <string>

#include "uavsim/error.hpp"

namespace uavsim {

// Planar position in meters relative to the south-west corner of the area.
struct GeoPoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const GeoPoint&) const = default;
};

inline double distance(GeoPoint a, GeoPoint b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Cell {
    int row = 0;
    int col = 0;

    auto operator<=>(const Cell&) const = default;
};

inline std::string to_string(Cell c) {
    return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

// Rectangular area split into rows x cols equal cells. Row r covers
// y in [r*cell_height, (r+1)*cell_height), column c likewise along x.
struct GridSpec {
    double area_width = 10000.0;
    double area_height = 10000.0;
    int rows = 4;
    int cols = 4;

    double cell_width() const { return area_width / cols; }
    double cell_height() const { return area_height / rows; }
    std::size_t size() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }

    bool contains(Cell c) const { return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols; }
    bool contains(GeoPoint p) const {
        return p.x >= 0.0 && p.x <= area_width && p.y >= 0.0 && p.y <= area_height;
    }

    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c.col);
    }
    Cell cell_at(std::size_t i) const {
        return {static_cast<int>(i / static_cast<std::size_t>(cols)), static_cast<int>(i % static_cast<std::size_t>(cols))};
    }

    GeoPoint center(Cell c) const {
        return {(c.col + 0.5) * cell_width(), (c.row + 0.5) * cell_height()};
    }

    void validate() const {
        if (!(area_width > 0.0) || !(area_height > 0.0))
            throw config_error("grid: area extent must be positive");
        if (rows < 1 || cols < 1)
            throw config_error("grid: rows and cols must be positive");
    }
};

// Cell containing pos. Points on the far boundary belong to the last row/column.
inline Cell cell_of(GeoPoint pos, const GridSpec& grid) {
    if (!grid.contains(pos)) {
        throw data_error("position (" + std::to_string(pos.x) + ", " + std::to_string(pos.y) +
                         ") lies outside the " + std::to_string(grid.area_width) + " x " +
                         std::to_string(grid.area_height) + " m area");
    }
    int row = static_cast<int>(std::floor(pos.y / grid.cell_height()));
    int col = static_cast<int>(std::floor(pos.x / grid.cell_width()));
    if (row >= grid.rows) row = grid.rows - 1;
    if (col >= grid.cols) col = grid.cols - 1;
    return {row, col};
}

inline double center_distance(const GridSpec& grid, Cell a, Cell b) {
    return distance(grid.center(a), grid.center(b));
}

} // namespace uavsim
