#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <string>

namespace etgoa {

struct Cell {
    int x = 0;
    int y = 0;

    auto operator<=>(const Cell&) const = default;
};

inline double euclidean(Cell a, Cell b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline int manhattan(Cell a, Cell b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline int chebyshev(Cell a, Cell b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

inline bool in_bounds(Cell c, int grid_w, int grid_h) {
    return c.x >= 0 && c.x < grid_w && c.y >= 0 && c.y < grid_h;
}

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr int kNumActions = 4;

// Up increases y; moves are clamped at the grid border.
inline Cell apply_action(Cell c, Action a, int grid_w, int grid_h) {
    switch (a) {
        case Action::Up: c.y += 1; break;
        case Action::Down: c.y -= 1; break;
        case Action::Left: c.x -= 1; break;
        case Action::Right: c.x += 1; break;
    }
    c.x = std::clamp(c.x, 0, grid_w - 1);
    c.y = std::clamp(c.y, 0, grid_h - 1);
    return c;
}

inline const char* to_string(Action a) {
    switch (a) {
        case Action::Up: return "up";
        case Action::Down: return "down";
        case Action::Left: return "left";
        case Action::Right: return "right";
    }
    return "?";
}

}  // namespace etgoa
