#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "etgoa/config.hpp"
#include "etgoa/grid.hpp"
#include "etgoa/rng.hpp"

namespace etgoa {

enum class ObstacleKind { Crater, Dust };

struct Obstacle {
    Cell center;
    double radius = 1.0;
    ObstacleKind kind = ObstacleKind::Crater;

    bool contains(Cell c) const { return euclidean(c, center) <= radius; }
    bool operator==(const Obstacle&) const = default;
};

struct ObstacleMap {
    std::vector<Obstacle> craters;
    std::vector<Obstacle> dust;

    bool in_crater(Cell c) const;
    bool in_dust(Cell c) const;
    bool empty() const { return craters.empty() && dust.empty(); }
    std::size_t size() const { return craters.size() + dust.size(); }
    bool operator==(const ObstacleMap&) const = default;
};

// Random obstacle field. Centers are unique per kind, never on `exclude`, and
// never collide with `avoid` (used when adding to an existing map). Dust is
// biased toward craters: with dust_near_crater_prob a dust center lands within
// Chebyshev distance dust_near_crater_dist of a uniformly chosen crater.
// Throws std::runtime_error when placement keeps failing (grid too full).
ObstacleMap spawn_obstacles(const EnvConfig& cfg, int n_craters, int n_dust, Rng& rng,
                            Cell exclude, const ObstacleMap* avoid = nullptr);
ObstacleMap spawn_obstacles(const EnvConfig& cfg, Rng& rng, Cell exclude);

struct ResampleAll {};
struct DeleteAll {};
struct AddRandom {
    int n_craters = 0;
    int n_dust = 0;
};
using ChangeEvent = std::variant<ResampleAll, DeleteAll, AddRandom>;

ObstacleMap apply_change_event(const ObstacleMap& map, const ChangeEvent& event,
                               const EnvConfig& cfg, Rng& rng, Cell exclude);

// FNV-1a over the map geometry; logged so matched-seed runs can be checked.
std::uint64_t world_hash(const ObstacleMap& map);
std::uint64_t combine_hash(std::uint64_t h, std::uint64_t v);

}  // namespace etgoa
