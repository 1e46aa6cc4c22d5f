#include "etgoa/obstacles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace etgoa {

namespace {

constexpr int kMaxPlacementRetries = 1000;

bool center_taken(const std::vector<Obstacle>& v, Cell c) {
    return std::any_of(v.begin(), v.end(), [&](const Obstacle& o) { return o.center == c; });
}

Cell random_cell(const EnvConfig& cfg, Rng& rng) {
    return {rng.uniform_int(0, cfg.grid_w - 1), rng.uniform_int(0, cfg.grid_h - 1)};
}

[[noreturn]] void placement_failure(const char* kind) {
    throw std::runtime_error(std::string("obstacle placement failed for ") + kind + " after "
                             + std::to_string(kMaxPlacementRetries)
                             + " retries (grid too full)");
}

}  // namespace

bool ObstacleMap::in_crater(Cell c) const {
    return std::any_of(craters.begin(), craters.end(),
                       [&](const Obstacle& o) { return o.contains(c); });
}

bool ObstacleMap::in_dust(Cell c) const {
    return std::any_of(dust.begin(), dust.end(),
                       [&](const Obstacle& o) { return o.contains(c); });
}

ObstacleMap spawn_obstacles(const EnvConfig& cfg, int n_craters, int n_dust, Rng& rng,
                            Cell exclude, const ObstacleMap* avoid) {
    ObstacleMap out;
    out.craters.reserve(n_craters);
    out.dust.reserve(n_dust);

    for (int i = 0; i < n_craters; ++i) {
        bool placed = false;
        for (int retry = 0; retry < kMaxPlacementRetries; ++retry) {
            const Cell c = random_cell(cfg, rng);
            if (c == exclude || center_taken(out.craters, c)) continue;
            if (avoid && center_taken(avoid->craters, c)) continue;
            out.craters.push_back({c, cfg.crater_radius, ObstacleKind::Crater});
            placed = true;
            break;
        }
        if (!placed) placement_failure("crater");
    }

    for (int i = 0; i < n_dust; ++i) {
        bool placed = false;
        for (int retry = 0; retry < kMaxPlacementRetries; ++retry) {
            Cell c;
            if (!out.craters.empty() && rng.bernoulli(cfg.dust_near_crater_prob)) {
                const Cell anchor =
                    out.craters[rng.uniform_int(0, static_cast<int>(out.craters.size()) - 1)]
                        .center;
                const int d = cfg.dust_near_crater_dist;
                c = {rng.uniform_int(std::max(0, anchor.x - d),
                                     std::min(cfg.grid_w - 1, anchor.x + d)),
                     rng.uniform_int(std::max(0, anchor.y - d),
                                     std::min(cfg.grid_h - 1, anchor.y + d))};
            } else {
                c = random_cell(cfg, rng);
            }
            if (c == exclude || center_taken(out.dust, c)) continue;
            if (avoid && center_taken(avoid->dust, c)) continue;
            out.dust.push_back({c, cfg.dust_radius, ObstacleKind::Dust});
            placed = true;
            break;
        }
        if (!placed) placement_failure("dust");
    }
    return out;
}

ObstacleMap spawn_obstacles(const EnvConfig& cfg, Rng& rng, Cell exclude) {
    return spawn_obstacles(cfg, cfg.n_craters, cfg.n_dust, rng, exclude, nullptr);
}

ObstacleMap apply_change_event(const ObstacleMap& map, const ChangeEvent& event,
                               const EnvConfig& cfg, Rng& rng, Cell exclude) {
    if (std::holds_alternative<ResampleAll>(event)) {
        return spawn_obstacles(cfg, rng, exclude);
    }
    if (std::holds_alternative<DeleteAll>(event)) {
        return ObstacleMap{};
    }
    const auto& add = std::get<AddRandom>(event);
    const ObstacleMap extra =
        spawn_obstacles(cfg, add.n_craters, add.n_dust, rng, exclude, &map);
    ObstacleMap out = map;
    out.craters.insert(out.craters.end(), extra.craters.begin(), extra.craters.end());
    out.dust.insert(out.dust.end(), extra.dust.begin(), extra.dust.end());
    return out;
}

std::uint64_t combine_hash(std::uint64_t h, std::uint64_t v) {
    // FNV-1a over the 8 bytes of v
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t world_hash(const ObstacleMap& map) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto fold = [&](const Obstacle& o, std::uint64_t tag) {
        h = combine_hash(h, tag);
        h = combine_hash(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(o.center.x)));
        h = combine_hash(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(o.center.y)));
        h = combine_hash(h, std::bit_cast<std::uint64_t>(o.radius));
    };
    for (const Obstacle& o : map.craters) fold(o, 1);
    for (const Obstacle& o : map.dust) fold(o, 2);
    return h;
}

}  // namespace etgoa
