#include "etgoa/gridworld.hpp"

#include <algorithm>

namespace etgoa {

SenseResult sense_geometric(const ObstacleMap& map, Cell pos, double fov_radius) {
    SenseResult r;
    for (const Obstacle& o : map.craters) {
        if (euclidean(o.center, pos) <= fov_radius + o.radius) {
            r.visible.push_back(o);
            ++r.craters;
        }
    }
    for (const Obstacle& o : map.dust) {
        if (euclidean(o.center, pos) <= fov_radius + o.radius) {
            r.visible.push_back(o);
            ++r.dust;
        }
    }
    return r;
}

SenseResult sense(const ObstacleMap& map, Cell pos, double fov_radius, bool in_dust,
                  double miss_prob, Rng& rng) {
    if (!in_dust) return sense_geometric(map, pos, fov_radius);
    SenseResult r;
    for (const Obstacle& o : map.craters) {
        if (euclidean(o.center, pos) > fov_radius + o.radius) continue;
        if (rng.bernoulli(miss_prob)) continue;
        r.visible.push_back(o);
        ++r.craters;
    }
    for (const Obstacle& o : map.dust) {
        if (euclidean(o.center, pos) > fov_radius + o.radius) continue;
        if (rng.bernoulli(miss_prob)) continue;
        r.visible.push_back(o);
        ++r.dust;
    }
    return r;
}

StepEvents move_agent(AgentState& state, Action action, const ObstacleMap& map,
                      const EnvConfig& cfg, Cell goal, Rng& rng) {
    if (state.t >= cfg.horizon) throw std::logic_error("step past the episode horizon");
    if (state.hits >= cfg.hit_budget) throw std::logic_error("step on a broken agent");

    Action actual = action;
    if (map.in_dust(state.pos) && rng.bernoulli(cfg.slip_prob)) {
        actual = static_cast<Action>(rng.uniform_int(0, kNumActions - 1));
    }
    state.pos = apply_action(state.pos, actual, cfg.grid_w, cfg.grid_h);
    state.t += 1;

    StepEvents ev;
    if (map.in_crater(state.pos)) {
        state.hits += 1;
        ev.crater_hit = true;
    }
    ev.broken = state.hits >= cfg.hit_budget;
    ev.reached_goal = state.pos == goal;
    return ev;
}

StepEvents step_agent(AgentState& state, Action action, const ObstacleMap& map,
                      const EnvConfig& cfg, Cell goal, Rng& rng, SenseNoise noise) {
    const StepEvents ev = move_agent(state, action, map, cfg, goal, rng);
    SenseResult sr = noise == SenseNoise::Geometric
                         ? sense_geometric(map, state.pos, cfg.fov_radius)
                         : sense(map, state.pos, cfg.fov_radius, map.in_dust(state.pos),
                                 cfg.sensor_miss_prob, rng);
    state.craters_in_fov = sr.craters;
    state.dust_in_fov = sr.dust;
    return ev;
}

DeliveryEnv::DeliveryEnv(EnvConfig cfg, ObstacleMap truth, std::vector<ScheduledChange> schedule,
                         std::uint64_t dynamics_seed, std::uint64_t change_seed)
    : cfg_(std::move(cfg)), truth_(std::move(truth)), rng_(dynamics_seed) {
    cfg_.validate();
    std::stable_sort(schedule.begin(), schedule.end(),
                     [](const ScheduledChange& a, const ScheduledChange& b) { return a.t < b.t; });

    Rng change_rng(change_seed);
    ObstacleMap current = truth_;
    world_hash_ = etgoa::world_hash(truth_);
    for (const ScheduledChange& sc : schedule) {
        current = apply_change_event(current, sc.event, cfg_, change_rng, cfg_.start);
        world_hash_ = combine_hash(world_hash_, etgoa::world_hash(current));
        resolved_.emplace_back(sc.t, current);
    }
    goal_ = cfg_.goals.front();
}

void DeliveryEnv::set_goal(Cell goal) {
    if (!in_bounds(goal, cfg_.grid_w, cfg_.grid_h))
        throw std::invalid_argument("goal cell out of bounds");
    goal_ = goal;
}

void DeliveryEnv::apply_due_changes() {
    while (next_change_ < resolved_.size() && resolved_[next_change_].first <= state_.t) {
        truth_ = resolved_[next_change_].second;
        ++next_change_;
    }
}

Observation DeliveryEnv::observe(StepEvents ev) {
    SenseResult sr = sense(truth_, state_.pos, cfg_.fov_radius, truth_.in_dust(state_.pos),
                           cfg_.sensor_miss_prob, rng_);
    state_.craters_in_fov = sr.craters;
    state_.dust_in_fov = sr.dust;
    return Observation{state_, std::move(sr.visible), ev.crater_hit, ev.broken, ev.reached_goal};
}

Observation DeliveryEnv::reset() {
    if (started_) throw std::logic_error("environment already started");
    started_ = true;
    state_ = AgentState{cfg_.start, 0, 0, 0, 0};
    apply_due_changes();
    StepEvents ev;
    ev.reached_goal = state_.pos == goal_;
    done_ = ev.reached_goal;
    return observe(ev);
}

Observation DeliveryEnv::step(Action action) {
    if (!started_) throw std::logic_error("step before reset");
    if (done_) throw std::logic_error("step on a finished episode");
    const StepEvents ev = move_agent(state_, action, truth_, cfg_, goal_, rng_);
    apply_due_changes();
    done_ = ev.broken || ev.reached_goal || state_.t >= cfg_.horizon;
    return observe(ev);
}

}  // namespace etgoa
