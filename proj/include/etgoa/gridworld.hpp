#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "etgoa/obstacles.hpp"

namespace etgoa {

struct AgentState {
    Cell pos;
    int craters_in_fov = 0;  // s_c
    int dust_in_fov = 0;     // s_z
    int hits = 0;            // craters driven over so far this episode
    int t = 0;

    bool operator==(const AgentState&) const = default;
};

struct SenseResult {
    int craters = 0;
    int dust = 0;
    std::vector<Obstacle> visible;
};

// An obstacle is in view when its disc intersects the sensor disc, i.e. the
// center lies within fov_radius + obstacle radius of the agent.
SenseResult sense_geometric(const ObstacleMap& map, Cell pos, double fov_radius);

// Sensor reading. In dust each obstacle in view is dropped independently with
// probability miss_prob; outside dust no rng is consumed.
SenseResult sense(const ObstacleMap& map, Cell pos, double fov_radius, bool in_dust,
                  double miss_prob, Rng& rng);

struct StepEvents {
    bool crater_hit = false;
    bool broken = false;
    bool reached_goal = false;
};

// One transition: in dust the commanded action is replaced, with probability
// slip_prob, by a uniformly random one; the move is clamped at the border;
// ending a step inside a crater costs one hit. Does not refresh the fov
// counts. Throws std::logic_error when stepping a broken or finished episode.
StepEvents move_agent(AgentState& state, Action action, const ObstacleMap& map,
                      const EnvConfig& cfg, Cell goal, Rng& rng);

enum class SenseNoise { Sensor, Geometric };

// move_agent plus the fov count refresh, against a single map. This is the
// full environment transition; the world model runs the same code on the
// known map with SenseNoise::Geometric.
StepEvents step_agent(AgentState& state, Action action, const ObstacleMap& map,
                      const EnvConfig& cfg, Cell goal, Rng& rng,
                      SenseNoise noise = SenseNoise::Sensor);

struct ScheduledChange {
    int t = 0;
    ChangeEvent event;
};

struct Observation {
    AgentState state;
    std::vector<Obstacle> visible;
    bool crater_hit = false;
    bool broken = false;
    bool reached_goal = false;
};

// Ground-truth delivery environment. Scheduled changes are resolved into
// concrete maps up front from their own rng stream, so runs sharing
// (initial map, schedule, change_seed) traverse identical worlds no matter
// what the agent does; the exclusion cell for scheduled spawns is the episode
// start. A change scheduled at time t becomes visible in the observation
// carrying t.
class DeliveryEnv {
 public:
    DeliveryEnv(EnvConfig cfg, ObstacleMap truth, std::vector<ScheduledChange> schedule,
                std::uint64_t dynamics_seed, std::uint64_t change_seed);

    Observation reset();
    Observation step(Action action);
    void set_goal(Cell goal);

    Cell goal() const { return goal_; }
    bool done() const { return done_; }
    const ObstacleMap& truth() const { return truth_; }
    const AgentState& state() const { return state_; }
    const EnvConfig& config() const { return cfg_; }
    std::uint64_t world_hash() const { return world_hash_; }

 private:
    Observation observe(StepEvents ev);
    void apply_due_changes();

    EnvConfig cfg_;
    ObstacleMap truth_;
    std::vector<std::pair<int, ObstacleMap>> resolved_;
    std::size_t next_change_ = 0;
    AgentState state_;
    Cell goal_;
    Rng rng_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t world_hash_ = 0;
};

}  // namespace etgoa
