#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "etgoa/gridworld.hpp"
#include "etgoa/qtable.hpp"

namespace etgoa {

struct MarginalDistribution {
    std::map<int, double> mass;  // value -> probability, ordered support

    double mass_at(int v) const;
    void validate() const;  // nonnegative masses summing to 1 within 1e-9
};

struct OutcomeSample {
    int craters_hit = 0;
    bool delivered = false;
    int steps = 0;
};

struct BufferEntry {
    MarginalDistribution craters;  // predicted s_c
    MarginalDistribution dust;     // predicted s_z
};

// Per-timestep predicted marginals plus one terminal outcome per rollout.
// Covers (start_t, horizon] contiguously; rollouts that finish early hold
// their last observation so every timestep stays defined.
class ExperienceBuffer {
 public:
    ExperienceBuffer(int start_t, int horizon, std::vector<BufferEntry> entries,
                     std::vector<OutcomeSample> outcomes);

    const BufferEntry& at(int t) const;  // throws std::out_of_range
    const std::vector<OutcomeSample>& outcomes() const { return outcomes_; }
    int start_t() const { return start_t_; }
    int horizon() const { return horizon_; }

 private:
    int start_t_;
    int horizon_;
    std::vector<BufferEntry> entries_;
    std::vector<OutcomeSample> outcomes_;
};

// Simulation copy of the environment: identical transition dynamics but only
// the obstacles the agent knows about.
struct WorldModel {
    EnvConfig cfg;
    ObstacleMap known;
    const std::vector<QTable>* policies = nullptr;

    const QTable& policy(int goal_index) const;
};

// Monte Carlo prediction: n_rollouts greedy-policy episodes from `from` until
// goal, broken or horizon. Predicted counts use noiseless geometric sensing
// against the known map (the model predicts what is there, not sensor
// misses); slip noise applies wherever known dust covers the agent.
ExperienceBuffer simulate(const WorldModel& model, int goal_index, const AgentState& from,
                          int n_rollouts, Rng& rng);

// Folds one sensor reading into the known map: visible obstacles are added,
// known obstacles that should have been visible here but were not are
// dropped, and anything outside the field of view is left alone.
void sync_known_map(WorldModel& model, const std::vector<Obstacle>& visible, Cell pos);

// Per-timestep histogram dump for inspection.
void dump_buffer(const ExperienceBuffer& buffer, std::ostream& out);

}  // namespace etgoa
