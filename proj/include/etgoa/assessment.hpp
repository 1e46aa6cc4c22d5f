#pragma once

#include <array>
#include <functional>
#include <vector>

#include "etgoa/rollout.hpp"

namespace etgoa {

enum class OutcomeKind { CratersHit, Delivered };
enum class OutcomeDirection { FewerIsBetter, MoreIsBetter };

struct OutcomeThreshold {
    OutcomeKind outcome = OutcomeKind::CratersHit;
    OutcomeDirection direction = OutcomeDirection::FewerIsBetter;
    double value = 0.0;
};

// Craters-hit at most hit_budget - 1 (survive), delivered at least once.
std::vector<OutcomeThreshold> default_thresholds(const EnvConfig& env, const AssessConfig& assess);

// Surprise Index of an observed value under a predicted discrete
// distribution: the total probability mass of values no more probable than
// the observed one. 1 is least surprising; 0 most surprising (the observation
// lies outside the support). Throws if dist is not normalized.
double surprise_index(int observed, const MarginalDistribution& dist);

// Confidence of attaining an outcome at least as good as each threshold,
// estimated as the fraction of rollout outcomes meeting it; the minimum
// across thresholds is returned. Throws on empty samples.
double goa(const std::vector<OutcomeSample>& samples,
           const std::vector<OutcomeThreshold>& thresholds);

enum class SemanticLabel { HighlyUnlikely, Unlikely, Likely, HighlyLikely };

SemanticLabel semantic_label(double confidence);
const char* to_string(SemanticLabel label);

inline constexpr int kMarginalCraters = 0;
inline constexpr int kMarginalDust = 1;
inline constexpr int kNumMarginals = 2;

struct TriggerConfig {
    // one surprise threshold per monitored marginal (craters, dust); the
    // session triggers when min over marginals of (SI_i - delta_i) <= 0,
    // which reduces to min(SI) <= delta when the deltas are equal
    std::array<double, kNumMarginals> delta{0.05, 0.05};
};

enum class TriggerKind { Initial, SurpriseTriggered };

struct ConfidenceReport {
    int t = 0;
    std::vector<double> per_goal;           // confidence per goal index
    TriggerKind trigger = TriggerKind::Initial;
    int trigger_marginal = -1;              // marginal attaining the minimum
    double si_min = 1.0;                    // 1.0 on the initial report
};

enum class MapSyncMode {
    FovSensing,       // known map evolves only through per-step sensing
    RefreshOnAssess,  // additionally pull the full map when a trigger fires
};

struct SessionConfig {
    std::vector<OutcomeThreshold> thresholds;
    TriggerConfig trigger;
    int n_rollouts = 50;
    MapSyncMode sync_mode = MapSyncMode::FovSensing;
    std::uint64_t assess_seed = 0;
    // called after every report with the agent position; returns the goal
    // index to pursue (experiments decide whether reports re-select the goal)
    std::function<int(const ConfidenceReport&, Cell)> goal_hook;
};

struct EpisodeRecord {
    std::vector<AgentState> states;      // states[0] is the initial state
    std::vector<Action> actions;
    std::vector<double> si_trace;        // min SI per in-task step, in step order
    std::vector<ConfidenceReport> reports;
    std::vector<int> goal_history;       // chosen goal after each report
    bool delivered = false;
    bool broken = false;
    int craters_hit = 0;
    int steps = 0;
    int n_triggers = 0;
};

// The event-triggered assessment loop. Before execution: simulate, fill the
// buffer and report the initial confidence for every goal. Each step: observe,
// fold the reading into the known map, compare the observed fov counts with
// the predicted marginals for this timestep, and when the surprise falls to
// the threshold re-simulate from the current state, replace the buffer and
// report again. Ends at goal, broken or horizon.
EpisodeRecord et_goa_session(WorldModel model, int initial_goal, DeliveryEnv& env,
                             const SessionConfig& session);

}  // namespace etgoa
