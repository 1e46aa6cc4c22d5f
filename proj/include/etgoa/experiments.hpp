#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "etgoa/assessment.hpp"
#include "etgoa/config.hpp"

namespace etgoa {

enum class ConditionKind { NoAssessment, GoaOnly, EtGoa };
enum class EnvKind { Static, Dynamic };
enum class Schedule { EasyHardEasy, HardEasyHard };

const char* to_string(ConditionKind c);
const char* to_string(EnvKind e);
const char* to_string(Schedule s);
ConditionKind parse_condition(const std::string& s);  // none | goa | etgoa
EnvKind parse_env_kind(const std::string& s);         // static | dynamic
Schedule parse_schedule(const std::string& s);        // ehe | heh

struct TrialResult {
    int episode = 0;
    ConditionKind condition = ConditionKind::NoAssessment;
    EnvKind env = EnvKind::Static;
    bool delivered = false;
    int craters_hit = 0;
    int steps = 0;
    int n_triggers = 0;
    std::vector<int> goal_history;
    std::uint64_t seed = 0;
    std::uint64_t world_hash = 0;
};

struct TraceSnapshot {
    int t = 0;
    double confidence = 0.0;
    bool triggered = false;  // false when the slot holds an older value
};

struct ConfidenceTrace {
    int episode = 0;
    Schedule schedule = Schedule::EasyHardEasy;
    std::vector<ConfidenceReport> reports;
    std::array<TraceSnapshot, 3> snapshots;  // initial, after change 1, after change 2
    std::uint64_t seed = 0;
};

// Highest confidence wins; exact ties go to the goal closest (Manhattan) to
// the agent, remaining ties to the lowest goal index.
int select_goal(const std::vector<double>& confidences, Cell pos, const std::vector<Cell>& goals);

struct Exp1Run {
    std::vector<TrialResult> trials;
    std::vector<std::pair<int, ConfidenceReport>> reports;  // (episode, report)
};

// Delivery performance across conditions. Episode i shares one truth world
// (and, in the dynamic environment, one resampled world at exp1_change_t)
// across all conditions. NoAssessment navigates to a uniformly random goal;
// GoaOnly assesses once at t=0 and commits; EtGoa re-selects the goal on
// every report.
Exp1Run run_experiment_1(const ExperimentConfig& cfg, EnvKind env, ConditionKind condition,
                         const std::vector<QTable>& policies);

// Difficulty tracking toward one fixed goal. EasyHardEasy starts empty, adds
// obstacles at exp2_change_t1 and deletes all at exp2_change_t2;
// HardEasyHard is the inverse. Snapshots: the initial report, then the first
// report at or after each change (holding the previous confidence, flagged,
// when no report arrives).
std::vector<ConfidenceTrace> run_experiment_2(const ExperimentConfig& cfg, Schedule schedule,
                                              const std::vector<QTable>& policies);

void emit_trials_csv(const std::vector<TrialResult>& trials, const std::filesystem::path& path);
std::vector<TrialResult> read_trials_csv(const std::filesystem::path& path);

void emit_reports_csv(const std::vector<std::pair<int, ConfidenceReport>>& reports,
                      std::size_t n_goals, const std::filesystem::path& path);
std::vector<std::pair<int, ConfidenceReport>> read_reports_csv(const std::filesystem::path& path);

void emit_traces_csv(const std::vector<ConfidenceTrace>& traces, const std::filesystem::path& path);
struct TraceRow {
    int episode = 0;
    Schedule schedule = Schedule::EasyHardEasy;
    int snapshot = 0;
    int t = 0;
    double confidence = 0.0;
    bool triggered = false;
};
std::vector<TraceRow> read_traces_csv(const std::filesystem::path& path);

// Policy cache layout used by the CLI: <dir>/policy_goal<i>.qt
std::filesystem::path policy_path(const std::filesystem::path& dir, int goal_index);
std::vector<QTable> load_policies(const std::filesystem::path& dir, const EnvConfig& env);

}  // namespace etgoa
