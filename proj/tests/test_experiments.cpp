#include <doctest.h>

#include <filesystem>
#include <map>

#include "etgoa/csv.hpp"
#include "etgoa/experiments.hpp"
#include "helpers.hpp"

using namespace etgoa;
namespace fs = std::filesystem;

namespace {

ExperimentConfig smoke_config() {
    ExperimentConfig cfg;
    cfg.episodes = 4;
    cfg.env.seed = 7;
    return cfg;
}

}  // namespace

TEST_CASE("select_goal takes the argmax, then distance, then index") {
    const std::vector<Cell> goals{{10, 45}, {25, 45}, {40, 45}};
    CHECK(select_goal({0.2, 0.9, 0.5}, {25, 2}, goals) == 1);
    // tie between goals 0 and 1; goal 1 is closer to the agent
    CHECK(select_goal({0.9, 0.9, 0.1}, {25, 2}, goals) == 1);
    // tie between goals 0 and 1 with goal 0 closer
    CHECK(select_goal({0.9, 0.9, 0.1}, {5, 40}, goals) == 0);
    // three-way confidence tie: the closest goal wins
    CHECK(select_goal({0.5, 0.5, 0.5}, {25, 2}, goals) == 1);
    // tie in confidence and distance: lowest index wins
    CHECK(select_goal({0.5, 0.5}, {17, 45}, {{10, 45}, {24, 45}}) == 0);
}

TEST_CASE("trial csv round-trips through the reader") {
    std::vector<TrialResult> trials;
    for (int i = 0; i < 5; ++i) {
        TrialResult t;
        t.episode = i;
        t.condition = i % 2 ? ConditionKind::EtGoa : ConditionKind::GoaOnly;
        t.env = i % 2 ? EnvKind::Dynamic : EnvKind::Static;
        t.delivered = i % 2 == 0;
        t.craters_hit = i;
        t.steps = 40 + i;
        t.n_triggers = i;
        t.seed = 1000 + i;
        t.world_hash = 0xdeadbeef00ull + i;
        trials.push_back(t);
    }
    const fs::path path = fs::temp_directory_path() / "etgoa_trials_roundtrip.csv";
    emit_trials_csv(trials, path);
    const std::vector<TrialResult> back = read_trials_csv(path);
    REQUIRE(back.size() == trials.size());
    for (std::size_t i = 0; i < trials.size(); ++i) {
        CHECK(back[i].episode == trials[i].episode);
        CHECK(back[i].condition == trials[i].condition);
        CHECK(back[i].env == trials[i].env);
        CHECK(back[i].delivered == trials[i].delivered);
        CHECK(back[i].craters_hit == trials[i].craters_hit);
        CHECK(back[i].steps == trials[i].steps);
        CHECK(back[i].n_triggers == trials[i].n_triggers);
        CHECK(back[i].seed == trials[i].seed);
        CHECK(back[i].world_hash == trials[i].world_hash);
    }
    fs::remove(path);
}

TEST_CASE("empty result lists produce header-only files") {
    const fs::path path = fs::temp_directory_path() / "etgoa_trials_empty.csv";
    emit_trials_csv({}, path);
    const CsvTable table = read_csv(path);
    CHECK(table.header.size() == 9);
    CHECK(table.rows.empty());
    CHECK(read_trials_csv(path).empty());
    fs::remove(path);
}

TEST_CASE("reports and traces csv round-trip") {
    std::vector<std::pair<int, ConfidenceReport>> reports;
    ConfidenceReport initial;
    initial.t = 0;
    initial.per_goal = {1.0, 0.52, 0.0};
    reports.emplace_back(0, initial);
    ConfidenceReport triggered;
    triggered.t = 12;
    triggered.per_goal = {0.25, 0.75, 0.5};
    triggered.trigger = TriggerKind::SurpriseTriggered;
    triggered.trigger_marginal = kMarginalDust;
    triggered.si_min = 0.02;
    reports.emplace_back(0, triggered);

    const fs::path rpath = fs::temp_directory_path() / "etgoa_reports_roundtrip.csv";
    emit_reports_csv(reports, 3, rpath);
    const auto rback = read_reports_csv(rpath);
    REQUIRE(rback.size() == 2);
    CHECK(rback[0].second.trigger == TriggerKind::Initial);
    CHECK(rback[0].second.per_goal == initial.per_goal);
    CHECK(rback[1].second.trigger == TriggerKind::SurpriseTriggered);
    CHECK(rback[1].second.trigger_marginal == kMarginalDust);
    CHECK(rback[1].second.si_min == 0.02);
    CHECK(rback[1].second.t == 12);
    fs::remove(rpath);

    ConfidenceTrace trace;
    trace.episode = 3;
    trace.schedule = Schedule::HardEasyHard;
    trace.snapshots = {TraceSnapshot{0, 0.44, true}, TraceSnapshot{10, 1.0, true},
                       TraceSnapshot{30, 0.62, false}};
    const fs::path tpath = fs::temp_directory_path() / "etgoa_traces_roundtrip.csv";
    emit_traces_csv({trace}, tpath);
    const std::vector<TraceRow> tback = read_traces_csv(tpath);
    REQUIRE(tback.size() == 3);
    CHECK(tback[0].snapshot == 0);
    CHECK(tback[0].confidence == 0.44);
    CHECK(tback[1].t == 10);
    CHECK(tback[1].triggered);
    CHECK(tback[2].snapshot == 2);
    CHECK_FALSE(tback[2].triggered);
    for (const TraceRow& r : tback) CHECK(r.schedule == Schedule::HardEasyHard);
    fs::remove(tpath);
}

TEST_CASE("csv writers surface io failures with the path") {
    CHECK_THROWS_WITH_AS(emit_trials_csv({}, "/nonexistent-dir/trials.csv"),
                         doctest::Contains("/nonexistent-dir/trials.csv"), std::runtime_error);
}

TEST_CASE("experiment 1 smoke run keeps per-condition invariants and matched worlds") {
    const ExperimentConfig cfg = smoke_config();
    const auto& policies = etgoa::test::default_policies();

    std::map<std::pair<EnvKind, int>, std::uint64_t> hashes;
    for (const EnvKind env : {EnvKind::Static, EnvKind::Dynamic}) {
        for (const ConditionKind cond :
             {ConditionKind::NoAssessment, ConditionKind::GoaOnly, ConditionKind::EtGoa}) {
            const Exp1Run run = run_experiment_1(cfg, env, cond, policies);
            REQUIRE(run.trials.size() == static_cast<std::size_t>(cfg.episodes));
            std::map<int, int> reports_per_episode;
            for (const auto& [ep, rep] : run.reports) ++reports_per_episode[ep];
            for (const TrialResult& t : run.trials) {
                if (t.delivered) CHECK(t.craters_hit < cfg.env.hit_budget);
                switch (cond) {
                    case ConditionKind::NoAssessment:
                        CHECK(t.n_triggers == 0);
                        CHECK(reports_per_episode[t.episode] == 0);
                        break;
                    case ConditionKind::GoaOnly:
                        CHECK(t.n_triggers == 0);
                        CHECK(reports_per_episode[t.episode] == 1);  // exactly one assessment
                        break;
                    case ConditionKind::EtGoa:
                        CHECK(reports_per_episode[t.episode] == t.n_triggers + 1);
                        CHECK(reports_per_episode[t.episode] >= 1);
                        break;
                }
                // same truth world across conditions of the same environment
                const auto key = std::make_pair(env, t.episode);
                if (auto it = hashes.find(key); it != hashes.end()) {
                    CHECK(it->second == t.world_hash);
                } else {
                    hashes[key] = t.world_hash;
                }
            }
        }
    }
}

TEST_CASE("experiment 2 smoke run fills all three snapshots") {
    ExperimentConfig cfg = smoke_config();
    cfg.episodes = 3;
    const auto& policies = etgoa::test::default_policies();

    for (const Schedule schedule : {Schedule::EasyHardEasy, Schedule::HardEasyHard}) {
        const auto traces = run_experiment_2(cfg, schedule, policies);
        REQUIRE(traces.size() == static_cast<std::size_t>(cfg.episodes));
        for (const ConfidenceTrace& tr : traces) {
            CHECK(tr.reports.front().trigger == TriggerKind::Initial);
            CHECK(tr.snapshots[0].triggered);
            CHECK(tr.snapshots[0].t == 0);
            for (const TraceSnapshot& s : tr.snapshots) {
                CHECK(s.confidence >= 0.0);
                CHECK(s.confidence <= 1.0);
            }
            if (schedule == Schedule::EasyHardEasy) {
                // obstacle-free deterministic rollouts always deliver
                CHECK(tr.snapshots[0].confidence == 1.0);
            }
        }
    }
}

TEST_CASE("experiment runs are reproducible") {
    const ExperimentConfig cfg = smoke_config();
    const auto& policies = etgoa::test::default_policies();
    const Exp1Run a = run_experiment_1(cfg, EnvKind::Dynamic, ConditionKind::EtGoa, policies);
    const Exp1Run b = run_experiment_1(cfg, EnvKind::Dynamic, ConditionKind::EtGoa, policies);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].delivered == b.trials[i].delivered);
        CHECK(a.trials[i].steps == b.trials[i].steps);
        CHECK(a.trials[i].n_triggers == b.trials[i].n_triggers);
        CHECK(a.trials[i].world_hash == b.trials[i].world_hash);
        CHECK(a.trials[i].goal_history == b.trials[i].goal_history);
    }
}
