#include "etgoa/experiments.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "etgoa/csv.hpp"

namespace etgoa {

namespace {

// rng stream tags; every stream is derived from the per-episode seed so that
// conditions sharing an episode index also share its worlds
constexpr std::uint64_t kStreamWorld = 0x01;
constexpr std::uint64_t kStreamChange = 0x02;
constexpr std::uint64_t kStreamGoalPick = 0x03;
constexpr std::uint64_t kStreamDynamics = 0x10;  // + condition index
constexpr std::uint64_t kStreamAssess = 0x20;    // + condition index
constexpr std::uint64_t kExp2Base = 0xE2;

std::uint64_t episode_seed(std::uint64_t base, int episode) {
    return derive_seed(base, static_cast<std::uint64_t>(episode));
}

int condition_index(ConditionKind c) { return static_cast<int>(c); }

std::uint64_t parse_hex_u64(const std::string& s) {
    return std::stoull(s, nullptr, 16);
}

std::string hex_u64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

const char* trigger_token(const ConfidenceReport& r) {
    if (r.trigger == TriggerKind::Initial) return "initial";
    return r.trigger_marginal == kMarginalCraters ? "craters" : "dust";
}

const char* snapshot_token(int k) {
    switch (k) {
        case 0: return "initial";
        case 1: return "after_change_1";
        case 2: return "after_change_2";
    }
    return "?";
}

}  // namespace

const char* to_string(ConditionKind c) {
    switch (c) {
        case ConditionKind::NoAssessment: return "none";
        case ConditionKind::GoaOnly: return "goa";
        case ConditionKind::EtGoa: return "etgoa";
    }
    return "?";
}

const char* to_string(EnvKind e) {
    return e == EnvKind::Static ? "static" : "dynamic";
}

const char* to_string(Schedule s) {
    return s == Schedule::EasyHardEasy ? "ehe" : "heh";
}

ConditionKind parse_condition(const std::string& s) {
    if (s == "none") return ConditionKind::NoAssessment;
    if (s == "goa") return ConditionKind::GoaOnly;
    if (s == "etgoa") return ConditionKind::EtGoa;
    throw std::invalid_argument("unknown condition '" + s + "' (expected none|goa|etgoa)");
}

EnvKind parse_env_kind(const std::string& s) {
    if (s == "static") return EnvKind::Static;
    if (s == "dynamic") return EnvKind::Dynamic;
    throw std::invalid_argument("unknown environment '" + s + "' (expected static|dynamic)");
}

Schedule parse_schedule(const std::string& s) {
    if (s == "ehe") return Schedule::EasyHardEasy;
    if (s == "heh") return Schedule::HardEasyHard;
    throw std::invalid_argument("unknown schedule '" + s + "' (expected ehe|heh)");
}

int select_goal(const std::vector<double>& confidences, Cell pos, const std::vector<Cell>& goals) {
    if (confidences.empty() || confidences.size() != goals.size())
        throw std::invalid_argument("select_goal: confidences and goals must align");
    int best = 0;
    for (int i = 1; i < static_cast<int>(confidences.size()); ++i) {
        if (confidences[i] > confidences[best]) {
            best = i;
        } else if (confidences[i] == confidences[best]
                   && manhattan(pos, goals[i]) < manhattan(pos, goals[best])) {
            best = i;
        }
    }
    return best;
}

namespace {

SessionConfig make_session(const ExperimentConfig& cfg, ConditionKind condition,
                           std::uint64_t assess_seed) {
    SessionConfig s;
    s.thresholds = default_thresholds(cfg.env, cfg.assess);
    const double delta = condition == ConditionKind::GoaOnly ? -1.0 : cfg.assess.si_delta;
    s.trigger.delta = {delta, delta};
    s.n_rollouts = cfg.assess.n_rollouts;
    s.sync_mode = cfg.assess.map_refresh_on_assess ? MapSyncMode::RefreshOnAssess
                                                   : MapSyncMode::FovSensing;
    s.assess_seed = assess_seed;
    return s;
}

TrialResult run_random_goal_episode(const ExperimentConfig& cfg, DeliveryEnv& env,
                                    const std::vector<QTable>& policies, std::uint64_t eseed) {
    Rng pick(derive_seed(eseed, kStreamGoalPick));
    const int g = pick.uniform_int(0, static_cast<int>(cfg.env.goals.size()) - 1);

    Observation obs = env.reset();
    env.set_goal(policies[g].goal());
    while (!env.done()) obs = env.step(policies[g].greedy_action(obs.state.pos));

    TrialResult r;
    r.delivered = obs.reached_goal && !obs.broken;
    r.craters_hit = obs.state.hits;
    r.steps = obs.state.t;
    r.n_triggers = 0;
    r.goal_history = {g};
    return r;
}

}  // namespace

Exp1Run run_experiment_1(const ExperimentConfig& cfg, EnvKind env_kind, ConditionKind condition,
                         const std::vector<QTable>& policies) {
    cfg.validate();
    if (policies.size() != cfg.env.goals.size())
        throw std::invalid_argument("run_experiment_1: one policy per goal required");

    Exp1Run run;
    const int ci = condition_index(condition);
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        const std::uint64_t eseed = episode_seed(cfg.env.seed, ep);

        Rng world_rng(derive_seed(eseed, kStreamWorld));
        ObstacleMap world = spawn_obstacles(cfg.env, world_rng, cfg.env.start);

        std::vector<ScheduledChange> schedule;
        if (env_kind == EnvKind::Dynamic)
            schedule.push_back({cfg.exp1_change_t, ResampleAll{}});

        DeliveryEnv env(cfg.env, world, schedule,
                        derive_seed(eseed, kStreamDynamics + ci),
                        derive_seed(eseed, kStreamChange));

        TrialResult trial;
        if (condition == ConditionKind::NoAssessment) {
            trial = run_random_goal_episode(cfg, env, policies, eseed);
        } else {
            WorldModel model{cfg.env, world, &policies};
            SessionConfig session = make_session(cfg, condition, derive_seed(eseed, kStreamAssess + ci));
            session.goal_hook = [&goals = cfg.env.goals](const ConfidenceReport& rep, Cell pos) {
                return select_goal(rep.per_goal, pos, goals);
            };
            EpisodeRecord rec = et_goa_session(model, 0, env, session);
            trial.delivered = rec.delivered;
            trial.craters_hit = rec.craters_hit;
            trial.steps = rec.steps;
            trial.n_triggers = rec.n_triggers;
            trial.goal_history = rec.goal_history;
            for (ConfidenceReport& rep : rec.reports)
                run.reports.emplace_back(ep, std::move(rep));
        }
        trial.episode = ep;
        trial.condition = condition;
        trial.env = env_kind;
        trial.seed = eseed;
        trial.world_hash = env.world_hash();
        run.trials.push_back(std::move(trial));
    }
    return run;
}

std::vector<ConfidenceTrace> run_experiment_2(const ExperimentConfig& cfg, Schedule schedule,
                                              const std::vector<QTable>& policies) {
    cfg.validate();
    if (policies.size() != cfg.env.goals.size())
        throw std::invalid_argument("run_experiment_2: one policy per goal required");

    std::vector<ConfidenceTrace> traces;
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        const std::uint64_t eseed = episode_seed(derive_seed(cfg.env.seed, kExp2Base), ep);

        ObstacleMap world;
        std::vector<ScheduledChange> changes;
        const AddRandom add{cfg.env.n_craters, cfg.env.n_dust};
        if (schedule == Schedule::EasyHardEasy) {
            changes = {{cfg.exp2_change_t1, add}, {cfg.exp2_change_t2, DeleteAll{}}};
        } else {
            Rng world_rng(derive_seed(eseed, kStreamWorld));
            world = spawn_obstacles(cfg.env, world_rng, cfg.env.start);
            changes = {{cfg.exp2_change_t1, DeleteAll{}}, {cfg.exp2_change_t2, add}};
        }

        DeliveryEnv env(cfg.env, world, changes, derive_seed(eseed, kStreamDynamics),
                        derive_seed(eseed, kStreamChange));

        // the starting map is known a priori; everything later is discovered
        WorldModel model{cfg.env, world, &policies};
        const SessionConfig session =
            make_session(cfg, ConditionKind::EtGoa, derive_seed(eseed, kStreamAssess));
        EpisodeRecord rec = et_goa_session(model, cfg.exp2_goal, env, session);

        ConfidenceTrace trace;
        trace.episode = ep;
        trace.schedule = schedule;
        trace.seed = eseed;
        trace.reports = std::move(rec.reports);

        const auto conf_of = [&](const ConfidenceReport& r) { return r.per_goal[cfg.exp2_goal]; };
        trace.snapshots[0] = {trace.reports.front().t, conf_of(trace.reports.front()), true};
        const int change_at[3] = {0, cfg.exp2_change_t1, cfg.exp2_change_t2};
        for (int k = 1; k <= 2; ++k) {
            const auto hit = std::find_if(trace.reports.begin(), trace.reports.end(),
                                          [&](const ConfidenceReport& r) {
                                              return r.t >= change_at[k];
                                          });
            if (hit != trace.reports.end()) {
                trace.snapshots[k] = {hit->t, conf_of(*hit), true};
            } else {
                // no report after the change: the slot holds the latest
                // confidence from before it
                double held = conf_of(trace.reports.front());
                for (const ConfidenceReport& r : trace.reports)
                    if (r.t < change_at[k]) held = conf_of(r);
                trace.snapshots[k] = {change_at[k], held, false};
            }
        }
        traces.push_back(std::move(trace));
    }
    return traces;
}

void emit_trials_csv(const std::vector<TrialResult>& trials, const std::filesystem::path& path) {
    CsvWriter out(path, {"episode", "condition", "env", "delivered", "craters_hit", "steps",
                         "n_triggers", "seed", "world_hash"});
    for (const TrialResult& t : trials) {
        out.row({std::to_string(t.episode), to_string(t.condition), to_string(t.env),
                 t.delivered ? "1" : "0", std::to_string(t.craters_hit), std::to_string(t.steps),
                 std::to_string(t.n_triggers), std::to_string(t.seed), hex_u64(t.world_hash)});
    }
    out.finish();
}

std::vector<TrialResult> read_trials_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::vector<std::string> expected{"episode", "condition", "env", "delivered",
                                            "craters_hit", "steps", "n_triggers", "seed",
                                            "world_hash"};
    if (table.header != expected)
        throw std::runtime_error("unexpected trials.csv header in " + path.string());
    std::vector<TrialResult> out;
    for (const auto& row : table.rows) {
        TrialResult t;
        t.episode = std::stoi(row[0]);
        t.condition = parse_condition(row[1]);
        t.env = parse_env_kind(row[2]);
        t.delivered = row[3] == "1";
        t.craters_hit = std::stoi(row[4]);
        t.steps = std::stoi(row[5]);
        t.n_triggers = std::stoi(row[6]);
        t.seed = std::stoull(row[7]);
        t.world_hash = parse_hex_u64(row[8]);
        out.push_back(std::move(t));
    }
    return out;
}

void emit_reports_csv(const std::vector<std::pair<int, ConfidenceReport>>& reports,
                      std::size_t n_goals, const std::filesystem::path& path) {
    std::vector<std::string> header{"episode", "t", "trigger", "si_min"};
    for (std::size_t g = 0; g < n_goals; ++g) header.push_back("goa_g" + std::to_string(g));
    CsvWriter out(path, header);
    for (const auto& [episode, rep] : reports) {
        if (rep.per_goal.size() != n_goals)
            throw std::invalid_argument("report goal count mismatch while writing "
                                        + path.string());
        std::vector<std::string> row{std::to_string(episode), std::to_string(rep.t),
                                     trigger_token(rep), format_double(rep.si_min)};
        for (double c : rep.per_goal) row.push_back(format_double(c));
        out.row(row);
    }
    out.finish();
}

std::vector<std::pair<int, ConfidenceReport>> read_reports_csv(
    const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    if (table.header.size() < 5 || table.header[0] != "episode" || table.header[1] != "t"
        || table.header[2] != "trigger" || table.header[3] != "si_min")
        throw std::runtime_error("unexpected reports.csv header in " + path.string());
    std::vector<std::pair<int, ConfidenceReport>> out;
    for (const auto& row : table.rows) {
        ConfidenceReport rep;
        rep.t = std::stoi(row[1]);
        if (row[2] == "initial") {
            rep.trigger = TriggerKind::Initial;
            rep.trigger_marginal = -1;
        } else {
            rep.trigger = TriggerKind::SurpriseTriggered;
            rep.trigger_marginal = row[2] == "craters" ? kMarginalCraters : kMarginalDust;
        }
        rep.si_min = std::stod(row[3]);
        for (std::size_t i = 4; i < row.size(); ++i) rep.per_goal.push_back(std::stod(row[i]));
        out.emplace_back(std::stoi(row[0]), std::move(rep));
    }
    return out;
}

void emit_traces_csv(const std::vector<ConfidenceTrace>& traces,
                     const std::filesystem::path& path) {
    CsvWriter out(path, {"episode", "schedule", "snapshot", "t", "confidence", "triggered"});
    for (const ConfidenceTrace& tr : traces) {
        for (int k = 0; k < 3; ++k) {
            const TraceSnapshot& s = tr.snapshots[k];
            out.row({std::to_string(tr.episode), to_string(tr.schedule), snapshot_token(k),
                     std::to_string(s.t), format_double(s.confidence), s.triggered ? "1" : "0"});
        }
    }
    out.finish();
}

std::vector<TraceRow> read_traces_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::vector<std::string> expected{"episode", "schedule", "snapshot", "t", "confidence",
                                            "triggered"};
    if (table.header != expected)
        throw std::runtime_error("unexpected traces.csv header in " + path.string());
    std::vector<TraceRow> out;
    for (const auto& row : table.rows) {
        TraceRow r;
        r.episode = std::stoi(row[0]);
        r.schedule = parse_schedule(row[1]);
        r.snapshot = row[2] == "initial" ? 0 : (row[2] == "after_change_1" ? 1 : 2);
        r.t = std::stoi(row[3]);
        r.confidence = std::stod(row[4]);
        r.triggered = row[5] == "1";
        out.push_back(r);
    }
    return out;
}

std::filesystem::path policy_path(const std::filesystem::path& dir, int goal_index) {
    return dir / ("policy_goal" + std::to_string(goal_index) + ".qt");
}

std::vector<QTable> load_policies(const std::filesystem::path& dir, const EnvConfig& env) {
    std::vector<QTable> policies;
    for (int g = 0; g < static_cast<int>(env.goals.size()); ++g) {
        const std::filesystem::path p = policy_path(dir, g);
        if (!std::filesystem::exists(p))
            throw std::runtime_error("missing policy file " + p.string()
                                     + " (run the train subcommand first)");
        QTable q = QTable::load(p, env.grid_w, env.grid_h);
        if (q.goal() != env.goals[g])
            throw std::runtime_error("policy " + p.string() + " was trained for goal ("
                                     + std::to_string(q.goal().x) + ","
                                     + std::to_string(q.goal().y) + ") but the config wants ("
                                     + std::to_string(env.goals[g].x) + ","
                                     + std::to_string(env.goals[g].y) + ")");
        policies.push_back(std::move(q));
    }
    return policies;
}

}  // namespace etgoa
