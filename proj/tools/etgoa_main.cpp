#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "etgoa/assessment.hpp"
#include "etgoa/csv.hpp"
#include "etgoa/experiments.hpp"

namespace fs = std::filesystem;
using namespace etgoa;

namespace {

ExperimentConfig config_from(const std::string& config_file) {
    if (config_file.empty()) {
        ExperimentConfig cfg;
        cfg.validate();
        return cfg;
    }
    return load_config(config_file);
}

int cmd_train(const std::string& config_file, int goal_index, bool all, const std::string& out,
              std::uint64_t seed_override, bool has_seed) {
    ExperimentConfig cfg = config_from(config_file);
    if (has_seed) cfg.env.seed = seed_override;

    std::vector<int> goals;
    if (all) {
        for (int g = 0; g < static_cast<int>(cfg.env.goals.size()); ++g) goals.push_back(g);
        fs::create_directories(out);
    } else {
        if (goal_index < 0 || goal_index >= static_cast<int>(cfg.env.goals.size()))
            throw std::invalid_argument("--goal out of range");
        goals.push_back(goal_index);
    }

    const TrainParams params;
    for (int g : goals) {
        Rng rng(derive_seed(cfg.env.seed, 0x7100 + g));
        std::cout << "training policy for goal " << g << " (" << cfg.env.goals[g].x << ","
                  << cfg.env.goals[g].y << ") ..." << std::flush;
        QTable q = train_policy(cfg.env.goals[g], params, cfg.env.grid_w, cfg.env.grid_h, rng);
        const fs::path path = all ? policy_path(out, g) : fs::path(out);
        q.save(path);
        std::cout << " saved to " << path.string() << "\n";
    }
    return 0;
}

int cmd_exp1(const std::string& config_file, const std::string& env_s, const std::string& cond_s,
             int episodes, std::uint64_t seed, bool has_seed, const std::string& out,
             const std::string& policies_dir) {
    ExperimentConfig cfg = config_from(config_file);
    if (episodes > 0) cfg.episodes = episodes;
    if (has_seed) cfg.env.seed = seed;
    const EnvKind env_kind = parse_env_kind(env_s);
    const ConditionKind condition = parse_condition(cond_s);

    const std::vector<QTable> policies = load_policies(policies_dir, cfg.env);
    const Exp1Run run = run_experiment_1(cfg, env_kind, condition, policies);

    fs::create_directories(out);
    emit_trials_csv(run.trials, fs::path(out) / "trials.csv");
    if (condition != ConditionKind::NoAssessment)
        emit_reports_csv(run.reports, cfg.env.goals.size(), fs::path(out) / "reports.csv");

    int delivered = 0;
    for (const TrialResult& t : run.trials) delivered += t.delivered ? 1 : 0;
    std::cout << to_string(env_kind) << "/" << to_string(condition) << ": " << delivered << "/"
              << run.trials.size() << " delivered; results in " << out << "\n";
    return 0;
}

int cmd_exp2(const std::string& config_file, const std::string& schedule_s, int episodes,
             std::uint64_t seed, bool has_seed, const std::string& out,
             const std::string& policies_dir) {
    ExperimentConfig cfg = config_from(config_file);
    if (episodes > 0) cfg.episodes = episodes;
    if (has_seed) cfg.env.seed = seed;
    const Schedule schedule = parse_schedule(schedule_s);

    const std::vector<QTable> policies = load_policies(policies_dir, cfg.env);
    const std::vector<ConfidenceTrace> traces = run_experiment_2(cfg, schedule, policies);

    fs::create_directories(out);
    emit_traces_csv(traces, fs::path(out) / "traces.csv");
    std::vector<std::pair<int, ConfidenceReport>> reports;
    for (const ConfidenceTrace& tr : traces)
        for (const ConfidenceReport& r : tr.reports) reports.emplace_back(tr.episode, r);
    emit_reports_csv(reports, cfg.env.goals.size(), fs::path(out) / "reports.csv");

    double means[3] = {0, 0, 0};
    for (const ConfidenceTrace& tr : traces)
        for (int k = 0; k < 3; ++k) means[k] += tr.snapshots[k].confidence;
    for (double& m : means) m /= static_cast<double>(traces.size());
    std::cout << to_string(schedule) << ": mean confidence " << format_double(means[0]) << " -> "
              << format_double(means[1]) << " -> " << format_double(means[2]) << "; results in "
              << out << "\n";
    return 0;
}

int cmd_assess(const std::string& config_file, const std::string& env_s,
               const std::string& policies_dir, std::uint64_t seed, bool has_seed,
               const std::string& dump_path) {
    ExperimentConfig cfg = config_from(config_file);
    if (has_seed) cfg.env.seed = seed;
    const EnvKind env_kind = parse_env_kind(env_s);

    const std::vector<QTable> policies = load_policies(policies_dir, cfg.env);

    const std::uint64_t eseed = derive_seed(cfg.env.seed, 0xA55E55);
    Rng world_rng(derive_seed(eseed, 1));
    ObstacleMap world = spawn_obstacles(cfg.env, world_rng, cfg.env.start);
    std::vector<ScheduledChange> schedule;
    if (env_kind == EnvKind::Dynamic) schedule.push_back({cfg.exp1_change_t, ResampleAll{}});
    DeliveryEnv env(cfg.env, world, schedule, derive_seed(eseed, 2), derive_seed(eseed, 3));

    WorldModel model{cfg.env, world, &policies};
    SessionConfig session;
    session.thresholds = default_thresholds(cfg.env, cfg.assess);
    session.trigger.delta = {cfg.assess.si_delta, cfg.assess.si_delta};
    session.n_rollouts = cfg.assess.n_rollouts;
    session.sync_mode = cfg.assess.map_refresh_on_assess ? MapSyncMode::RefreshOnAssess
                                                         : MapSyncMode::FovSensing;
    session.assess_seed = derive_seed(eseed, 4);
    session.goal_hook = [&goals = cfg.env.goals](const ConfidenceReport& rep, Cell pos) {
        return select_goal(rep.per_goal, pos, goals);
    };

    if (!dump_path.empty()) {
        // dump the a-priori buffer for the first goal before running
        AgentState s0{cfg.env.start, 0, 0, 0, 0};
        Rng dump_rng(session.assess_seed);
        const ExperienceBuffer buf = simulate(model, 0, s0, session.n_rollouts, dump_rng);
        std::ofstream dump(dump_path);
        if (!dump) throw std::runtime_error("cannot open dump file: " + dump_path);
        dump_buffer(buf, dump);
        std::cout << "wrote a-priori buffer for goal 0 to " << dump_path << "\n";
    }

    const EpisodeRecord rec = et_goa_session(model, 0, env, session);

    for (const ConfidenceReport& rep : rec.reports) {
        std::cout << "[t=" << rep.t << "] " << (rep.trigger == TriggerKind::Initial
                                                    ? "initial assessment"
                                                    : std::string("surprise on ")
                                                          + (rep.trigger_marginal == kMarginalCraters
                                                                 ? "crater count"
                                                                 : "dust count"))
                  << ", si_min=" << format_double(rep.si_min) << ", goa=";
        for (std::size_t g = 0; g < rep.per_goal.size(); ++g) {
            if (g) std::cout << '/';
            std::cout << format_double(rep.per_goal[g]);
        }
        const double best = *std::max_element(rep.per_goal.begin(), rep.per_goal.end());
        std::cout << " (" << to_string(semantic_label(best)) << ")\n";
    }
    std::cout << "goal history:";
    for (int g : rec.goal_history) std::cout << ' ' << g;
    std::cout << "\noutcome: " << (rec.delivered ? "delivered" : rec.broken ? "broken" : "timed out")
              << " after " << rec.steps << " steps, " << rec.craters_hit << " craters hit, "
              << rec.n_triggers << " triggers\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-triggered competency self-assessment toolkit"};
    app.require_subcommand(1);

    std::string config_file;
    app.add_option("--config", config_file, "key = value config file")->check(CLI::ExistingFile);

    // train
    auto* train = app.add_subcommand("train", "train and save greedy delivery policies");
    int goal_index = -1;
    bool train_all = false;
    std::string train_out;
    std::uint64_t train_seed = 0;
    auto* train_goal_opt = train->add_option("--goal", goal_index, "goal index to train");
    auto* train_all_flag = train->add_flag("--all", train_all, "train every goal into --out dir");
    train->add_option("--out", train_out, "output file (or directory with --all)")->required();
    auto* train_seed_opt = train->add_option("--seed", train_seed, "seed override");
    train_goal_opt->excludes(train_all_flag);

    // exp1
    auto* exp1 = app.add_subcommand("exp1", "delivery performance across conditions");
    std::string exp1_env = "static", exp1_cond = "etgoa", exp1_out = "exp1_out";
    std::string exp1_policies = "policies";
    int exp1_episodes = 0;
    std::uint64_t exp1_seed = 0;
    exp1->add_option("--env", exp1_env, "static|dynamic")->required();
    exp1->add_option("--condition", exp1_cond, "none|goa|etgoa")->required();
    exp1->add_option("--episodes", exp1_episodes, "episode count override");
    auto* exp1_seed_opt = exp1->add_option("--seed", exp1_seed, "seed override");
    exp1->add_option("--out", exp1_out, "output directory")->required();
    exp1->add_option("--policies", exp1_policies, "directory with trained policies");

    // exp2
    auto* exp2 = app.add_subcommand("exp2", "difficulty tracking toward one goal");
    std::string exp2_schedule, exp2_out = "exp2_out", exp2_policies = "policies";
    int exp2_episodes = 0;
    std::uint64_t exp2_seed = 0;
    exp2->add_option("--schedule", exp2_schedule, "ehe|heh")->required();
    exp2->add_option("--episodes", exp2_episodes, "episode count override");
    auto* exp2_seed_opt = exp2->add_option("--seed", exp2_seed, "seed override");
    exp2->add_option("--out", exp2_out, "output directory")->required();
    exp2->add_option("--policies", exp2_policies, "directory with trained policies");

    // assess
    auto* assess = app.add_subcommand("assess", "verbose single-episode trace");
    std::string assess_env = "dynamic", assess_policies = "policies", assess_dump;
    std::uint64_t assess_seed_v = 0;
    assess->add_option("--env", assess_env, "static|dynamic");
    assess->add_option("--policies", assess_policies, "directory with trained policies");
    auto* assess_seed_opt = assess->add_option("--seed", assess_seed_v, "seed override");
    assess->add_option("--dump-buffer", assess_dump, "write the a-priori buffer histogram here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            if (!train_all && goal_index < 0)
                throw std::invalid_argument("train needs --goal <i> or --all");
            return cmd_train(config_file, goal_index, train_all, train_out, train_seed,
                             !train_seed_opt->empty());
        }
        if (exp1->parsed())
            return cmd_exp1(config_file, exp1_env, exp1_cond, exp1_episodes, exp1_seed,
                            !exp1_seed_opt->empty(), exp1_out, exp1_policies);
        if (exp2->parsed())
            return cmd_exp2(config_file, exp2_schedule, exp2_episodes, exp2_seed,
                            !exp2_seed_opt->empty(), exp2_out, exp2_policies);
        if (assess->parsed())
            return cmd_assess(config_file, assess_env, assess_policies, assess_seed_v,
                              !assess_seed_opt->empty(), assess_dump);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
