#include "etgoa/assessment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace etgoa {

std::vector<OutcomeThreshold> default_thresholds(const EnvConfig& env, const AssessConfig& assess) {
    const double craters_z = assess.craters_hit_threshold >= 0
                                 ? static_cast<double>(assess.craters_hit_threshold)
                                 : static_cast<double>(env.hit_budget - 1);
    return {
        {OutcomeKind::CratersHit, OutcomeDirection::FewerIsBetter, craters_z},
        {OutcomeKind::Delivered, OutcomeDirection::MoreIsBetter, 1.0},
    };
}

double surprise_index(int observed, const MarginalDistribution& dist) {
    dist.validate();
    const double observed_mass = dist.mass_at(observed);
    if (observed_mass <= 0.0) return 0.0;
    double si = 0.0;
    for (const auto& [v, m] : dist.mass) {
        if (m <= observed_mass) si += m;
    }
    return std::min(si, 1.0);
}

double goa(const std::vector<OutcomeSample>& samples,
           const std::vector<OutcomeThreshold>& thresholds) {
    if (samples.empty()) throw std::invalid_argument("goa needs at least one outcome sample");
    if (thresholds.empty()) throw std::invalid_argument("goa needs at least one threshold");

    double confidence = 1.0;
    for (const OutcomeThreshold& th : thresholds) {
        int ok = 0;
        for (const OutcomeSample& s : samples) {
            const double v = th.outcome == OutcomeKind::CratersHit
                                 ? static_cast<double>(s.craters_hit)
                                 : (s.delivered ? 1.0 : 0.0);
            const bool met = th.direction == OutcomeDirection::FewerIsBetter ? v <= th.value
                                                                             : v >= th.value;
            ok += met ? 1 : 0;
        }
        confidence = std::min(confidence, ok / static_cast<double>(samples.size()));
    }
    return confidence;
}

SemanticLabel semantic_label(double confidence) {
    if (!(confidence >= 0.0 && confidence <= 1.0))
        throw std::invalid_argument("confidence outside [0,1]");
    if (confidence < 0.25) return SemanticLabel::HighlyUnlikely;
    if (confidence < 0.5) return SemanticLabel::Unlikely;
    if (confidence < 0.75) return SemanticLabel::Likely;
    return SemanticLabel::HighlyLikely;
}

const char* to_string(SemanticLabel label) {
    switch (label) {
        case SemanticLabel::HighlyUnlikely: return "highly unlikely";
        case SemanticLabel::Unlikely: return "unlikely";
        case SemanticLabel::Likely: return "likely";
        case SemanticLabel::HighlyLikely: return "highly likely";
    }
    return "?";
}

EpisodeRecord et_goa_session(WorldModel model, int initial_goal, DeliveryEnv& env,
                             const SessionConfig& session) {
    if (!model.policies || model.policies->empty())
        throw std::invalid_argument("session needs trained policies");
    if (session.thresholds.empty())
        throw std::invalid_argument("session needs outcome thresholds");
    const int n_goals = static_cast<int>(model.policies->size());
    if (initial_goal < 0 || initial_goal >= n_goals)
        throw std::invalid_argument("initial goal index out of range");

    EpisodeRecord rec;
    Rng assess_rng(session.assess_seed);
    std::vector<ExperienceBuffer> buffers;  // one per goal, replaced atomically
    int active = initial_goal;

    Observation obs = env.reset();
    rec.states.push_back(obs.state);

    auto assess = [&](const AgentState& s, TriggerKind kind, int marginal, double si_min) {
        if (kind == TriggerKind::SurpriseTriggered
            && session.sync_mode == MapSyncMode::RefreshOnAssess) {
            model.known = env.truth();
        }
        ConfidenceReport rep;
        rep.t = s.t;
        rep.trigger = kind;
        rep.trigger_marginal = marginal;
        rep.si_min = si_min;
        std::vector<ExperienceBuffer> fresh;
        fresh.reserve(n_goals);
        for (int g = 0; g < n_goals; ++g) {
            fresh.push_back(simulate(model, g, s, session.n_rollouts, assess_rng));
            rep.per_goal.push_back(goa(fresh.back().outcomes(), session.thresholds));
        }
        buffers = std::move(fresh);
        if (kind == TriggerKind::SurpriseTriggered) ++rec.n_triggers;
        if (session.goal_hook) active = session.goal_hook(rep, s.pos);
        if (active < 0 || active >= n_goals)
            throw std::logic_error("goal hook returned an invalid goal index");
        env.set_goal(model.policy(active).goal());
        rec.reports.push_back(std::move(rep));
        rec.goal_history.push_back(active);
    };

    // before task execution: predict, store, assess, report
    assess(obs.state, TriggerKind::Initial, -1, 1.0);

    while (!env.done()) {
        const Action a = model.policy(active).greedy_action(obs.state.pos);
        obs = env.step(a);
        rec.actions.push_back(a);
        rec.states.push_back(obs.state);
        if (obs.reached_goal || obs.broken) break;

        sync_known_map(model, obs.visible, obs.state.pos);

        const BufferEntry& predicted = buffers[active].at(obs.state.t);
        const double si_c = surprise_index(obs.state.craters_in_fov, predicted.craters);
        const double si_z = surprise_index(obs.state.dust_in_fov, predicted.dust);
        rec.si_trace.push_back(std::min(si_c, si_z));

        const double slack_c = si_c - session.trigger.delta[kMarginalCraters];
        const double slack_z = si_z - session.trigger.delta[kMarginalDust];
        if (std::min(slack_c, slack_z) <= 0.0 && obs.state.t < model.cfg.horizon) {
            const int marginal = slack_c <= slack_z ? kMarginalCraters : kMarginalDust;
            assess(obs.state, TriggerKind::SurpriseTriggered, marginal, std::min(si_c, si_z));
        }
    }

    rec.delivered = obs.reached_goal && !obs.broken;
    rec.broken = obs.broken;
    rec.craters_hit = obs.state.hits;
    rec.steps = obs.state.t;
    return rec;
}

}  // namespace etgoa
