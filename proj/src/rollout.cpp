#include "etgoa/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace etgoa {

double MarginalDistribution::mass_at(int v) const {
    const auto it = mass.find(v);
    return it == mass.end() ? 0.0 : it->second;
}

void MarginalDistribution::validate() const {
    double sum = 0.0;
    for (const auto& [v, m] : mass) {
        if (m < 0.0) throw std::invalid_argument("marginal has a negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("marginal is not normalized (sum " + std::to_string(sum) + ")");
}

ExperienceBuffer::ExperienceBuffer(int start_t, int horizon, std::vector<BufferEntry> entries,
                                   std::vector<OutcomeSample> outcomes)
    : start_t_(start_t), horizon_(horizon), entries_(std::move(entries)),
      outcomes_(std::move(outcomes)) {
    if (horizon_ < start_t_) throw std::invalid_argument("buffer horizon before start");
    if (entries_.size() != static_cast<std::size_t>(horizon_ - start_t_))
        throw std::invalid_argument("buffer entries do not cover (start, horizon]");
}

const BufferEntry& ExperienceBuffer::at(int t) const {
    if (t <= start_t_ || t > horizon_)
        throw std::out_of_range("experience buffer has no entry for t=" + std::to_string(t)
                                + " (covers " + std::to_string(start_t_ + 1) + ".."
                                + std::to_string(horizon_) + ")");
    return entries_[static_cast<std::size_t>(t - start_t_ - 1)];
}

const QTable& WorldModel::policy(int goal_index) const {
    if (!policies) throw std::logic_error("world model has no policies");
    if (goal_index < 0 || goal_index >= static_cast<int>(policies->size()))
        throw std::out_of_range("no policy for goal index " + std::to_string(goal_index));
    return (*policies)[goal_index];
}

ExperienceBuffer simulate(const WorldModel& model, int goal_index, const AgentState& from,
                          int n_rollouts, Rng& rng) {
    if (n_rollouts < 1) throw std::invalid_argument("simulate needs at least one rollout");
    const EnvConfig& cfg = model.cfg;
    if (from.t >= cfg.horizon) throw std::invalid_argument("simulate from a finished episode");
    const QTable& q = model.policy(goal_index);
    const Cell goal = q.goal();

    const int span = cfg.horizon - from.t;
    std::vector<std::map<int, int>> crater_counts(span);
    std::vector<std::map<int, int>> dust_counts(span);
    std::vector<OutcomeSample> outcomes;
    outcomes.reserve(n_rollouts);

    for (int r = 0; r < n_rollouts; ++r) {
        AgentState s = from;
        // counts held when the rollout ends before the horizon
        SenseResult here = sense_geometric(model.known, s.pos, cfg.fov_radius);
        int last_c = here.craters;
        int last_z = here.dust;
        bool reached = s.pos == goal;
        bool broken = s.hits >= cfg.hit_budget;
        int idx = 0;
        while (!reached && !broken && s.t < cfg.horizon) {
            const StepEvents ev = step_agent(s, q.greedy_action(s.pos), model.known, cfg, goal,
                                             rng, SenseNoise::Geometric);
            last_c = s.craters_in_fov;
            last_z = s.dust_in_fov;
            crater_counts[idx][last_c] += 1;
            dust_counts[idx][last_z] += 1;
            ++idx;
            reached = ev.reached_goal;
            broken = ev.broken;
        }
        for (; idx < span; ++idx) {
            crater_counts[idx][last_c] += 1;
            dust_counts[idx][last_z] += 1;
        }
        outcomes.push_back({s.hits, reached && !broken, s.t});
    }

    std::vector<BufferEntry> entries(span);
    const double n = static_cast<double>(n_rollouts);
    for (int i = 0; i < span; ++i) {
        for (const auto& [v, c] : crater_counts[i]) entries[i].craters.mass[v] = c / n;
        for (const auto& [v, c] : dust_counts[i]) entries[i].dust.mass[v] = c / n;
    }
    return ExperienceBuffer(from.t, cfg.horizon, std::move(entries), std::move(outcomes));
}

void sync_known_map(WorldModel& model, const std::vector<Obstacle>& visible, Cell pos) {
    const double fov = model.cfg.fov_radius;
    auto update = [&](std::vector<Obstacle>& known, ObstacleKind kind) {
        // drop known obstacles that should have been seen here but were not
        std::erase_if(known, [&](const Obstacle& o) {
            if (euclidean(o.center, pos) > fov + o.radius) return false;
            return std::find(visible.begin(), visible.end(), o) == visible.end();
        });
        for (const Obstacle& o : visible) {
            if (o.kind != kind) continue;
            if (std::find(known.begin(), known.end(), o) == known.end()) known.push_back(o);
        }
    };
    update(model.known.craters, ObstacleKind::Crater);
    update(model.known.dust, ObstacleKind::Dust);
}

void dump_buffer(const ExperienceBuffer& buffer, std::ostream& out) {
    out << "experience buffer: t in " << buffer.start_t() + 1 << ".." << buffer.horizon() << ", "
        << buffer.outcomes().size() << " rollouts\n";
    for (int t = buffer.start_t() + 1; t <= buffer.horizon(); ++t) {
        const BufferEntry& e = buffer.at(t);
        out << "t=" << t << " craters{";
        for (const auto& [v, m] : e.craters.mass) out << ' ' << v << ':' << m;
        out << " } dust{";
        for (const auto& [v, m] : e.dust.mass) out << ' ' << v << ':' << m;
        out << " }\n";
    }
    int delivered = 0;
    for (const OutcomeSample& o : buffer.outcomes()) delivered += o.delivered ? 1 : 0;
    out << "outcomes: " << delivered << '/' << buffer.outcomes().size() << " delivered\n";
}

}  // namespace etgoa
