#include "etgoa/qtable.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace etgoa {

QTable::QTable(int grid_w, int grid_h, Cell goal)
    : w_(grid_w), h_(grid_h), goal_(goal),
      values_(static_cast<std::size_t>(grid_w) * grid_h * kNumActions, 0.0) {
    if (grid_w < 1 || grid_h < 1) throw std::invalid_argument("qtable: bad grid size");
    if (!in_bounds(goal, grid_w, grid_h)) throw std::invalid_argument("qtable: goal out of bounds");
}

Action QTable::greedy_action(Cell c) const {
    int best = 0;
    double best_v = value(c, static_cast<Action>(0));
    for (int a = 1; a < kNumActions; ++a) {
        const double v = value(c, static_cast<Action>(a));
        if (v > best_v) {
            best_v = v;
            best = a;
        }
    }
    return static_cast<Action>(best);
}

void QTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open policy file for writing: " + path.string());
    out << "etgoa-qtable 1\n";
    out << w_ << ' ' << h_ << ' ' << goal_.x << ' ' << goal_.y << '\n';
    char buf[64];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%a", values_[i]);
        out << buf << ((i + 1) % kNumActions == 0 ? '\n' : ' ');
    }
    if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

QTable QTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open policy file: " + path.string());

    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (!in || magic != "etgoa-qtable")
        throw std::runtime_error("not a policy file: " + path.string());
    if (version != 1)
        throw std::runtime_error("unsupported policy file version "
                                 + std::to_string(version) + ": " + path.string());

    int w = 0, h = 0;
    Cell goal;
    in >> w >> h >> goal.x >> goal.y;
    if (!in || w < 1 || h < 1 || w > 4096 || h > 4096 || !in_bounds(goal, w, h))
        throw std::runtime_error("corrupt policy header: " + path.string());

    QTable q(w, h, goal);
    std::string tok;
    for (std::size_t i = 0; i < q.values_.size(); ++i) {
        if (!(in >> tok))
            throw std::runtime_error("truncated policy file: " + path.string());
        char* end = nullptr;
        q.values_[i] = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw std::runtime_error("corrupt policy value in " + path.string());
    }
    return q;
}

QTable QTable::load(const std::filesystem::path& path, int expect_w, int expect_h) {
    QTable q = load(path);
    if (q.w_ != expect_w || q.h_ != expect_h)
        throw std::runtime_error("policy grid is " + std::to_string(q.w_) + "x"
                                 + std::to_string(q.h_) + " but " + std::to_string(expect_w) + "x"
                                 + std::to_string(expect_h) + " was expected: " + path.string());
    return q;
}

namespace {

// greedy episode length from every cell must equal the Manhattan distance
std::vector<Cell> suboptimal_cells(const QTable& q) {
    std::vector<Cell> bad;
    for (int y = 0; y < q.grid_h(); ++y) {
        for (int x = 0; x < q.grid_w(); ++x) {
            const Cell start{x, y};
            if (start == q.goal()) continue;
            const int dist = manhattan(start, q.goal());
            Cell c = start;
            int steps = 0;
            while (c != q.goal() && steps < dist) {
                c = apply_action(c, q.greedy_action(c), q.grid_w(), q.grid_h());
                ++steps;
            }
            if (c != q.goal()) bad.push_back(start);
        }
    }
    return bad;
}

// focus, when given, biases half the episode starts toward cells that still
// walk a non-shortest path; they see too few visits under uniform starts
void run_episodes(QTable& q, const TrainParams& p, int episodes, double eps_start,
                  const std::vector<Cell>* focus, Rng& rng) {
    const int w = q.grid_w(), h = q.grid_h();
    const Cell goal = q.goal();
    // decay reaches eps_end about 60% of the way through
    const double decay =
        episodes > 1 ? std::pow(p.eps_end / std::max(eps_start, 1e-12), 1.0 / (0.6 * episodes))
                     : 1.0;
    double eps = eps_start;
    for (int ep = 0; ep < episodes; ++ep) {
        Cell s{rng.uniform_int(0, w - 1), rng.uniform_int(0, h - 1)};
        if (focus && !focus->empty() && rng.bernoulli(0.5))
            s = (*focus)[rng.uniform_int(0, static_cast<int>(focus->size()) - 1)];
        if (s == goal) continue;
        for (int step = 0; step < p.max_steps; ++step) {
            const Action a = rng.uniform() < eps
                                 ? static_cast<Action>(rng.uniform_int(0, kNumActions - 1))
                                 : q.greedy_action(s);
            const Cell ns = apply_action(s, a, w, h);
            const bool terminal = ns == goal;
            const double reward = p.step_reward + (terminal ? p.goal_reward : 0.0);
            double target = reward;
            if (!terminal) {
                double best = q.value(ns, static_cast<Action>(0));
                for (int b = 1; b < kNumActions; ++b)
                    best = std::max(best, q.value(ns, static_cast<Action>(b)));
                target += p.gamma * best;
            }
            double& qv = q.value(s, a);
            qv += p.alpha * (target - qv);
            if (terminal) break;
            s = ns;
        }
        eps = std::max(p.eps_end, eps * decay);
    }
}

}  // namespace

QTable train_policy(Cell goal, const TrainParams& params, int grid_w, int grid_h, Rng& rng) {
    if (!in_bounds(goal, grid_w, grid_h))
        throw std::invalid_argument("train_policy: goal out of bounds");

    QTable q(grid_w, grid_h, goal);
    run_episodes(q, params, params.episodes, params.eps_start, nullptr, rng);
    for (int round = 1;; ++round) {
        const std::vector<Cell> bad = suboptimal_cells(q);
        if (bad.empty()) return q;
        if (round >= params.max_rounds) {
            std::ostringstream msg;
            msg << "policy for goal (" << goal.x << "," << goal.y << ") failed to converge after "
                << params.max_rounds << " rounds (" << params.episodes
                << " base episodes): " << bad.size() << " cells off the shortest path, e.g. ("
                << bad.front().x << "," << bad.front().y << ")";
            throw std::runtime_error(msg.str());
        }
        const int remedial = std::max(params.episodes / 5, 200 * static_cast<int>(bad.size()));
        run_episodes(q, params, remedial, 0.3, &bad, rng);
    }
}

}  // namespace etgoa
