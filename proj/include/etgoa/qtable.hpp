#pragma once

#include <filesystem>
#include <vector>

#include "etgoa/grid.hpp"
#include "etgoa/rng.hpp"

namespace etgoa {

struct TrainParams {
    double alpha = 0.1;
    double gamma = 0.99;
    double eps_start = 1.0;
    double eps_end = 0.05;
    // at alpha 0.1 the far corners of a 50x50 grid need several hundred
    // thousand episodes before their action values separate cleanly
    int episodes = 400000;
    int max_steps = 300;       // per training episode
    double step_reward = -1.0;
    double goal_reward = 100.0;
    int max_rounds = 5;        // verify/retrain rounds before giving up
};

class QTable {
 public:
    QTable(int grid_w, int grid_h, Cell goal);

    double value(Cell c, Action a) const { return values_[index(c, a)]; }
    double& value(Cell c, Action a) { return values_[index(c, a)]; }

    // argmax over actions; exact ties go to the lowest action index
    Action greedy_action(Cell c) const;

    int grid_w() const { return w_; }
    int grid_h() const { return h_; }
    Cell goal() const { return goal_; }

    void save(const std::filesystem::path& path) const;
    static QTable load(const std::filesystem::path& path);
    static QTable load(const std::filesystem::path& path, int expect_w, int expect_h);

    bool operator==(const QTable&) const = default;

 private:
    std::size_t index(Cell c, Action a) const {
        return (static_cast<std::size_t>(c.y) * w_ + c.x) * kNumActions
               + static_cast<std::size_t>(a);
    }

    int w_;
    int h_;
    Cell goal_;
    std::vector<double> values_;
};

// Tabular Q-learning on the obstacle-free grid, one policy per goal. The
// returned greedy policy walks a shortest path (episode length equals the
// Manhattan distance) from every cell; verified after training, with extra
// training rounds on failure and std::runtime_error once max_rounds is spent.
QTable train_policy(Cell goal, const TrainParams& params, int grid_w, int grid_h, Rng& rng);

}  // namespace etgoa
