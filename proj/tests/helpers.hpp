#pragma once

#include <vector>

#include "etgoa/config.hpp"
#include "etgoa/qtable.hpp"

namespace etgoa::test {

// Policies for the default 50x50 config; trained once and shared across tests.
inline const std::vector<QTable>& default_policies() {
    static const std::vector<QTable> policies = [] {
        const EnvConfig env;
        std::vector<QTable> out;
        for (std::size_t g = 0; g < env.goals.size(); ++g) {
            Rng rng(derive_seed(9000, g));
            out.push_back(train_policy(env.goals[g], TrainParams{}, env.grid_w, env.grid_h, rng));
        }
        return out;
    }();
    return policies;
}

}  // namespace etgoa::test
