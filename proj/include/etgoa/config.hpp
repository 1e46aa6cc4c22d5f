#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "etgoa/grid.hpp"

namespace etgoa {

// Environment parameters for the delivery gridworld. Everything here can be
// overridden from a config file (see load_config and configs/default.cfg).
struct EnvConfig {
    int grid_w = 50;
    int grid_h = 50;
    // few but wide hazards: goal corridors differ sharply in danger, so an
    // informed goal choice matters while a random one frequently fails
    int n_craters = 12;
    int n_dust = 6;
    double crater_radius = 2.2;
    double dust_radius = 4.0;
    double slip_prob = 0.25;
    double sensor_miss_prob = 0.5;
    int hit_budget = 3;
    int horizon = 100;
    double fov_radius = 10.0;
    double dust_near_crater_prob = 0.7;
    int dust_near_crater_dist = 5;
    Cell start{25, 2};
    std::vector<Cell> goals{{10, 45}, {25, 45}, {40, 45}};
    std::uint64_t seed = 1;

    void validate() const;  // throws std::invalid_argument on a bad field
};

struct AssessConfig {
    int n_rollouts = 50;
    double si_delta = 0.05;
    // threshold on total craters hit; negative means "use hit_budget - 1"
    int craters_hit_threshold = -1;
    // pull the full map into the model when a surprise fires (the agent keeps
    // discovering obstacles through its sensor either way)
    bool map_refresh_on_assess = true;
};

struct ExperimentConfig {
    EnvConfig env;
    AssessConfig assess;
    int episodes = 100;
    int exp1_change_t = 10;
    int exp2_change_t1 = 10;
    int exp2_change_t2 = 30;
    int exp2_goal = 1;

    void validate() const;
};

// key = value file, '#' starts a comment; unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace etgoa
