#include <doctest.h>

#include <cmath>

#include "etgoa/rollout.hpp"

using namespace etgoa;

namespace {

// 5x5 world with a hand-built straight-line policy toward (4,2); small fov so
// the crater count varies along the path.
struct TinyWorld {
    EnvConfig cfg;
    std::vector<QTable> policies;
    WorldModel model;

    TinyWorld() : policies{make_policy()} {
        cfg.grid_w = 5;
        cfg.grid_h = 5;
        cfg.start = {0, 2};
        cfg.goals = {{4, 2}};
        cfg.horizon = 4;
        cfg.n_craters = 1;
        cfg.n_dust = 0;
        cfg.fov_radius = 1.2;
        cfg.hit_budget = 99;
        cfg.slip_prob = 0.0;
        model.cfg = cfg;
        model.known.craters.push_back({{2, 3}, 0.5, ObstacleKind::Crater});
        model.policies = &policies;
    }

    static QTable make_policy() {
        QTable q(5, 5, {4, 2});
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x)
                for (int a = 0; a < kNumActions; ++a) {
                    const Cell next = apply_action({x, y}, static_cast<Action>(a), 5, 5);
                    q.value({x, y}, static_cast<Action>(a)) = -manhattan(next, {4, 2});
                }
        return q;
    }
};

}  // namespace

TEST_CASE("marginal validation accepts unit mass and rejects the rest") {
    MarginalDistribution ok;
    ok.mass = {{0, 0.5}, {1, 0.3}, {2, 0.2}};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.mass_at(1) == 0.3);
    CHECK(ok.mass_at(7) == 0.0);

    MarginalDistribution low;
    low.mass = {{0, 0.5}};
    CHECK_THROWS_AS(low.validate(), std::invalid_argument);

    MarginalDistribution negative;
    negative.mass = {{0, 1.5}, {1, -0.5}};
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("experience buffer covers (start, horizon] and rejects the rest") {
    std::vector<BufferEntry> entries(3);
    for (auto& e : entries) {
        e.craters.mass = {{0, 1.0}};
        e.dust.mass = {{0, 1.0}};
    }
    const ExperienceBuffer buf(2, 5, std::move(entries), {{0, true, 5}});
    CHECK_NOTHROW(buf.at(3));
    CHECK_NOTHROW(buf.at(5));
    CHECK_THROWS_AS(buf.at(2), std::out_of_range);
    CHECK_THROWS_AS(buf.at(6), std::out_of_range);
}

TEST_CASE("simulate with an empty known map predicts point masses at zero") {
    TinyWorld w;
    w.model.known = ObstacleMap{};
    const AgentState from{w.cfg.start, 0, 0, 0, 0};
    Rng rng(1);
    const ExperienceBuffer buf = simulate(w.model, 0, from, 50, rng);
    for (int t = 1; t <= w.cfg.horizon; ++t) {
        const BufferEntry& e = buf.at(t);
        CHECK(e.craters.mass_at(0) == 1.0);
        CHECK(e.dust.mass_at(0) == 1.0);
    }
    for (const OutcomeSample& o : buf.outcomes()) {
        CHECK(o.delivered);
        CHECK(o.craters_hit == 0);
        CHECK(o.steps == 4);
    }
}

TEST_CASE("a single rollout gives point-mass marginals") {
    TinyWorld w;
    const AgentState from{w.cfg.start, 0, 0, 0, 0};
    Rng rng(3);
    const ExperienceBuffer buf = simulate(w.model, 0, from, 1, rng);
    for (int t = 1; t <= w.cfg.horizon; ++t) {
        CHECK(buf.at(t).craters.mass.size() == 1);
        CHECK(buf.at(t).dust.mass.size() == 1);
    }
}

TEST_CASE("a crater straddling the only greedy path is hit exactly once") {
    TinyWorld w;
    // move the crater onto the path: covers only cell (2,2)
    w.model.known.craters[0] = {{2, 2}, 0.5, ObstacleKind::Crater};
    const AgentState from{w.cfg.start, 0, 0, 0, 0};
    Rng rng(9);
    const ExperienceBuffer buf = simulate(w.model, 0, from, 25, rng);
    for (const OutcomeSample& o : buf.outcomes()) {
        CHECK(o.craters_hit == 1);
        CHECK(o.delivered);
    }
}

TEST_CASE("every simulated marginal normalizes and simulate is deterministic") {
    TinyWorld w;
    w.cfg.slip_prob = 1.0;
    w.model.cfg = w.cfg;
    w.model.known.dust.push_back({{2, 2}, 10.0, ObstacleKind::Dust});  // slips everywhere
    const AgentState from{w.cfg.start, 0, 0, 0, 0};

    Rng r1(42), r2(42);
    const ExperienceBuffer a = simulate(w.model, 0, from, 200, r1);
    const ExperienceBuffer b = simulate(w.model, 0, from, 200, r2);
    for (int t = 1; t <= w.cfg.horizon; ++t) {
        CHECK_NOTHROW(a.at(t).craters.validate());
        CHECK_NOTHROW(a.at(t).dust.validate());
        CHECK(a.at(t).craters.mass == b.at(t).craters.mass);
        CHECK(a.at(t).dust.mass == b.at(t).dust.mass);
    }
}

TEST_CASE("simulate rejects bad arguments") {
    TinyWorld w;
    const AgentState from{w.cfg.start, 0, 0, 0, 0};
    Rng rng(1);
    CHECK_THROWS_AS(simulate(w.model, 0, from, 0, rng), std::invalid_argument);
    const AgentState done{w.cfg.start, 0, 0, 0, w.cfg.horizon};
    CHECK_THROWS_AS(simulate(w.model, 0, done, 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(simulate(w.model, 5, from, 10, rng), std::out_of_range);
}

TEST_CASE("sync_known_map adds what is seen and drops what is provably gone") {
    TinyWorld w;
    const Obstacle known_far{{4, 4}, 0.5, ObstacleKind::Crater};   // outside fov from (0,2)
    const Obstacle known_near{{1, 2}, 0.5, ObstacleKind::Crater};  // inside fov from (0,2)
    const Obstacle fresh{{0, 1}, 0.5, ObstacleKind::Crater};

    SUBCASE("empty reading with nothing in view changes nothing") {
        w.model.known = ObstacleMap{};
        w.model.known.craters = {known_far};
        sync_known_map(w.model, {}, {0, 2});
        CHECK(w.model.known.craters == std::vector<Obstacle>{known_far});
    }
    SUBCASE("a newly visible obstacle is learned") {
        w.model.known = ObstacleMap{};
        sync_known_map(w.model, {fresh}, {0, 2});
        CHECK(w.model.known.craters == std::vector<Obstacle>{fresh});
        // seeing it again does not duplicate it
        sync_known_map(w.model, {fresh}, {0, 2});
        CHECK(w.model.known.craters.size() == 1);
    }
    SUBCASE("a known obstacle missing from its expected view is removed") {
        w.model.known = ObstacleMap{};
        w.model.known.craters = {known_near, known_far};
        sync_known_map(w.model, {}, {0, 2});
        CHECK(w.model.known.craters == std::vector<Obstacle>{known_far});
    }
}
