#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "etgoa/config.hpp"

using namespace etgoa;
namespace fs = std::filesystem;

namespace {

fs::path write_config(const std::string& body) {
    const fs::path path = fs::temp_directory_path() / "etgoa_test_config.cfg";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("defaults validate") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config files override defaults and reject junk") {
    const fs::path path = write_config(
        "# delivery setup\n"
        "n_craters = 12\n"
        "slip_prob = 0.5   # noisy dust\n"
        "goals = 5,45; 25,45 ;45,45\n"
        "start = 25,1\n"
        "seed = 99\n"
        "map_refresh_on_assess = false\n"
        "episodes = 7\n");
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.env.n_craters == 12);
    CHECK(cfg.env.slip_prob == 0.5);
    CHECK(cfg.env.goals == std::vector<Cell>{{5, 45}, {25, 45}, {45, 45}});
    CHECK(cfg.env.start == Cell{25, 1});
    CHECK(cfg.env.seed == 99);
    CHECK_FALSE(cfg.assess.map_refresh_on_assess);
    CHECK(cfg.episodes == 7);
    CHECK(cfg.env.n_dust == 10);  // untouched default
    fs::remove(path);

    SUBCASE("unknown keys are rejected") {
        const fs::path bad = write_config("n_cratters = 12\n");
        CHECK_THROWS_AS(load_config(bad), std::invalid_argument);
        fs::remove(bad);
    }
    SUBCASE("malformed numbers are rejected") {
        const fs::path bad = write_config("slip_prob = lots\n");
        CHECK_THROWS_AS(load_config(bad), std::invalid_argument);
        fs::remove(bad);
    }
    SUBCASE("invariant violations are rejected") {
        const fs::path bad = write_config("slip_prob = 1.5\n");
        CHECK_THROWS_AS(load_config(bad), std::invalid_argument);
        const fs::path bad2 = write_config("goals = 10,45; 10,45\n");
        CHECK_THROWS_AS(load_config(bad2), std::invalid_argument);
        fs::remove(bad);
        fs::remove(bad2);
    }
    SUBCASE("missing file is an error") {
        CHECK_THROWS_AS(load_config("/nonexistent/etgoa.cfg"), std::runtime_error);
    }
}
