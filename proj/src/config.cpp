#include "etgoa/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace etgoa {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("config: " + what);
}

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const int r = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
    }
}

double parse_real(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double r = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": '" + v + "'");
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const std::uint64_t r = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad seed for " + key + ": '" + v + "'");
    }
}

Cell parse_cell(const std::string& v, const std::string& key) {
    const auto comma = v.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("config: expected 'x,y' for " + key + ": '" + v + "'");
    return {parse_int(trim(v.substr(0, comma)), key), parse_int(trim(v.substr(comma + 1)), key)};
}

std::vector<Cell> parse_cells(const std::string& v, const std::string& key) {
    std::vector<Cell> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_cell(item, key));
    }
    if (out.empty()) throw std::invalid_argument("config: no cells given for " + key);
    return out;
}

}  // namespace

void EnvConfig::validate() const {
    require(grid_w >= 2 && grid_h >= 2, "grid must be at least 2x2");
    require(n_craters >= 0 && n_dust >= 0, "obstacle counts must be nonnegative");
    require(crater_radius > 0.0 && dust_radius > 0.0, "obstacle radii must be positive");
    require(is_prob(slip_prob), "slip_prob must be in [0,1]");
    require(is_prob(sensor_miss_prob), "sensor_miss_prob must be in [0,1]");
    require(is_prob(dust_near_crater_prob), "dust_near_crater_prob must be in [0,1]");
    require(dust_near_crater_dist >= 0, "dust_near_crater_dist must be nonnegative");
    require(hit_budget >= 1, "hit_budget must be at least 1");
    require(horizon >= 1, "horizon must be at least 1");
    require(fov_radius >= 0.0, "fov_radius must be nonnegative");
    require(in_bounds(start, grid_w, grid_h), "start cell out of bounds");
    require(!goals.empty(), "at least one goal required");
    for (const Cell& g : goals) require(in_bounds(g, grid_w, grid_h), "goal cell out of bounds");
    std::set<Cell> distinct(goals.begin(), goals.end());
    require(distinct.size() == goals.size(), "goals must be distinct");
}

void ExperimentConfig::validate() const {
    env.validate();
    require(assess.n_rollouts >= 1, "n_rollouts must be at least 1");
    require(assess.si_delta <= 1.0, "si_delta must not exceed 1");
    require(episodes >= 1, "episodes must be at least 1");
    require(exp1_change_t >= 1 && exp2_change_t1 >= 1, "change times must be at least 1");
    require(exp2_change_t2 > exp2_change_t1, "second change must come after the first");
    require(exp2_goal >= 0 && exp2_goal < static_cast<int>(env.goals.size()),
            "exp2_goal out of range");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());

    ExperimentConfig cfg;
    const std::map<std::string, std::function<void(const std::string&, const std::string&)>>
        setters{
            {"grid_width", [&](auto& v, auto& k) { cfg.env.grid_w = parse_int(v, k); }},
            {"grid_height", [&](auto& v, auto& k) { cfg.env.grid_h = parse_int(v, k); }},
            {"n_craters", [&](auto& v, auto& k) { cfg.env.n_craters = parse_int(v, k); }},
            {"n_dust", [&](auto& v, auto& k) { cfg.env.n_dust = parse_int(v, k); }},
            {"crater_radius", [&](auto& v, auto& k) { cfg.env.crater_radius = parse_real(v, k); }},
            {"dust_radius", [&](auto& v, auto& k) { cfg.env.dust_radius = parse_real(v, k); }},
            {"slip_prob", [&](auto& v, auto& k) { cfg.env.slip_prob = parse_real(v, k); }},
            {"sensor_miss_prob",
             [&](auto& v, auto& k) { cfg.env.sensor_miss_prob = parse_real(v, k); }},
            {"hit_budget", [&](auto& v, auto& k) { cfg.env.hit_budget = parse_int(v, k); }},
            {"horizon", [&](auto& v, auto& k) { cfg.env.horizon = parse_int(v, k); }},
            {"fov_radius", [&](auto& v, auto& k) { cfg.env.fov_radius = parse_real(v, k); }},
            {"dust_near_crater_prob",
             [&](auto& v, auto& k) { cfg.env.dust_near_crater_prob = parse_real(v, k); }},
            {"dust_near_crater_dist",
             [&](auto& v, auto& k) { cfg.env.dust_near_crater_dist = parse_int(v, k); }},
            {"start", [&](auto& v, auto& k) { cfg.env.start = parse_cell(v, k); }},
            {"goals", [&](auto& v, auto& k) { cfg.env.goals = parse_cells(v, k); }},
            {"seed", [&](auto& v, auto& k) { cfg.env.seed = parse_u64(v, k); }},
            {"n_rollouts", [&](auto& v, auto& k) { cfg.assess.n_rollouts = parse_int(v, k); }},
            {"si_delta", [&](auto& v, auto& k) { cfg.assess.si_delta = parse_real(v, k); }},
            {"craters_hit_threshold",
             [&](auto& v, auto& k) { cfg.assess.craters_hit_threshold = parse_int(v, k); }},
            {"map_refresh_on_assess",
             [&](auto& v, auto& k) { cfg.assess.map_refresh_on_assess = parse_bool(v, k); }},
            {"episodes", [&](auto& v, auto& k) { cfg.episodes = parse_int(v, k); }},
            {"exp1_change_t", [&](auto& v, auto& k) { cfg.exp1_change_t = parse_int(v, k); }},
            {"exp2_change_t1", [&](auto& v, auto& k) { cfg.exp2_change_t1 = parse_int(v, k); }},
            {"exp2_change_t2", [&](auto& v, auto& k) { cfg.exp2_change_t2 = parse_int(v, k); }},
            {"exp2_goal", [&](auto& v, auto& k) { cfg.exp2_goal = parse_int(v, k); }},
        };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at " + path.string() + ":"
                                        + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument("config: unknown key '" + key + "' at " + path.string()
                                        + ":" + std::to_string(lineno));
        it->second(value, key);
    }
    cfg.validate();
    return cfg;
}

}  // namespace etgoa
