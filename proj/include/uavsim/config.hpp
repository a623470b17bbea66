#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "uavsim/engine.hpp"
#include "uavsim/error.hpp"
#include "uavsim/trace.hpp"

namespace uavsim {

// One experiment: a dataset, the policies to compare on it, and the shared
// simulation settings. The policy field of `sim` is replaced per policy.
struct ExperimentSpec {
    Dataset dataset;
    std::vector<PolicyConfig> policies;
    SimConfig sim;
    std::filesystem::path output_dir = "out";
};

namespace detail {

class IniReader {
public:
    IniReader(const boost::property_tree::ptree& tree, std::string origin) : tree_(tree), origin_(std::move(origin)) {
        for (const auto& [section, body] : tree_) {
            if (body.empty() && !body.data().empty())
                throw config_error(origin_ + ": key '" + section + "' appears outside any [section]");
        }
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto sec = tree_.get_child_optional(section);
        return sec && sec->find(key) != sec->not_found();
    }

    std::string text(const std::string& section, const std::string& key, const std::string& fallback) {
        seen_[section].insert(key);
        const auto sec = tree_.get_child_optional(section);
        if (!sec) return fallback;
        const auto it = sec->find(key);
        if (it == sec->not_found()) return fallback;
        return trim(it->second.data());
    }

    double real(const std::string& section, const std::string& key, double fallback) {
        if (!has(section, key)) {
            seen_[section].insert(key);
            return fallback;
        }
        const std::string raw = text(section, key, "");
        double v = 0;
        if (!parse_number(raw, v) || !std::isfinite(v)) fail(section, key, "expected a number, got '" + raw + "'");
        return v;
    }

    long long integer(const std::string& section, const std::string& key, long long fallback) {
        if (!has(section, key)) {
            seen_[section].insert(key);
            return fallback;
        }
        const std::string raw = text(section, key, "");
        long long v = 0;
        if (!parse_number(raw, v)) fail(section, key, "expected an integer, got '" + raw + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const {
        throw config_error(origin_ + ": [" + section + "] " + key + ": " + what);
    }

    // Unknown sections and keys are errors.
    void reject_unknown() const {
        for (const auto& [section, body] : tree_) {
            const auto it = seen_.find(section);
            if (it == seen_.end()) throw config_error(origin_ + ": unknown section [" + section + "]");
            for (const auto& [key, value] : body) {
                if (!it->second.count(key)) throw config_error(origin_ + ": [" + section + "] unknown key '" + key + "'");
            }
        }
    }

    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    }

private:
    const boost::property_tree::ptree& tree_;
    std::string origin_;
    std::map<std::string, std::set<std::string>> seen_;
};

inline std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    for (auto part : split_fields(s, sep)) {
        auto t = IniReader::trim(std::string(part));
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

} // namespace detail

// Parses the INI-style experiment file. Every key is optional; defaults are the
// standard experiment settings (10 km area, 4x4 grid, A=10, B=0.02, IR=10,
// 1 km/round, 200 m radius, epsilon 0.2, penalty -1).
inline ExperimentSpec parse_experiment(std::istream& in, const std::string& origin = "<config>",
                                       const std::filesystem::path& base_dir = {}) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw config_error(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    detail::IniReader ini(tree, origin);
    ExperimentSpec spec;
    SimConfig& sim = spec.sim;

    sim.grid.area_width = ini.real("grid", "width_m", sim.grid.area_width);
    sim.grid.area_height = ini.real("grid", "height_m", sim.grid.area_height);
    sim.grid.rows = static_cast<int>(ini.integer("grid", "rows", sim.grid.rows));
    sim.grid.cols = static_cast<int>(ini.integer("grid", "cols", sim.grid.cols));

    sim.voi.initial_value = ini.real("voi", "A", sim.voi.initial_value);
    sim.voi.decay_rate = ini.real("voi", "B", sim.voi.decay_rate);

    sim.ir.animal_weight = ini.real("reward", "sigma", sim.ir.animal_weight);
    sim.ir.quality_factor = ini.real("reward", "lambda", sim.ir.quality_factor);
    sim.ir.type_weight = ini.real("reward", "W", sim.ir.type_weight);
    sim.ir.distance_scale = ini.real("reward", "alpha", sim.ir.distance_scale);
    sim.ir.estimated_area = ini.real("reward", "A_est", sim.ir.estimated_area);
    sim.ir.duration = ini.real("reward", "T", sim.ir.duration);
    sim.ir.max_duration = ini.real("reward", "T_max", sim.ir.max_duration);

    sim.uav_speed = ini.real("sim", "uav_speed_m", sim.uav_speed);
    sim.encounter_radius = ini.real("sim", "encounter_radius_m", sim.encounter_radius);
    sim.dwell_period = static_cast<int>(ini.integer("sim", "dwell_period", sim.dwell_period));
    sim.total_rounds = static_cast<int>(ini.integer("sim", "total_rounds", sim.total_rounds));
    sim.start_cell.row = static_cast<int>(ini.integer("sim", "start_row", sim.start_cell.row));
    sim.start_cell.col = static_cast<int>(ini.integer("sim", "start_col", sim.start_cell.col));
    sim.n_runs = static_cast<int>(ini.integer("sim", "n_runs", sim.n_runs));
    const long long seed = ini.integer("sim", "base_seed", static_cast<long long>(sim.base_seed));
    if (seed < 0) ini.fail("sim", "base_seed", "must be nonnegative");
    sim.base_seed = static_cast<std::uint64_t>(seed);

    PolicyConfig proto;
    proto.epsilon = ini.real("policy", "epsilon", proto.epsilon);
    proto.gamma = ini.real("policy", "gamma", proto.gamma);
    proto.r_negative = ini.real("policy", "r_negative", proto.r_negative);
    const long long policy_seed = ini.integer("policy", "rng_seed", 0);
    if (policy_seed < 0) ini.fail("policy", "rng_seed", "must be nonnegative");
    proto.rng_seed = static_cast<std::uint64_t>(policy_seed);
    const auto kinds = detail::split_list(ini.text("policy", "kinds", "mdp,greedy,tsp,random"), ',');
    if (kinds.empty()) ini.fail("policy", "kinds", "at least one policy is required");
    std::set<PolicyKind> used;
    for (const auto& k : kinds) {
        PolicyConfig p = proto;
        try {
            p.kind = parse_policy_kind(k);
        } catch (const config_error& e) {
            ini.fail("policy", "kinds", e.what());
        }
        if (!used.insert(p.kind).second) ini.fail("policy", "kinds", "policy '" + k + "' listed twice");
        spec.policies.push_back(p);
    }
    sim.policy = spec.policies.front();

    const std::string source = ini.text("dataset", "source", "synthetic");
    // Both branches read every dataset key so either kind of file may carry them.
    const std::string path = ini.text("dataset", "path", "");
    HotspotTraceParams hp;
    hp.animals = static_cast<int>(ini.integer("dataset", "animals", hp.animals));
    const int hotspot_count = static_cast<int>(ini.integer("dataset", "hotspots", 2));
    const double stddev = ini.real("dataset", "hotspot_stddev_m", 150.0);
    const std::string centers = ini.text("dataset", "hotspot_centers", "");
    hp.min_dwell_rounds = static_cast<int>(ini.integer("dataset", "min_dwell", hp.min_dwell_rounds));
    hp.switch_prob = ini.real("dataset", "switch_prob", hp.switch_prob);
    hp.sample_interval = static_cast<int>(ini.integer("dataset", "sample_interval", hp.sample_interval));
    hp.travel_speed = ini.real("dataset", "animal_speed_m", hp.travel_speed);

    if (source == "file") {
        if (path.empty()) ini.fail("dataset", "path", "required when source = file");
        std::filesystem::path p(path);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        spec.dataset.source = read_trace_csv(p.string());
    } else if (source == "synthetic") {
        hp.total_rounds = sim.total_rounds;
        hp.area_width = sim.grid.area_width;
        hp.area_height = sim.grid.area_height;
        if (!centers.empty()) {
            // "x,y | x,y | ..."
            for (const auto& item : detail::split_list(centers, '|')) {
                const auto xy = detail::split_list(item, ',');
                Hotspot h{{0, 0}, stddev};
                if (xy.size() != 2 || !detail::parse_number(xy[0], h.center.x) ||
                    !detail::parse_number(xy[1], h.center.y))
                    ini.fail("dataset", "hotspot_centers", "expected 'x,y | x,y ...', got '" + item + "'");
                hp.hotspots.push_back(h);
            }
        } else {
            if (hotspot_count < 1) ini.fail("dataset", "hotspots", "must be positive");
            hp.hotspots = default_hotspots(hotspot_count, hp.area_width, hp.area_height, stddev);
        }
        hp.validate();
        spec.dataset.source = hp;
    } else {
        ini.fail("dataset", "source", "expected 'synthetic' or 'file', got '" + source + "'");
    }

    spec.output_dir = ini.text("output", "dir", spec.output_dir.string());

    ini.reject_unknown();
    for (const auto& p : spec.policies) {
        SimConfig check = sim;
        check.policy = p;
        check.validate();
    }
    return spec;
}

inline ExperimentSpec parse_experiment_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path.string() + "'");
    return parse_experiment(in, path.string(), path.parent_path());
}

inline ExperimentSpec parse_experiment_string(const std::string& text) {
    std::istringstream in(text);
    return parse_experiment(in);
}

} // namespace uavsim
