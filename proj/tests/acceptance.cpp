// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "uavsim/uavsim.hpp"

using namespace uavsim;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, double budget_s, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.verdict != Verdict::skip && secs > budget_s) {
        o.verdict = Verdict::fail;
        o.detail += " (over the " + std::to_string(budget_s) + " s budget)";
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
    if (o.verdict == Verdict::fail) ++failures;
    std::printf("%s  %-22s %8.2fs  %s\n", tag, name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << v;
    return s.str();
}

Verdict verdict(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

double uniform_chi_square(const std::vector<long>& counts, double& critical) {
    long total = 0;
    for (long c : counts) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0;
    for (long c : counts) stat += (c - expected) * (c - expected) / expected;
    critical = boost::math::quantile(
        boost::math::complement(boost::math::chi_squared(static_cast<double>(counts.size() - 1)), 0.01));
    return stat;
}

Outcome voi_math() {
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double ir = 0.01 + 999.99 * u(rng), b = 0.1 * u(rng), t = 4000 * u(rng);
        const big want = big(ir) * boost::multiprecision::exp(-big(b) * big(t));
        const double got = voi_at(ir, b, t);
        if (want != 0) worst = std::max(worst, std::abs(((big(got) - want) / want).convert_to<double>()));

        InitialRewardParams p;
        p.animal_weight = 100 * u(rng);
        p.quality_factor = u(rng);
        p.type_weight = u(rng);
        p.distance_scale = 10 * u(rng);
        p.estimated_area = 0.1 + 1e6 * u(rng);
        p.max_duration = 1 + 1000 * u(rng);
        p.duration = p.max_duration * (0.001 + 0.999 * u(rng));
        const big want_ir = big(p.animal_weight) * big(p.quality_factor) * big(p.type_weight) * big(p.distance_scale) /
                            big(p.estimated_area) * big(p.duration) / big(p.max_duration);
        const double got_ir = initial_reward(p);
        if (want_ir != 0)
            worst = std::max(worst, std::abs(((big(got_ir) - want_ir) / want_ir).convert_to<double>()));
    }
    const double at20 = voi_at(VoiParams{10.0, 0.02}, 20);
    const bool ok = worst <= 1e-9 && std::abs(at20 - 6.7032) <= 1e-4;
    char err[32];
    std::snprintf(err, sizeof err, "%.2e", worst);
    return {verdict(ok), std::string("max rel err ") + err + ", VoI(20) = " + fmt(at20, 6)};
}

Outcome tsp_oracle() {
    int grids = 0;
    for (int rows = 1; rows <= 9; ++rows) {
        for (int cols = 1; rows * cols <= 9; ++cols) {
            const GridSpec g{2500.0 * cols, 2500.0 * rows, rows, cols};
            std::vector<Cell> cells;
            for (std::size_t i = 0; i < g.size(); ++i) cells.push_back(g.cell_at(i));
            double best = std::numeric_limits<double>::infinity();
            do {
                best = std::min(best, tour_length(g, cells));
            } while (std::next_permutation(cells.begin() + 1, cells.end()));
            const double got = tour_length(g, tsp_tour(g));
            if (got != best) return {Verdict::fail, std::to_string(rows) + "x" + std::to_string(cols) + ": " + fmt(got) + " vs " + fmt(best)};
            ++grids;
        }
    }
    const GridSpec two{5000, 5000, 2, 2};
    const double l = tour_length(two, tsp_tour(two));
    return {verdict(l == 10000.0), std::to_string(grids) + " grids exact, 2x2 = " + fmt(l, 1) + " m"};
}

Outcome q_learning() {
    const GridSpec line{7500, 2500, 1, 3};
    QTable q(line);
    const Cell a{0, 0}, b{0, 1}, c{0, 2};
    q_update(q, a, Action::east, 10, b, 0.9);
    q_update(q, b, Action::east, -1, c, 0.9);
    q_update(q, c, Action::west, 10, b, 0.9);
    q_update(q, b, Action::west, -1, a, 0.9);
    q_update(q, a, Action::east, -1, b, 0.9);
    const bool script_ok = q.at(a, Action::east) == -1 + 0.9 * (-1 + 0.9 * 10.0) && q.at(b, Action::east) == -1.0 &&
                           q.at(c, Action::west) == 10.0 && q.at(b, Action::west) == -1 + 0.9 * 10.0;

    const GridSpec g{10000, 10000, 4, 4};
    QTable skewed(g);
    skewed.set({1, 1}, Action::north, 5.0);
    const QTable flat(g);
    std::mt19937_64 rng(2718);
    std::vector<long> explore(action_count, 0), ties(action_count, 0);
    for (int i = 0; i < 100000; ++i) {
        ++explore[static_cast<std::size_t>(mdp_next_action(skewed, {1, 1}, 1.0, rng))];
        ++ties[static_cast<std::size_t>(mdp_next_action(flat, {1, 1}, 0.0, rng))];
    }
    double crit = 0;
    const double x1 = uniform_chi_square(explore, crit);
    const double x2 = uniform_chi_square(ties, crit);
    const bool ok = script_ok && x1 < crit && x2 < crit;
    return {verdict(ok), std::string("episode ") + (script_ok ? "exact" : "MISMATCH") + ", chi2 eps=1 " + fmt(x1, 2) +
                             ", eps=0 ties " + fmt(x2, 2) + " (crit " + fmt(crit, 2) + ")"};
}

// 10 km area, 4x4 grid, epsilon 0.2, 5 animals around 2 hotspots, 4000 rounds, 10 seeds.
SimConfig preset_config() {
    SimConfig cfg;
    cfg.grid = {10000, 10000, 4, 4};
    cfg.policy.epsilon = 0.2;
    cfg.total_rounds = 4000;
    cfg.n_runs = 10;
    cfg.base_seed = 1;
    return cfg;
}

Dataset preset_dataset(const SimConfig& cfg) {
    HotspotTraceParams p;
    p.animals = 5;
    p.hotspots = default_hotspots(2, cfg.grid.area_width, cfg.grid.area_height, 150);
    p.total_rounds = cfg.total_rounds;
    p.area_width = cfg.grid.area_width;
    p.area_height = cfg.grid.area_height;
    return Dataset{p};
}

struct Comparison {
    PolicySummary mdp, greedy, tsp, random;
};

Comparison compare(const SimConfig& base, const Dataset& data) {
    auto one = [&](PolicyKind k) {
        SimConfig cfg = base;
        cfg.policy.kind = k;
        return summarize(k, run_many(cfg, data, 1));
    };
    return {one(PolicyKind::mdp), one(PolicyKind::greedy), one(PolicyKind::tsp), one(PolicyKind::random)};
}

Outcome invariants() {
    std::mt19937_64 rng(4242);
    const PolicyKind kinds[] = {PolicyKind::mdp, PolicyKind::greedy, PolicyKind::tsp, PolicyKind::random};
    for (int trial = 0; trial < 120; ++trial) {
        std::uniform_int_distribution<int> side(1, 5), rounds(1, 500), dwell(1, 90), animals(1, 6), hot(1, 3);
        std::uniform_real_distribution<double> extent(500, 20000), speed(100, 3000), unit(0, 1);
        SimConfig cfg;
        cfg.grid = {extent(rng), extent(rng), side(rng), side(rng)};
        cfg.policy.kind = kinds[trial % 4];
        cfg.policy.epsilon = unit(rng);
        cfg.voi.decay_rate = 0.1 * unit(rng);
        cfg.uav_speed = speed(rng);
        cfg.dwell_period = dwell(rng);
        cfg.total_rounds = rounds(rng);
        cfg.start_cell = cfg.grid.cell_at(rng() % cfg.grid.size());
        HotspotTraceParams p;
        p.animals = animals(rng);
        p.hotspots = default_hotspots(hot(rng), cfg.grid.area_width, cfg.grid.area_height, 300);
        p.total_rounds = cfg.total_rounds;
        p.area_width = cfg.grid.area_width;
        p.area_height = cfg.grid.area_height;
        p.min_dwell_rounds = 0;
        p.switch_prob = 0.05;
        const Dataset data{p};
        const std::uint64_t seed = rng();
        const auto where = "trial " + std::to_string(trial) + ": ";

        const auto r = run(cfg, data, seed);
        double ir_total = 0;
        std::size_t collected = 0;
        for (std::size_t i = 0; i < r.events.size(); ++i) {
            const auto& e = r.events[i];
            ir_total += e.initial_reward;
            if (!e.collected_round) continue;
            ++collected;
            if (*e.collected_round < e.created_round) return {Verdict::fail, where + "collected before creation"};
        }
        if (collected != r.delays.size()) return {Verdict::fail, where + "collection count mismatch"};
        std::vector<int> want, got = r.delays;
        for (const auto& e : r.events)
            if (e.collected_round) want.push_back(*e.collected_round - e.created_round);
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got) return {Verdict::fail, where + "delay identity broken"};
        if (r.final_voi() > ir_total * (1 + 1e-12)) return {Verdict::fail, where + "collected more VoI than created"};
        for (std::size_t t = 1; t < r.voi_timeline.size(); ++t)
            if (r.voi_timeline[t] < r.voi_timeline[t - 1]) return {Verdict::fail, where + "timeline decreases"};

        auto serialize = [](const RunResult& x) {
            std::ostringstream s;
            write_voi_timeline(s, x);
            write_event_log(s, x);
            write_encounters(s, x);
            if (x.final_q) write_qtable(s, *x.final_q);
            return s.str();
        };
        if (serialize(r) != serialize(run(cfg, data, seed))) return {Verdict::fail, where + "output not byte-identical"};
    }
    return {Verdict::pass, "120 random configurations"};
}

Outcome real_data() {
    const char* path = std::getenv("UAVSIM_REAL_TRACES_CSV");
    if (!path || !*path) return {Verdict::skip, "set UAVSIM_REAL_TRACES_CSV to a converted trace file"};
    const auto samples = read_trace_csv(std::string(path));
    double max_x = 0, max_y = 0;
    int last = 0;
    for (const auto& s : samples) {
        max_x = std::max(max_x, s.pos.x);
        max_y = std::max(max_y, s.pos.y);
        last = std::max(last, s.round);
    }
    SimConfig cfg = preset_config();
    cfg.grid.area_width = std::max(cfg.grid.area_width, max_x);
    cfg.grid.area_height = std::max(cfg.grid.area_height, max_y);
    cfg.total_rounds = last;
    const auto c = compare(cfg, Dataset{samples});
    const double m = c.mdp.final_voi.mean, t = c.tsp.final_voi.mean, g = c.greedy.final_voi.mean,
                 r = c.random.final_voi.mean;
    return {verdict(m > t && t > g && g > r),
            "mdp " + fmt(m, 1) + ", tsp " + fmt(t, 1) + ", greedy " + fmt(g, 1) + ", random " + fmt(r, 1)};
}

} // namespace

int main() {
    report("voi-math", 1.0, voi_math);
    report("tsp-oracle", 10.0, tsp_oracle);
    report("q-update", 5.0, q_learning);

    const SimConfig cfg = preset_config();
    const Dataset data = preset_dataset(cfg);
    Comparison c{};
    report("voi-ordering", 60.0, [&] {
        c = compare(cfg, data);
        const double m = c.mdp.final_voi.mean, g = c.greedy.final_voi.mean, t = c.tsp.final_voi.mean,
                     r = c.random.final_voi.mean;
        return Outcome{verdict(m > t && t > r && m / g >= 1.3),
                       "mdp " + fmt(m, 1) + " > tsp " + fmt(t, 1) + " > random " + fmt(r, 1) + "; mdp/greedy " +
                           fmt(m / g, 3) + " (need >= 1.3)"};
    });
    report("delay-distribution", 60.0, [&] {
        if (!c.mdp.delays || !c.tsp.delays) return Outcome{Verdict::fail, "no collected events"};
        const auto& m = *c.mdp.delays;
        const auto& t = *c.tsp.delays;
        return Outcome{verdict(m.median < t.median && m.q3 < t.q3),
                       "median " + fmt(m.median, 1) + " vs " + fmt(t.median, 1) + ", q3 " + fmt(m.q3, 1) + " vs " +
                           fmt(t.q3, 1)};
    });
    report("encounters", 60.0, [&] {
        const auto& m = c.mdp.encounters;
        return Outcome{verdict(m.mean > c.random.encounters.mean && m.stddev <= c.greedy.encounters.stddev),
                       "mean mdp " + fmt(m.mean, 1) + " vs random " + fmt(c.random.encounters.mean, 1) +
                           "; std mdp " + fmt(m.stddev, 2) + " vs greedy " + fmt(c.greedy.encounters.stddev, 2)};
    });
    report("epsilon-sweep", 300.0, [&] {
        const std::vector<double> eps{0.0, 0.2, 1.0};
        const auto rows = sweep(cfg, data, SweepAxis::epsilon, eps);
        const double v0 = rows[0].mean_final_voi, v2 = rows[1].mean_final_voi, v10 = rows[2].mean_final_voi;
        return Outcome{verdict(v2 > v10 && v2 > v0),
                       "eps 0.2 " + fmt(v2, 1) + " vs eps 1.0 " + fmt(v10, 1) + " and eps 0 " + fmt(v0, 1)};
    });
    report("engine-invariants", 120.0, invariants);
    report("real-data-ordering", 600.0, real_data);

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
