#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "uavsim/engine.hpp"
#include "uavsim/error.hpp"
#include "uavsim/metrics.hpp"
#include "uavsim/trace.hpp"

namespace uavsim {

using detail::format_number;

inline void write_voi_timeline(std::ostream& out, const RunResult& r) {
    out << "round,cumulative_voi\n";
    for (std::size_t t = 0; t < r.voi_timeline.size(); ++t) out << t << ',' << format_number(r.voi_timeline[t]) << '\n';
}

// Uncollected events leave collected_round and delay empty.
inline void write_event_log(std::ostream& out, const RunResult& r) {
    out << "event_id,animal_id,cell_row,cell_col,created_round,collected_round,delay,voi_collected\n";
    for (std::size_t i = 0; i < r.events.size(); ++i) {
        const auto& e = r.events[i];
        out << e.id << ',' << e.animal_id << ',' << e.cell.row << ',' << e.cell.col << ',' << e.created_round << ',';
        if (e.collected_round) out << *e.collected_round << ',' << (*e.collected_round - e.created_round);
        else out << ',';
        out << ',' << format_number(r.event_voi[i]) << '\n';
    }
}

inline void write_encounters(std::ostream& out, const RunResult& r) {
    out << "animal_id,open_round,close_round\n";
    for (const auto& ep : r.episodes) {
        out << r.animal_ids.at(ep.animal) << ',' << ep.open_round << ',' << ep.close_round << '\n';
    }
}

inline void write_qtable(std::ostream& out, const QTable& q, std::optional<int> round = std::nullopt) {
    q.for_each([&](Cell c, Action a, double v) {
        if (round) out << *round << ',';
        out << c.row << ',' << c.col << ',' << action_name(a) << ',' << format_number(v) << '\n';
    });
}

inline void write_summary(std::ostream& out, std::span<const PolicySummary> rows) {
    out << "policy,mean_final_voi,stddev,mean_delay,median_delay,q1,q3,encounters_mean,encounters_std\n";
    for (const auto& s : rows) {
        out << policy_name(s.policy) << ',' << format_number(s.final_voi.mean) << ','
            << format_number(s.final_voi.stddev) << ',';
        if (s.delays) {
            out << format_number(s.delays->mean) << ',' << format_number(s.delays->median) << ','
                << format_number(s.delays->q1) << ',' << format_number(s.delays->q3) << ',';
        } else {
            out << ",,,,";
        }
        out << format_number(s.encounters.mean) << ',' << format_number(s.encounters.stddev) << '\n';
    }
}

inline void write_voi_curves(std::ostream& out, std::span<const PolicyKind> policies,
                             std::span<const std::vector<double>> curves) {
    if (policies.size() != curves.size()) throw contract_violation("write_voi_curves: one curve per policy");
    out << "round";
    for (auto p : policies) out << ',' << policy_name(p);
    out << '\n';
    const std::size_t len = curves.empty() ? 0 : curves.front().size();
    for (std::size_t t = 0; t < len; ++t) {
        out << t;
        for (const auto& c : curves) out << ',' << format_number(c.at(t));
        out << '\n';
    }
}

inline void write_sweep(std::ostream& out, std::span<const SweepRow> rows) {
    out << "axis_value,mean_final_voi,stddev\n";
    for (const auto& r : rows) {
        out << format_number(r.value) << ',' << format_number(r.mean_final_voi) << ','
            << format_number(r.stddev_final_voi) << '\n';
    }
}

// Opens `path` for writing, creating parent directories.
inline std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw config_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write '" + path.string() + "'");
    return out;
}

} // namespace uavsim
