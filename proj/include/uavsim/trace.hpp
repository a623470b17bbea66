#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uavsim/error.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/voi.hpp"

namespace uavsim {

// One GPS fix. Rounds are simulation minutes.
struct TraceSample {
    std::string animal_id;
    int round = 0;
    GeoPoint pos;

    bool operator==(const TraceSample&) const = default;
};

struct AnimalEvent {
    std::size_t id = 0;
    std::string animal_id;
    Cell cell;
    int created_round = 0;
    double initial_reward = 0.0;
    std::optional<int> collected_round;
};

// Samples of each animal, animals in order of first appearance.
struct AnimalTrace {
    std::string animal_id;
    std::vector<TraceSample> samples;
};

inline std::vector<AnimalTrace> group_by_animal(std::span<const TraceSample> samples) {
    std::vector<AnimalTrace> out;
    std::unordered_map<std::string, std::size_t> slot;
    for (const auto& s : samples) {
        auto [it, inserted] = slot.try_emplace(s.animal_id, out.size());
        if (inserted) out.push_back({s.animal_id, {}});
        out[it->second].samples.push_back(s);
    }
    for (const auto& a : out) {
        for (std::size_t i = 1; i < a.samples.size(); ++i) {
            if (a.samples[i].round <= a.samples[i - 1].round) {
                throw data_error("trace for animal '" + a.animal_id + "' is not strictly increasing in round at round " +
                                 std::to_string(a.samples[i].round));
            }
        }
    }
    return out;
}

// Rejects the trace set if any sample lies outside the area; reports the count and the first offender.
inline void check_in_bounds(std::span<const TraceSample> samples, const GridSpec& grid) {
    std::size_t bad = 0;
    const TraceSample* first = nullptr;
    for (const auto& s : samples) {
        if (!grid.contains(s.pos)) {
            if (!first) first = &s;
            ++bad;
        }
    }
    if (bad > 0) {
        throw data_error(std::to_string(bad) + " trace sample(s) outside the area; first: animal '" +
                         first->animal_id + "' round " + std::to_string(first->round) + " at (" +
                         std::to_string(first->pos.x) + ", " + std::to_string(first->pos.y) + ")");
    }
}

// Sensed events: one at each animal's first sample, one whenever consecutive
// samples fall in different cells (stamped with the later round), and one every
// `dwell_period` rounds while the animal stays in the same cell. Result is
// ordered by creation round, ties by animal order of appearance.
inline std::vector<AnimalEvent> generate_events(std::span<const TraceSample> samples, const GridSpec& grid,
                                                int dwell_period, const InitialRewardParams& ir) {
    if (dwell_period < 1) throw config_error("dwell_period must be at least 1 round");
    const double reward = initial_reward(ir);

    struct Tagged {
        AnimalEvent event;
        std::size_t animal_rank;
    };
    std::vector<Tagged> tagged;
    const auto animals = group_by_animal(samples);
    for (std::size_t a = 0; a < animals.size(); ++a) {
        const auto& trace = animals[a].samples;
        std::optional<Cell> current;
        int last_event_round = 0;
        for (const auto& s : trace) {
            const Cell c = cell_of(s.pos, grid);
            bool emit = false;
            if (!current || c != *current) {
                emit = true;
            } else if (s.round - last_event_round >= dwell_period) {
                emit = true;
            }
            current = c;
            if (emit) {
                tagged.push_back({AnimalEvent{0, s.animal_id, c, s.round, reward, std::nullopt}, a});
                last_event_round = s.round;
            }
        }
    }
    std::stable_sort(tagged.begin(), tagged.end(), [](const Tagged& l, const Tagged& r) {
        if (l.event.created_round != r.event.created_round) return l.event.created_round < r.event.created_round;
        return l.animal_rank < r.animal_rank;
    });
    std::vector<AnimalEvent> events;
    events.reserve(tagged.size());
    for (auto& t : tagged) {
        t.event.id = events.size();
        events.push_back(std::move(t.event));
    }
    return events;
}

// ---------------------------------------------------------------------------
// Trace CSV: header `animal_id,round,x_m,y_m`, one record per line.

inline constexpr std::string_view trace_csv_header = "animal_id,round,x_m,y_m";

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last && first != last;
}

// Shortest round-trip decimal representation.
inline std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string format_fixed(double v, int precision) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, ptr);
}

} // namespace detail

inline std::vector<TraceSample> read_trace_csv(std::istream& in, const std::string& origin = "<trace>") {
    std::vector<TraceSample> samples;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw data_error(origin + ":" + std::to_string(line_no) + ": " + what + ": '" + line + "'");
    };
    if (!std::getline(in, line)) throw data_error(origin + ": empty trace file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (line != trace_csv_header) fail("expected header '" + std::string(trace_csv_header) + "'");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 4) fail("expected 4 fields");
        TraceSample s;
        s.animal_id = std::string(fields[0]);
        if (s.animal_id.empty()) fail("empty animal_id");
        if (!detail::parse_number(fields[1], s.round) || s.round < 0) fail("round must be a nonnegative integer");
        if (!detail::parse_number(fields[2], s.pos.x) || !std::isfinite(s.pos.x)) fail("x_m is not a number");
        if (!detail::parse_number(fields[3], s.pos.y) || !std::isfinite(s.pos.y)) fail("y_m is not a number");
        samples.push_back(std::move(s));
    }
    return samples;
}

inline std::vector<TraceSample> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open trace file '" + path + "'");
    return read_trace_csv(in, path);
}

inline void write_trace_csv(std::ostream& out, std::span<const TraceSample> samples) {
    out << trace_csv_header << '\n';
    for (const auto& s : samples) {
        out << s.animal_id << ',' << s.round << ',' << detail::format_fixed(s.pos.x, 3) << ','
            << detail::format_fixed(s.pos.y, 3) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Synthetic hotspot mobility.

struct Hotspot {
    GeoPoint center;
    double stddev = 150.0; // RMS distance of fixes from the center, meters
};

struct HotspotTraceParams {
    std::uint64_t seed = 1;
    int animals = 5;
    std::vector<Hotspot> hotspots;
    int min_dwell_rounds = 240;   // residence before a switch may happen
    double switch_prob = 0.01;    // per sample, once min_dwell_rounds has elapsed
    int total_rounds = 4000;
    int sample_interval = 10;
    double area_width = 10000.0;
    double area_height = 10000.0;
    double travel_speed = 1000.0 / 30.0; // meters per round while relocating

    void validate() const {
        if (hotspots.empty()) throw config_error("dataset: at least one hotspot is required");
        if (animals < 1) throw config_error("dataset: animals must be positive");
        if (total_rounds < 0) throw config_error("dataset: total_rounds must be nonnegative");
        if (sample_interval < 1) throw config_error("dataset: sample_interval must be positive");
        if (min_dwell_rounds < 0) throw config_error("dataset: min_dwell must be nonnegative");
        if (!(switch_prob >= 0.0 && switch_prob <= 1.0)) throw config_error("dataset: switch_prob must be in [0, 1]");
        if (!(travel_speed > 0.0)) throw config_error("dataset: travel speed must be positive");
        if (!(area_width > 0.0 && area_height > 0.0)) throw config_error("dataset: area extent must be positive");
        for (const auto& h : hotspots) {
            if (!(h.stddev >= 0.0)) throw config_error("dataset: hotspot stddev must be nonnegative");
            if (h.center.x < 0 || h.center.x > area_width || h.center.y < 0 || h.center.y > area_height)
                throw config_error("dataset: hotspot center outside the area");
        }
    }
};

// Evenly spread hotspot centers: `count` points on a circle around the area
// center, radius 30% of the shorter side.
inline std::vector<Hotspot> default_hotspots(int count, double area_width, double area_height, double stddev = 150.0) {
    if (count < 1) throw config_error("hotspot count must be positive");
    std::vector<Hotspot> out;
    const double cx = area_width / 2, cy = area_height / 2;
    const double radius = count == 1 ? 0.0 : 0.3 * std::min(area_width, area_height);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < count; ++k) {
        const double angle = pi / 4 + 2 * pi * k / count;
        out.push_back({{cx + radius * std::cos(angle), cy + radius * std::sin(angle)}, stddev});
    }
    return out;
}

// Animal k starts at hotspot k mod H and emits a Gaussian fix around its
// hotspot every sample_interval rounds. After min_dwell_rounds at a hotspot it
// switches, with probability switch_prob per sample, to a uniformly chosen
// other hotspot, moving there in a straight line at travel_speed.
inline std::vector<TraceSample> synthesize_hotspot_traces(const HotspotTraceParams& p) {
    p.validate();
    std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32), 0x7ace5u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    auto clamp_to_area = [&](GeoPoint q) {
        return GeoPoint{std::clamp(q.x, 0.0, p.area_width), std::clamp(q.y, 0.0, p.area_height)};
    };
    // Per-axis sigma is stddev / sqrt(2) so the radial RMS equals stddev.
    auto jitter = [&](const Hotspot& h) {
        const double sigma = h.stddev / std::sqrt(2.0);
        const double dx = normal(rng), dy = normal(rng);
        return clamp_to_area({h.center.x + sigma * dx, h.center.y + sigma * dy});
    };

    const int n_hot = static_cast<int>(p.hotspots.size());
    const int n_samples = p.total_rounds / p.sample_interval + 1;
    std::vector<TraceSample> out;
    out.reserve(static_cast<std::size_t>(p.animals) * static_cast<std::size_t>(n_samples));

    for (int a = 0; a < p.animals; ++a) {
        const std::string id = "animal_" + std::to_string(a);
        int home = a % n_hot;
        int arrived_round = 0;
        bool moving = false;
        GeoPoint destination{};
        GeoPoint pos = jitter(p.hotspots[home]);
        for (int k = 0; k < n_samples; ++k) {
            const int round = k * p.sample_interval;
            if (k > 0) {
                if (moving) {
                    const double step = p.travel_speed * p.sample_interval;
                    const double left = distance(pos, destination);
                    if (left <= step) {
                        pos = destination;
                        moving = false;
                        arrived_round = round;
                    } else {
                        pos = {pos.x + (destination.x - pos.x) * step / left,
                               pos.y + (destination.y - pos.y) * step / left};
                    }
                } else {
                    pos = jitter(p.hotspots[home]);
                }
            }
            out.push_back({id, round, pos});

            if (!moving && n_hot > 1 && round - arrived_round >= p.min_dwell_rounds &&
                unit(rng) < p.switch_prob) {
                std::uniform_int_distribution<int> pick(0, n_hot - 2);
                int next = pick(rng);
                if (next >= home) ++next;
                home = next;
                destination = jitter(p.hotspots[home]);
                moving = true;
            }
        }
    }
    return out;
}

} // namespace uavsim
