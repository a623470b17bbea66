#pragma once

#include <cmath>
#include <iostream>
#include <string>

#include "uavsim/error.hpp"

namespace uavsim {

// Exponential value-of-information curve A * exp(-B t), t in rounds.
struct VoiParams {
    double initial_value = 10.0; // A
    double decay_rate = 0.02;    // B, per round

    void validate() const {
        if (!(initial_value > 0.0)) throw config_error("voi: A must be positive");
        if (!(decay_rate >= 0.0)) throw config_error("voi: B must be nonnegative");
    }
};

// Factors that make up an event's initial reward. Defaults give IR = 10.
struct InitialRewardParams {
    double animal_weight = 10.0;  // sigma
    double quality_factor = 1.0;  // lambda
    double type_weight = 1.0;     // W
    double distance_scale = 1.0;  // alpha
    double estimated_area = 1.0;  // A_est, square meters
    double duration = 1.0;        // T, rounds
    double max_duration = 1.0;    // T_max, rounds

    void validate() const {
        if (!(animal_weight >= 0.0)) throw config_error("reward: sigma must be nonnegative");
        const double c = quality_factor * type_weight;
        if (!(c >= 0.0 && c <= 1.0)) throw config_error("reward: lambda * W must lie in [0, 1]");
        if (!(estimated_area > 0.0)) throw config_error("reward: A_est must be positive");
        if (!(duration > 0.0) || !(max_duration > 0.0)) throw config_error("reward: T and T_max must be positive");
    }
};

inline double credibility(double quality_factor, double type_weight) {
    const double c = quality_factor * type_weight;
    if (!(c >= 0.0 && c <= 1.0))
        throw std::domain_error("credibility " + std::to_string(c) + " outside [0, 1]");
    return c;
}

inline double distance_factor(double distance_scale, double estimated_area) {
    if (!(estimated_area > 0.0))
        throw std::domain_error("estimated localization area must be positive");
    return distance_scale / estimated_area;
}

// T / T_max. Durations beyond the cap saturate at 1 with a warning on std::clog.
inline double duration_factor(double duration, double max_duration) {
    if (!(duration > 0.0)) throw std::domain_error("event duration must be positive");
    if (!(max_duration > 0.0)) throw std::domain_error("duration cap must be positive");
    if (duration > max_duration) {
        std::clog << "warning: event duration " << duration << " exceeds cap " << max_duration
                  << "; duration factor clamped to 1\n";
        return 1.0;
    }
    return duration / max_duration;
}

inline double initial_reward(const InitialRewardParams& p) {
    if (!(p.animal_weight >= 0.0)) throw std::domain_error("animal weight must be nonnegative");
    return p.animal_weight * credibility(p.quality_factor, p.type_weight) *
           distance_factor(p.distance_scale, p.estimated_area) * duration_factor(p.duration, p.max_duration);
}

// Value of an event with initial reward `ir` collected `t` rounds after creation.
inline double voi_at(double ir, double decay_rate, double t) {
    if (!(t >= 0.0)) throw std::domain_error("voi_at: negative elapsed time");
    return ir * std::exp(-decay_rate * t);
}

inline double voi_at(const VoiParams& p, double t) {
    return voi_at(p.initial_value, p.decay_rate, t);
}

} // namespace uavsim
