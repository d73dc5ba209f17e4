// cost_model.hpp - composite path cost: length + sharp turns + unreached residual.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "swarmnav/vec3.hpp"

namespace swarmnav {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTurnThreshold = kPi / 6.0;
inline constexpr double kDefaultCaptureRadius = 1.0;

struct CostWeights {
    double k1 = 1.0;     // per cell of path length
    double k2 = 50.0;    // per sharp turn
    double k3 = 1000.0;  // per cell of residual distance to the target
};

struct CostComponents {
    double c_length = 0.0;
    int c_turns = 0;
    double c_left = 0.0;
};

struct CostBreakdown {
    double c_length = 0.0;
    int c_turns = 0;
    double c_left = 0.0;
    double total = 0.0;
};

// Sum of Euclidean segment lengths; 0 for a single point.
inline double path_length(std::span<const Vec3> waypoints) {
    double len = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        len += distance(waypoints[i - 1], waypoints[i]);
    }
    return len;
}

// Number of interior vertices whose direction change exceeds the threshold.
// Zero-length segments carry no direction and are skipped.
inline int count_turns(std::span<const Vec3> waypoints,
                       double angle_threshold = kDefaultTurnThreshold) {
    int turns = 0;
    bool have_in = false;
    Vec3 dir_in{};
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const Vec3 seg = waypoints[i] - waypoints[i - 1];
        const double n = seg.norm();
        if (n == 0.0) continue;
        const Vec3 dir_out = seg / n;
        if (have_in) {
            const double c = std::clamp(dir_in.dot(dir_out), -1.0, 1.0);
            if (std::acos(c) > angle_threshold) ++turns;
        }
        dir_in = dir_out;
        have_in = true;
    }
    return turns;
}

// Distance from where the path was cut to the target; 0 once inside the
// capture radius.
inline double residual(const Vec3& truncation_point, const Vec3& target,
                       double capture_radius = kDefaultCaptureRadius) {
    const double d = distance(truncation_point, target);
    return d <= capture_radius ? 0.0 : d;
}

inline CostBreakdown total_cost(const CostComponents& c, const CostWeights& w) {
    CostBreakdown b;
    b.c_length = c.c_length;
    b.c_turns = c.c_turns;
    b.c_left = c.c_left;
    b.total = w.k1 * c.c_length + w.k2 * c.c_turns + w.k3 * c.c_left;
    return b;
}

}  // namespace swarmnav
