// grid_world.hpp - the 3D environment: occupancy, map generation for Maps 1-5,
// and time evolution of dynamic obstacles and targets.
//
// A GridMap is an immutable snapshot; step_dynamics produces the next one.
// Per-tick randomness is drawn from counter-based streams keyed by
// (env stream, tick, entity index), so evolution is a pure function of the
// snapshot and replays bit-for-bit.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmnav/rng.hpp"
#include "swarmnav/vec3.hpp"

namespace swarmnav {

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Cuboid {
    Cell lo;  // inclusive
    Cell hi;  // inclusive

    bool contains(const Cell& c) const {
        return c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y && c.z >= lo.z &&
               c.z <= hi.z;
    }
    std::int64_t volume() const {
        return static_cast<std::int64_t>(hi.x - lo.x + 1) * (hi.y - lo.y + 1) * (hi.z - lo.z + 1);
    }
};

struct MovingPoint {
    Vec3 position;
    Vec3 velocity;
    double speed_cap = 0.5;  // cells/tick, always below the robot speed
};

enum class TargetKind { kStatic, kDynamic, kTimeVarying };

std::string to_string(TargetKind kind);
TargetKind target_kind_from_string(const std::string& s);

struct Target {
    TargetKind kind = TargetKind::kStatic;
    Vec3 position;
    Vec3 velocity;        // zero unless kDynamic
    int on_ticks = 200;   // kTimeVarying only
    int off_ticks = 100;  // kTimeVarying only
    int phase = 0;
    bool captured = false;

    // A captured target never re-activates. Time-varying targets cycle
    // on_ticks active then off_ticks inactive, shifted by phase.
    bool active_at(std::int64_t tick) const {
        if (captured) return false;
        if (kind != TargetKind::kTimeVarying) return true;
        const int period = on_ticks + off_ticks;
        if (period <= 0) return true;
        const auto m = static_cast<int>((tick + phase) % period);
        return (m < 0 ? m + period : m) < on_ticks;
    }
};

struct MapConfig {
    Cell dims{64, 64, 64};  // components >= 8, powers of two
    // Fixed individual obstacles. Empty means: use the default layout scaled
    // to dims (only maps that include FIO materialize it).
    std::vector<Cuboid> fio;
    // Max fraction of cells covered by static obstacles (FIO plus FRO). FRO
    // generation fills the remaining budget from below.
    double density_cap = 0.08;
    int dynamic_obstacle_count = 20;
    double obstacle_speed_cap = 0.5;
    int target_count = 3;
    double target_speed_cap = 0.3;
    int on_ticks = 200;
    int off_ticks = 100;
    double r_dyn = 0.5;      // dynamic-obstacle inflation radius, cells
    double p_jitter = 0.05;  // per-tick chance an obstacle re-randomizes velocity
    Vec3 robot_start{1.5, 1.5, 1.5};

    // Six cuboids spread through the volume, sized as fractions of dims.
    static std::vector<Cuboid> default_fio(const Cell& dims);
};

struct GridMap {
    Cell dims{64, 64, 64};
    std::vector<Cuboid> fio;
    std::vector<Cuboid> fro;
    std::vector<MovingPoint> dynamic_obstacles;
    std::vector<Target> targets;
    std::int64_t tick = 0;
    double r_dyn = 0.5;
    double p_jitter = 0.05;
    double obstacle_speed_cap = 0.5;
    std::uint64_t env_stream = 0;  // keys per-tick dynamics randomness

    // Union of FIO and FRO, materialized once at build time.
    std::vector<std::uint8_t> static_occ;

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < dims.x && c.y < dims.y && c.z < dims.z;
    }
    std::size_t cell_index(const Cell& c) const {
        return (static_cast<std::size_t>(c.z) * dims.y + c.y) * dims.x + c.x;
    }
    bool static_occupied(const Cell& c) const {
        return !in_bounds(c) || static_occ[cell_index(c)] != 0;
    }
    std::int64_t total_cells() const {
        return static_cast<std::int64_t>(dims.x) * dims.y * dims.z;
    }
};

// Builds Maps 1-5: 1 empty, 2 FIO, 3 FIO+FRO, 4 FRO+dynamic, 5 FIO+FRO+dynamic.
// Deterministic for a fixed (map_id, cfg, seed).
GridMap build_map(int map_id, const MapConfig& cfg, std::uint64_t seed);

// True iff the cell is inside a static cuboid or within r_dyn of a dynamic
// obstacle at the map's current tick. Out-of-bounds cells act as walls.
bool is_occupied(const GridMap& map, const Cell& cell);

// Advances the world one tick: moving points reflect off map boundaries and
// FIO faces, velocities occasionally re-randomize, dynamic targets drift the
// same way. Returns a new snapshot.
GridMap step_dynamics(const GridMap& map);

// Every cell a segment passes through, in traversal order (Amanatides-Woo
// walk). First cell contains p0, last contains p1.
std::vector<Cell> raster_segment(const Vec3& p0, const Vec3& p1);

struct CollisionHit {
    int segment_index = 0;
    Cell cell;
    Vec3 truncation_point;  // last free point on the polyline before the hit
};

struct CollisionScan {
    std::optional<CollisionHit> hit;
    std::int64_t cells_scanned = 0;  // feeds the expanded-nodes metric
};

// Rasterizes consecutive segments in order and reports the first occupied
// cell, if any.
CollisionScan first_collision(const GridMap& map, std::span<const Vec3> waypoints);

}  // namespace swarmnav
