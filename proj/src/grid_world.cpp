#include "swarmnav/grid_world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swarmnav {

namespace {

double& comp(Vec3& v, int axis) {
    switch (axis) {
        case 0: return v.x;
        case 1: return v.y;
        default: return v.z;
    }
}

int comp(const Cell& c, int axis) {
    switch (axis) {
        case 0: return c.x;
        case 1: return c.y;
        default: return c.z;
    }
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void validate_dims(const Cell& dims) {
    for (int a = 0; a < 3; ++a) {
        const int d = comp(dims, a);
        if (d < 8 || !is_power_of_two(d)) {
            throw GenerationError("map dims must be powers of two >= 8");
        }
    }
}

bool inside_fio(const GridMap& m, const Vec3& p) {
    const Cell c = cell_of(p);
    for (const auto& b : m.fio) {
        if (b.contains(c)) return true;
    }
    return false;
}

void reflect_bounds(const Cell& dims, Vec3& p, Vec3& v) {
    auto axis = [](double& pc, double& vc, double lim) {
        if (pc < 0.0) {
            pc = -pc;
            vc = -vc;
        } else if (pc > lim) {
            pc = 2.0 * lim - pc;
            vc = -vc;
        }
    };
    axis(p.x, v.x, static_cast<double>(dims.x));
    axis(p.y, v.y, static_cast<double>(dims.y));
    axis(p.z, v.z, static_cast<double>(dims.z));
}

// One tick of reflective motion: bounce off the map walls and FIO faces.
void advance_point(const GridMap& m, Vec3& pos, Vec3& vel) {
    Vec3 v = vel;
    Vec3 p = pos + v;
    reflect_bounds(m.dims, p, v);
    if (!inside_fio(m, p)) {
        pos = p;
        vel = v;
        return;
    }
    // Entered a cuboid: negate the axes whose advance crosses a face, retry.
    Vec3 v2 = vel;
    for (int a = 0; a < 3; ++a) {
        Vec3 probe = pos;
        comp(probe, a) += comp(vel, a);
        if (inside_fio(m, probe)) comp(v2, a) = -comp(v2, a);
    }
    Vec3 p2 = pos + v2;
    reflect_bounds(m.dims, p2, v2);
    if (!inside_fio(m, p2)) {
        pos = p2;
        vel = v2;
        return;
    }
    vel = vel * -1.0;  // boxed in: hold position, bounce back next tick
}

void maybe_jitter(RngStream& st, double p_jitter, double speed_cap, Vec3& vel) {
    if (st.u01() >= p_jitter) return;
    const Vec3 dir{st.normal(), st.normal(), st.normal()};
    const double n = dir.norm();
    if (n == 0.0) return;
    vel = dir / n * (speed_cap * st.uniform(0.3, 1.0));
}

Vec3 random_direction(RngStream& rng) {
    for (;;) {
        const Vec3 d{rng.normal(), rng.normal(), rng.normal()};
        const double n = d.norm();
        if (n > 1e-12) return d / n;
    }
}

void paint(const GridMap& m, std::vector<std::uint8_t>& occ, const Cuboid& b) {
    for (int z = b.lo.z; z <= b.hi.z; ++z)
        for (int y = b.lo.y; y <= b.hi.y; ++y)
            for (int x = b.lo.x; x <= b.hi.x; ++x) occ[m.cell_index({x, y, z})] = 1;
}

std::int64_t count_new_cells(const GridMap& m, const std::vector<std::uint8_t>& occ,
                             const Cuboid& b) {
    std::int64_t n = 0;
    for (int z = b.lo.z; z <= b.hi.z; ++z)
        for (int y = b.lo.y; y <= b.hi.y; ++y)
            for (int x = b.lo.x; x <= b.hi.x; ++x)
                if (!occ[m.cell_index({x, y, z})]) ++n;
    return n;
}

// Fills FRO until static coverage reaches [0.95*cap, cap] of all cells.
void fill_fro(GridMap& m, const MapConfig& cfg, RngStream& rng) {
    const std::int64_t total = m.total_cells();
    const auto budget = static_cast<std::int64_t>(cfg.density_cap * static_cast<double>(total));
    std::int64_t covered = 0;
    for (const auto v : m.static_occ) covered += v;
    if (covered > budget) {
        throw GenerationError("density cap is below the coverage of the fixed obstacles");
    }
    const auto goal = static_cast<std::int64_t>(std::ceil(0.95 * static_cast<double>(budget)));
    const Cell start_cell = cell_of(cfg.robot_start);
    const int max_extent = std::max(2, m.dims.x / 16);
    constexpr int kMaxConsecutiveRejects = 20000;
    int rejects = 0;
    while (covered < goal) {
        const Cell ext{rng.uniform_int(1, max_extent), rng.uniform_int(1, max_extent),
                       rng.uniform_int(1, max_extent)};
        const Cell lo{rng.uniform_int(0, m.dims.x - ext.x), rng.uniform_int(0, m.dims.y - ext.y),
                      rng.uniform_int(0, m.dims.z - ext.z)};
        const Cuboid b{lo, {lo.x + ext.x - 1, lo.y + ext.y - 1, lo.z + ext.z - 1}};
        const std::int64_t fresh = count_new_cells(m, m.static_occ, b);
        if (fresh == 0 || covered + fresh > budget || b.contains(start_cell)) {
            if (++rejects > kMaxConsecutiveRejects) {
                throw GenerationError("could not reach the requested obstacle density");
            }
            continue;
        }
        rejects = 0;
        paint(m, m.static_occ, b);
        m.fro.push_back(b);
        covered += fresh;
    }
}

}  // namespace

std::string to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::kStatic: return "static";
        case TargetKind::kDynamic: return "dynamic";
        case TargetKind::kTimeVarying: return "time_varying";
    }
    return "static";
}

TargetKind target_kind_from_string(const std::string& s) {
    if (s == "static") return TargetKind::kStatic;
    if (s == "dynamic") return TargetKind::kDynamic;
    if (s == "time_varying") return TargetKind::kTimeVarying;
    throw GenerationError("unknown target kind: " + s);
}

std::vector<Cuboid> MapConfig::default_fio(const Cell& dims) {
    struct Frac {
        double lo[3], hi[3];
    };
    // Six blocks spread through the volume, roughly 4-5% of it in total.
    static constexpr Frac kLayout[6] = {
        {{0.16, 0.16, 0.00}, {0.28, 0.28, 0.63}},
        {{0.63, 0.13, 0.16}, {0.81, 0.25, 0.34}},
        {{0.38, 0.47, 0.38}, {0.63, 0.59, 0.63}},
        {{0.13, 0.69, 0.13}, {0.25, 0.88, 0.31}},
        {{0.69, 0.69, 0.47}, {0.88, 0.81, 0.84}},
        {{0.44, 0.09, 0.69}, {0.56, 0.22, 0.91}},
    };
    std::vector<Cuboid> out;
    out.reserve(6);
    const int d[3] = {dims.x, dims.y, dims.z};
    for (const auto& f : kLayout) {
        Cell lo, hi;
        int* lop[3] = {&lo.x, &lo.y, &lo.z};
        int* hip[3] = {&hi.x, &hi.y, &hi.z};
        for (int a = 0; a < 3; ++a) {
            *lop[a] = static_cast<int>(f.lo[a] * d[a]);
            *hip[a] = std::min(d[a] - 1, std::max(*lop[a], static_cast<int>(f.hi[a] * d[a])));
        }
        out.push_back({lo, hi});
    }
    return out;
}

GridMap build_map(int map_id, const MapConfig& cfg, std::uint64_t seed) {
    if (map_id < 1 || map_id > 5) throw GenerationError("map_id must be in 1..5");
    if (cfg.density_cap < 0.0 || cfg.density_cap > 1.0) {
        throw GenerationError("density cap must be in [0,1]");
    }
    validate_dims(cfg.dims);

    GridMap m;
    m.dims = cfg.dims;
    m.r_dyn = cfg.r_dyn;
    m.p_jitter = cfg.p_jitter;
    m.obstacle_speed_cap = cfg.obstacle_speed_cap;
    m.env_stream = derive_stream({seed, stream_tag::kEnv});
    m.static_occ.assign(static_cast<std::size_t>(m.total_cells()), 0);

    RngStream rng(derive_stream({m.env_stream, 0 /* build phase */}));

    const bool use_fio = map_id == 2 || map_id == 3 || map_id == 5;
    const bool use_fro = map_id >= 3;
    const bool use_dyn = map_id >= 4;
    const Cell start_cell = cell_of(cfg.robot_start);

    if (use_fio) {
        m.fio = cfg.fio.empty() ? MapConfig::default_fio(m.dims) : cfg.fio;
        for (const auto& b : m.fio) {
            if (b.lo.x > b.hi.x || b.lo.y > b.hi.y || b.lo.z > b.hi.z || b.lo.x < 0 ||
                b.lo.y < 0 || b.lo.z < 0 || !m.in_bounds(b.hi)) {
                throw GenerationError("FIO cuboid overflows map dims");
            }
            if (b.contains(start_cell)) {
                throw GenerationError("FIO cuboid covers the robot start cell");
            }
            paint(m, m.static_occ, b);
        }
    }
    if (use_fro) fill_fro(m, cfg, rng);

    auto free_position = [&](double margin_from_start) -> Vec3 {
        for (int tries = 0; tries < 2000; ++tries) {
            const Vec3 p{rng.uniform(0.0, m.dims.x), rng.uniform(0.0, m.dims.y),
                         rng.uniform(0.0, m.dims.z)};
            if (is_occupied(m, cell_of(p))) continue;
            if (distance(p, cfg.robot_start) < margin_from_start) continue;
            return p;
        }
        throw GenerationError("no free cell found for entity placement");
    };

    if (use_dyn) {
        for (int i = 0; i < cfg.dynamic_obstacle_count; ++i) {
            MovingPoint ob;
            ob.speed_cap = cfg.obstacle_speed_cap;
            ob.position = free_position(2.0 + cfg.r_dyn);
            ob.velocity = random_direction(rng) * (cfg.obstacle_speed_cap * rng.uniform(0.3, 1.0));
            m.dynamic_obstacles.push_back(ob);
        }
    }

    static constexpr TargetKind kKindCycle[3] = {TargetKind::kStatic, TargetKind::kDynamic,
                                                 TargetKind::kTimeVarying};
    for (int i = 0; i < cfg.target_count; ++i) {
        Target t;
        t.kind = kKindCycle[i % 3];
        t.position = free_position(4.0);
        t.on_ticks = cfg.on_ticks;
        t.off_ticks = cfg.off_ticks;
        if (t.kind == TargetKind::kDynamic) {
            t.velocity = random_direction(rng) * (cfg.target_speed_cap * rng.uniform(0.3, 1.0));
        }
        if (t.kind == TargetKind::kTimeVarying) {
            const int period = std::max(1, cfg.on_ticks + cfg.off_ticks);
            t.phase = rng.uniform_int(0, period - 1);
        }
        m.targets.push_back(t);
    }
    return m;
}

bool is_occupied(const GridMap& map, const Cell& cell) {
    if (!map.in_bounds(cell)) return true;  // outside acts as a wall
    if (map.static_occ[map.cell_index(cell)]) return true;
    const Vec3 c = cell_center(cell);
    const double r2 = map.r_dyn * map.r_dyn;
    for (const auto& ob : map.dynamic_obstacles) {
        if ((c - ob.position).norm2() <= r2) return true;
    }
    return false;
}

GridMap step_dynamics(const GridMap& map) {
    GridMap out = map;
    out.tick = map.tick + 1;
    const auto tick = static_cast<std::uint64_t>(out.tick);
    for (std::size_t i = 0; i < out.dynamic_obstacles.size(); ++i) {
        auto& ob = out.dynamic_obstacles[i];
        advance_point(map, ob.position, ob.velocity);
        RngStream st(derive_stream({map.env_stream, stream_tag::kDynamics, tick, i, 0}));
        maybe_jitter(st, map.p_jitter, ob.speed_cap, ob.velocity);
    }
    for (std::size_t i = 0; i < out.targets.size(); ++i) {
        auto& t = out.targets[i];
        if (t.kind != TargetKind::kDynamic || t.captured) continue;
        const double cap = std::max(t.velocity.norm(), 1e-12);
        advance_point(map, t.position, t.velocity);
        RngStream st(derive_stream({map.env_stream, stream_tag::kDynamics, tick, i, 1}));
        maybe_jitter(st, map.p_jitter, cap, t.velocity);
    }
    return out;
}

namespace {

// Amanatides-Woo 3D voxel walk. Calls visit(cell, t_enter) for every cell the
// segment passes through; t_enter is the segment parameter at which the cell
// is entered (0 for the first).
template <typename Visit>
void walk_segment(const Vec3& p0, const Vec3& p1, Visit&& visit) {
    const Cell start = cell_of(p0);
    const Cell end = cell_of(p1);
    visit(start, 0.0);
    if (start == end) return;

    const Vec3 d = p1 - p0;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    int cur[3] = {start.x, start.y, start.z};
    const int fin[3] = {end.x, end.y, end.z};
    int step[3];
    double t_max[3], t_delta[3];
    const double orig[3] = {p0.x, p0.y, p0.z};
    const double dir[3] = {d.x, d.y, d.z};
    for (int a = 0; a < 3; ++a) {
        if (dir[a] > 0.0) {
            step[a] = 1;
            t_max[a] = (cur[a] + 1 - orig[a]) / dir[a];
            t_delta[a] = 1.0 / dir[a];
        } else if (dir[a] < 0.0) {
            step[a] = -1;
            t_max[a] = (cur[a] - orig[a]) / dir[a];
            t_delta[a] = -1.0 / dir[a];
        } else {
            step[a] = 0;
            t_max[a] = kInf;
            t_delta[a] = kInf;
        }
    }
    const std::int64_t guard =
        std::abs(fin[0] - cur[0]) + std::abs(fin[1] - cur[1]) + std::abs(fin[2] - cur[2]) + 6;
    for (std::int64_t i = 0; i < guard; ++i) {
        int a = 0;
        if (t_max[1] < t_max[a]) a = 1;
        if (t_max[2] < t_max[a]) a = 2;
        cur[a] += step[a];
        const double t = std::min(t_max[a], 1.0);
        t_max[a] += t_delta[a];
        visit({cur[0], cur[1], cur[2]}, t);
        if (cur[0] == fin[0] && cur[1] == fin[1] && cur[2] == fin[2]) return;
    }
    // Floating-point corner case exhausted the guard: land on the end cell so
    // the postcondition (last cell contains p1) always holds.
    visit(end, 1.0);
}

}  // namespace

std::vector<Cell> raster_segment(const Vec3& p0, const Vec3& p1) {
    std::vector<Cell> cells;
    walk_segment(p0, p1, [&](const Cell& c, double) { cells.push_back(c); });
    return cells;
}

CollisionScan first_collision(const GridMap& map, std::span<const Vec3> waypoints) {
    CollisionScan scan;
    for (std::size_t s = 0; s + 1 < waypoints.size(); ++s) {
        const Vec3& a = waypoints[s];
        const Vec3& b = waypoints[s + 1];
        bool hit = false;
        walk_segment(a, b, [&](const Cell& c, double t_enter) {
            if (hit) return;
            ++scan.cells_scanned;
            if (is_occupied(map, c)) {
                hit = true;
                // Entry point into the occupied cell is the last free point.
                scan.hit = CollisionHit{static_cast<int>(s), c, a + (b - a) * t_enter};
            }
        });
        if (hit) return scan;
    }
    return scan;
}

}  // namespace swarmnav
