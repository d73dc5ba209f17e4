// vec3.hpp - small value types for grid geometry: continuous points and cells.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>

namespace swarmnav {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

struct Cell {
    int x = 0, y = 0, z = 0;
    constexpr bool operator==(const Cell& o) const { return x == o.x && y == o.y && z == o.z; }
    constexpr bool operator!=(const Cell& o) const { return !(*this == o); }
};

// Cell containing a continuous point; cells are the half-open boxes [c, c+1)^3.
inline Cell cell_of(const Vec3& p) {
    return {static_cast<int>(std::floor(p.x)),
            static_cast<int>(std::floor(p.y)),
            static_cast<int>(std::floor(p.z))};
}

inline Vec3 cell_center(const Cell& c) {
    return {c.x + 0.5, c.y + 0.5, c.z + 0.5};
}

inline int chebyshev(const Cell& a, const Cell& b) {
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    const int dz = std::abs(a.z - b.z);
    return dx > dy ? (dx > dz ? dx : dz) : (dy > dz ? dy : dz);
}

struct CellHash {
    std::size_t operator()(const Cell& c) const {
        // 3 x 21-bit pack is plenty for any grid this project builds.
        const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x));
        const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.y));
        const auto uz = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.z));
        return std::hash<std::uint64_t>{}((ux & 0x1FFFFF) | ((uy & 0x1FFFFF) << 21) | ((uz & 0x1FFFFF) << 42));
    }
};

}  // namespace swarmnav
