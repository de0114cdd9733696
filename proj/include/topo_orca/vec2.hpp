// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace topo_orca {

/// 2D point or vector in world coordinates (meters, y-up).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive when b is to the left of a.
constexpr double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

constexpr double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }

inline Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  return n > 0.0 ? a / n : Vec2{0.0, 0.0};
}

/// Left-hand perpendicular: rotates a by +90 degrees.
constexpr Vec2 perp_left(Vec2 a) { return {-a.y, a.x}; }

inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double distance_sq(Vec2 a, Vec2 b) { return norm_sq(a - b); }

inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

}  // namespace topo_orca
