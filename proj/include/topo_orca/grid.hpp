// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "topo_orca/vec2.hpp"

namespace topo_orca {

/// Axis-aligned rectangular obstacle; min corner strictly below max corner.
struct RectObstacle {
  Vec2 min_corner;
  Vec2 max_corner;

  double width() const { return max_corner.x - min_corner.x; }
  double height() const { return max_corner.y - min_corner.y; }
};

/// Euclidean distance from a point to the rectangle (0 inside).
double rect_distance(const RectObstacle& r, Vec2 p);
/// Euclidean gap between two rectangles (0 if they intersect).
double rect_gap(const RectObstacle& a, const RectObstacle& b);

/// Row-major boolean occupancy map. Cell (0,0) has its corner at `origin`;
/// cell centers live at origin + (ix + 0.5, iy + 0.5) * cell_size.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double cell_size,
                Vec2 origin = {0.0, 0.0});

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  Vec2 origin() const { return origin_; }
  double world_w() const { return width_ * cell_size_; }
  double world_h() const { return height_ * cell_size_; }

  bool blocked(int ix, int iy) const {
    return cells_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
  }
  bool free(int ix, int iy) const { return !blocked(ix, iy); }
  void set_blocked(int ix, int iy, bool b) {
    cells_[static_cast<std::size_t>(iy) * width_ + ix] = b ? 1 : 0;
  }

  std::uint8_t* row(int iy) {
    return cells_.data() + static_cast<std::size_t>(iy) * width_;
  }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  int cell_x(double wx) const;
  int cell_y(double wy) const;
  Vec2 cell_center(int ix, int iy) const;
  bool in_bounds(Vec2 p) const;
  bool blocked_at(Vec2 p) const;

 private:
  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 0.0;
  Vec2 origin_;
  std::vector<std::uint8_t> cells_;
};

/// Rasterizes obstacles onto a grid covering [0,world_w] x [0,world_h].
/// A cell is blocked iff its center lies within `inflation` of an obstacle
/// rectangle or within `inflation` of the world boundary (the boundary acts
/// as an obstacle ring). Throws std::invalid_argument for non-positive sizes
/// or cell_size > min(world_w, world_h).
OccupancyGrid rasterize(double world_w, double world_h, double cell_size,
                        const std::vector<RectObstacle>& obstacles,
                        double inflation);

/// Free cells / total cells.
double traversable_fraction(const OccupancyGrid& grid);

/// True iff no blocked cell is touched by segment pq. Uses a supercover
/// traversal: every cell the segment geometrically touches is checked,
/// including all four cells around a crossed lattice corner, so the test is
/// conservative. Symmetric in p and q.
bool raycast_free(const OccupancyGrid& grid, Vec2 p, Vec2 q);

/// Plain-text PGM (P2) debug dump, one cell per pixel: 0 blocked, 255 free.
void write_pgm(const OccupancyGrid& grid, std::ostream& out);

}  // namespace topo_orca
