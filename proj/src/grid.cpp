// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "topo_orca/kernels.hpp"

namespace topo_orca {

double rect_distance(const RectObstacle& r, Vec2 p) {
  const double dx =
      std::max({r.min_corner.x - p.x, p.x - r.max_corner.x, 0.0});
  const double dy =
      std::max({r.min_corner.y - p.y, p.y - r.max_corner.y, 0.0});
  return std::sqrt(dx * dx + dy * dy);
}

double rect_gap(const RectObstacle& a, const RectObstacle& b) {
  const double dx = std::max(
      {a.min_corner.x - b.max_corner.x, b.min_corner.x - a.max_corner.x, 0.0});
  const double dy = std::max(
      {a.min_corner.y - b.max_corner.y, b.min_corner.y - a.max_corner.y, 0.0});
  return std::sqrt(dx * dx + dy * dy);
}

OccupancyGrid::OccupancyGrid(int width, int height, double cell_size,
                             Vec2 origin)
    : width_(width),
      height_(height),
      cell_size_(cell_size),
      origin_(origin),
      cells_(static_cast<std::size_t>(width) * height, 0) {}

int OccupancyGrid::cell_x(double wx) const {
  const int ix = static_cast<int>(std::floor((wx - origin_.x) / cell_size_));
  return std::clamp(ix, 0, width_ - 1);
}

int OccupancyGrid::cell_y(double wy) const {
  const int iy = static_cast<int>(std::floor((wy - origin_.y) / cell_size_));
  return std::clamp(iy, 0, height_ - 1);
}

Vec2 OccupancyGrid::cell_center(int ix, int iy) const {
  return {origin_.x + (ix + 0.5) * cell_size_,
          origin_.y + (iy + 0.5) * cell_size_};
}

bool OccupancyGrid::in_bounds(Vec2 p) const {
  return p.x >= origin_.x && p.x <= origin_.x + world_w() &&
         p.y >= origin_.y && p.y <= origin_.y + world_h();
}

bool OccupancyGrid::blocked_at(Vec2 p) const {
  return blocked(cell_x(p.x), cell_y(p.y));
}

OccupancyGrid rasterize(double world_w, double world_h, double cell_size,
                        const std::vector<RectObstacle>& obstacles,
                        double inflation) {
  if (world_w <= 0.0 || world_h <= 0.0 || cell_size <= 0.0) {
    throw std::invalid_argument("rasterize: world and cell sizes must be > 0");
  }
  if (cell_size > std::min(world_w, world_h)) {
    throw std::invalid_argument(
        "rasterize: cell_size exceeds the smaller world dimension");
  }
  if (inflation < 0.0) {
    throw std::invalid_argument("rasterize: inflation must be >= 0");
  }

  const int w = static_cast<int>(std::ceil(world_w / cell_size - 1e-9));
  const int h = static_cast<int>(std::ceil(world_h / cell_size - 1e-9));
  OccupancyGrid grid(w, h, cell_size);

  std::vector<double> centers_x(static_cast<std::size_t>(w));
  for (int ix = 0; ix < w; ++ix) centers_x[ix] = (ix + 0.5) * cell_size;

  // Boundary band: centers outside the world rectangle shrunk by inflation.
  for (int iy = 0; iy < h; ++iy) {
    const double cy = (iy + 0.5) * cell_size;
    std::uint8_t* row = grid.row(iy);
    if (cy < inflation || cy > world_h - inflation) {
      std::fill(row, row + w, std::uint8_t{1});
      continue;
    }
    for (int ix = 0; ix < w; ++ix) {
      const double cx = centers_x[ix];
      if (cx < inflation || cx > world_w - inflation) row[ix] = 1;
    }
  }

  const double inflation_sq = inflation * inflation;
  for (const RectObstacle& r : obstacles) {
    // Only rows that can possibly be in range.
    const int iy_lo = std::max(
        0, static_cast<int>(
               std::floor((r.min_corner.y - inflation) / cell_size)) -
               1);
    const int iy_hi = std::min(
        h - 1, static_cast<int>(
                   std::ceil((r.max_corner.y + inflation) / cell_size)) +
                   1);
    for (int iy = iy_lo; iy <= iy_hi; ++iy) {
      const double cy = (iy + 0.5) * cell_size;
      kernels::mark_row_near_box(grid.row(iy), centers_x.data(),
                                 static_cast<std::size_t>(w), cy,
                                 r.min_corner.x, r.min_corner.y,
                                 r.max_corner.x, r.max_corner.y, inflation_sq);
    }
  }
  return grid;
}

double traversable_fraction(const OccupancyGrid& grid) {
  const auto& cells = grid.cells();
  if (cells.empty()) return 0.0;
  std::size_t blocked = 0;
  for (std::uint8_t c : cells) blocked += c;
  return 1.0 - static_cast<double>(blocked) / static_cast<double>(cells.size());
}

bool raycast_free(const OccupancyGrid& grid, Vec2 p, Vec2 q) {
  // Canonical endpoint order makes the traversal (and thus any conservative
  // corner handling) symmetric in p and q.
  if (q.x < p.x || (q.x == p.x && q.y < p.y)) std::swap(p, q);

  int ix = grid.cell_x(p.x);
  int iy = grid.cell_y(p.y);
  const int jx = grid.cell_x(q.x);
  const int jy = grid.cell_y(q.y);
  if (grid.blocked(ix, iy)) return false;
  if (ix == jx && iy == jy) return true;

  const double cs = grid.cell_size();
  const Vec2 o = grid.origin();
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);

  const double inf = std::numeric_limits<double>::infinity();
  double t_max_x = inf;
  double t_max_y = inf;
  double t_delta_x = inf;
  double t_delta_y = inf;
  if (step_x != 0) {
    const double boundary = o.x + (ix + (step_x > 0 ? 1 : 0)) * cs;
    t_max_x = (boundary - p.x) / dx;
    t_delta_x = cs / std::abs(dx);
  }
  if (step_y != 0) {
    const double boundary = o.y + (iy + (step_y > 0 ? 1 : 0)) * cs;
    t_max_y = (boundary - p.y) / dy;
    t_delta_y = cs / std::abs(dy);
  }

  const auto blocked_safe = [&](int cx, int cy) {
    return cx >= 0 && cx < grid.width() && cy >= 0 && cy < grid.height() &&
           grid.blocked(cx, cy);
  };

  int guard = std::abs(jx - ix) + std::abs(jy - iy) + 4;
  while ((ix != jx || iy != jy) && guard-- > 0) {
    if (t_max_x < t_max_y) {
      ix += step_x;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      iy += step_y;
      t_max_y += t_delta_y;
    } else {
      // Segment passes exactly through a lattice corner: conservatively
      // treat all four surrounding cells as touched.
      if (blocked_safe(ix + step_x, iy)) return false;
      if (blocked_safe(ix, iy + step_y)) return false;
      ix += step_x;
      iy += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    if (blocked_safe(ix, iy)) return false;
  }
  return !grid.blocked(jx, jy);
}

void write_pgm(const OccupancyGrid& grid, std::ostream& out) {
  out << "P2\n" << grid.width() << " " << grid.height() << "\n255\n";
  for (int iy = grid.height() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      out << (grid.blocked(ix, iy) ? 0 : 255);
      out << (ix + 1 == grid.width() ? '\n' : ' ');
    }
  }
}

}  // namespace topo_orca
