// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/kernels.hpp"

namespace topo_orca::kernels::detail {

void mark_row_near_box_scalar(std::uint8_t* row, const double* centers_x,
                              std::size_t n, double center_y, double min_x,
                              double min_y, double max_x, double max_y,
                              double inflation_sq) {
  const double dy_lo = min_y - center_y;
  const double dy_hi = center_y - max_y;
  double dy = dy_lo > dy_hi ? dy_lo : dy_hi;
  if (dy < 0.0) dy = 0.0;
  const double dy_sq = dy * dy;
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = centers_x[i];
    const double dx_lo = min_x - cx;
    const double dx_hi = cx - max_x;
    double dx = dx_lo > dx_hi ? dx_lo : dx_hi;
    if (dx < 0.0) dx = 0.0;
    if (dx * dx + dy_sq <= inflation_sq) row[i] |= 1;
  }
}

std::size_t thin_pass_scalar(const std::uint8_t* src, std::uint8_t* dst,
                             std::size_t w, std::size_t h, int parity) {
  std::size_t deleted = 0;
  // Pad ring never holds foreground.
  for (std::size_t i = 0; i < w; ++i) {
    dst[i] = 0;
    dst[(h - 1) * w + i] = 0;
  }
  for (std::size_t y = 1; y + 1 < h; ++y) {
    const std::uint8_t* up = src + (y - 1) * w;
    const std::uint8_t* mid = src + y * w;
    const std::uint8_t* dn = src + (y + 1) * w;
    std::uint8_t* out = dst + y * w;
    out[0] = 0;
    out[w - 1] = 0;
    for (std::size_t x = 1; x + 1 < w; ++x) {
      const std::uint8_t c = mid[x];
      if (!c) {
        out[x] = 0;
        continue;
      }
      // Neighborhood in the usual p2..p9 order (N, NE, E, SE, S, SW, W, NW).
      const int p2 = up[x], p3 = up[x + 1], p4 = mid[x + 1], p5 = dn[x + 1];
      const int p6 = dn[x], p7 = dn[x - 1], p8 = mid[x - 1], p9 = up[x - 1];
      const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
      const int a = ((p2 ^ 1) & p3) + ((p3 ^ 1) & p4) + ((p4 ^ 1) & p5) +
                    ((p5 ^ 1) & p6) + ((p6 ^ 1) & p7) + ((p7 ^ 1) & p8) +
                    ((p8 ^ 1) & p9) + ((p9 ^ 1) & p2);
      const int m1 = parity == 0 ? (p2 & p4 & p6) : (p2 & p4 & p8);
      const int m2 = parity == 0 ? (p4 & p6 & p8) : (p2 & p6 & p8);
      const bool del = b >= 2 && b <= 6 && a == 1 && m1 == 0 && m2 == 0;
      out[x] = del ? 0 : 1;
      deleted += del ? 1 : 0;
    }
  }
  return deleted;
}

}  // namespace topo_orca::kernels::detail
