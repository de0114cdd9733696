// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace topo_orca::kernels {

// Data-parallel inner loops of the grid pipeline. Each kernel has a scalar
// reference implementation and an AVX2 variant; the active backend is picked
// at runtime from CPU features (override with set_backend or the
// TOPO_ORCA_BACKEND environment variable). Both variants are required to
// produce bit-identical output: comparisons are exact and the float kernels
// use plain mul/add with no FMA contraction, so the choice of backend can
// never change simulation results.

enum class Backend { scalar, avx2 };

/// Backend selected at startup (env override first, then CPU detection).
Backend active_backend();
void set_backend(Backend b);
bool cpu_has_avx2();
std::string backend_name(Backend b);

/// Marks every cell whose center lies within `inflation_sq` (squared meters)
/// of the axis-aligned box [min_x,max_x]x[min_y,max_y]. `centers_x` holds the
/// precomputed x coordinate of each column center; `center_y` is the row's y.
/// Blocked cells get `row[i] |= 1`. One call per (row, box).
void mark_row_near_box(std::uint8_t* row, const double* centers_x,
                       std::size_t n, double center_y, double min_x,
                       double min_y, double max_x, double max_y,
                       double inflation_sq);

/// One Zhang-Suen thinning subiteration over the interior of a zero-padded
/// foreground buffer (`w` x `h` including the 1-cell pad ring; bytes are 0 or
/// 1). Writes the surviving foreground into `dst` and returns the number of
/// deleted pixels. `parity` selects the subiteration (0 or 1).
std::size_t thin_pass(const std::uint8_t* src, std::uint8_t* dst,
                      std::size_t w, std::size_t h, int parity);

namespace detail {
void mark_row_near_box_scalar(std::uint8_t* row, const double* centers_x,
                              std::size_t n, double center_y, double min_x,
                              double min_y, double max_x, double max_y,
                              double inflation_sq);
void mark_row_near_box_avx2(std::uint8_t* row, const double* centers_x,
                            std::size_t n, double center_y, double min_x,
                            double min_y, double max_x, double max_y,
                            double inflation_sq);
std::size_t thin_pass_scalar(const std::uint8_t* src, std::uint8_t* dst,
                             std::size_t w, std::size_t h, int parity);
std::size_t thin_pass_avx2(const std::uint8_t* src, std::uint8_t* dst,
                           std::size_t w, std::size_t h, int parity);
}  // namespace detail

}  // namespace topo_orca::kernels
