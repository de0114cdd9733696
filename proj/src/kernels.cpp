// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace topo_orca::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("TOPO_ORCA_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2()) b = Backend::scalar;
  backend_slot().store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void mark_row_near_box(std::uint8_t* row, const double* centers_x,
                       std::size_t n, double center_y, double min_x,
                       double min_y, double max_x, double max_y,
                       double inflation_sq) {
  if (active_backend() == Backend::avx2) {
    detail::mark_row_near_box_avx2(row, centers_x, n, center_y, min_x, min_y,
                                   max_x, max_y, inflation_sq);
  } else {
    detail::mark_row_near_box_scalar(row, centers_x, n, center_y, min_x, min_y,
                                     max_x, max_y, inflation_sq);
  }
}

std::size_t thin_pass(const std::uint8_t* src, std::uint8_t* dst,
                      std::size_t w, std::size_t h, int parity) {
  if (active_backend() == Backend::avx2) {
    return detail::thin_pass_avx2(src, dst, w, h, parity);
  }
  return detail::thin_pass_scalar(src, dst, w, h, parity);
}

}  // namespace topo_orca::kernels
