// SPDX-License-Identifier: Apache-2.0

// AVX2 variants of the grid kernels. Compiled with -mavx2 in its own
// translation unit; only reached after the runtime CPU check. Float math is
// plain mul/add (no FMA) so results match the scalar kernels bit for bit.

#include "topo_orca/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace topo_orca::kernels::detail {

#if defined(__AVX2__)

void mark_row_near_box_avx2(std::uint8_t* row, const double* centers_x,
                            std::size_t n, double center_y, double min_x,
                            double min_y, double max_x, double max_y,
                            double inflation_sq) {
  const double dy_lo = min_y - center_y;
  const double dy_hi = center_y - max_y;
  double dy = dy_lo > dy_hi ? dy_lo : dy_hi;
  if (dy < 0.0) dy = 0.0;
  const double dy_sq = dy * dy;

  const __m256d vmin_x = _mm256_set1_pd(min_x);
  const __m256d vmax_x = _mm256_set1_pd(max_x);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vdy_sq = _mm256_set1_pd(dy_sq);
  const __m256d vinfl = _mm256_set1_pd(inflation_sq);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cx = _mm256_loadu_pd(centers_x + i);
    const __m256d dx_lo = _mm256_sub_pd(vmin_x, cx);
    const __m256d dx_hi = _mm256_sub_pd(cx, vmax_x);
    const __m256d dx = _mm256_max_pd(_mm256_max_pd(dx_lo, dx_hi), vzero);
    const __m256d d_sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), vdy_sq);
    const __m256d hit = _mm256_cmp_pd(d_sq, vinfl, _CMP_LE_OQ);
    const int m = _mm256_movemask_pd(hit);
    row[i] |= static_cast<std::uint8_t>(m & 1);
    row[i + 1] |= static_cast<std::uint8_t>((m >> 1) & 1);
    row[i + 2] |= static_cast<std::uint8_t>((m >> 2) & 1);
    row[i + 3] |= static_cast<std::uint8_t>((m >> 3) & 1);
  }
  for (; i < n; ++i) {
    const double cx = centers_x[i];
    const double dx_lo = min_x - cx;
    const double dx_hi = cx - max_x;
    double dx = dx_lo > dx_hi ? dx_lo : dx_hi;
    if (dx < 0.0) dx = 0.0;
    if (dx * dx + dy_sq <= inflation_sq) row[i] |= 1;
  }
}

namespace {

inline int scalar_thin_one(const std::uint8_t* up, const std::uint8_t* mid,
                           const std::uint8_t* dn, std::size_t x, int parity,
                           std::uint8_t* out) {
  const std::uint8_t c = mid[x];
  if (!c) {
    out[x] = 0;
    return 0;
  }
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
  return del ? 1 : 0;
}

}  // namespace

std::size_t thin_pass_avx2(const std::uint8_t* src, std::uint8_t* dst,
                           std::size_t w, std::size_t h, int parity) {
  std::size_t deleted = 0;
  for (std::size_t i = 0; i < w; ++i) {
    dst[i] = 0;
    dst[(h - 1) * w + i] = 0;
  }
  const __m256i one = _mm256_set1_epi8(1);
  const __m256i seven = _mm256_set1_epi8(7);
  const __m256i zero = _mm256_setzero_si256();

  for (std::size_t y = 1; y + 1 < h; ++y) {
    const std::uint8_t* up = src + (y - 1) * w;
    const std::uint8_t* mid = src + y * w;
    const std::uint8_t* dn = src + (y + 1) * w;
    std::uint8_t* out = dst + y * w;
    out[0] = 0;
    out[w - 1] = 0;

    std::size_t x = 1;
    for (; x + 32 + 1 <= w; x += 32) {
      const __m256i c = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(mid + x));
      const __m256i p2 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(up + x));
      const __m256i p3 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(up + x + 1));
      const __m256i p4 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mid + x + 1));
      const __m256i p5 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dn + x + 1));
      const __m256i p6 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dn + x));
      const __m256i p7 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dn + x - 1));
      const __m256i p8 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mid + x - 1));
      const __m256i p9 =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(up + x - 1));

      __m256i b = _mm256_add_epi8(p2, p3);
      b = _mm256_add_epi8(b, p4);
      b = _mm256_add_epi8(b, p5);
      b = _mm256_add_epi8(b, p6);
      b = _mm256_add_epi8(b, p7);
      b = _mm256_add_epi8(b, p8);
      b = _mm256_add_epi8(b, p9);

      // 0->1 transitions around the ring.
      __m256i a = _mm256_and_si256(_mm256_andnot_si256(p2, one), p3);
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p3, one), p4));
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p4, one), p5));
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p5, one), p6));
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p6, one), p7));
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p7, one), p8));
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p8, one), p9));
      a = _mm256_add_epi8(a, _mm256_and_si256(_mm256_andnot_si256(p9, one), p2));

      const __m256i m1 = parity == 0
                             ? _mm256_and_si256(_mm256_and_si256(p2, p4), p6)
                             : _mm256_and_si256(_mm256_and_si256(p2, p4), p8);
      const __m256i m2 = parity == 0
                             ? _mm256_and_si256(_mm256_and_si256(p4, p6), p8)
                             : _mm256_and_si256(_mm256_and_si256(p2, p6), p8);

      __m256i del = _mm256_cmpeq_epi8(c, one);
      del = _mm256_and_si256(del, _mm256_cmpgt_epi8(b, one));
      del = _mm256_and_si256(del, _mm256_cmpgt_epi8(seven, b));
      del = _mm256_and_si256(del, _mm256_cmpeq_epi8(a, one));
      del = _mm256_and_si256(del, _mm256_cmpeq_epi8(m1, zero));
      del = _mm256_and_si256(del, _mm256_cmpeq_epi8(m2, zero));

      const __m256i surv = _mm256_andnot_si256(del, c);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), surv);
      deleted += static_cast<std::size_t>(
          __builtin_popcount(static_cast<unsigned>(_mm256_movemask_epi8(del))));
    }
    for (; x + 1 < w; ++x) {
      deleted += static_cast<std::size_t>(
          scalar_thin_one(up, mid, dn, x, parity, out));
    }
  }
  return deleted;
}

#else

// Built without AVX2 support: the dispatcher never routes here.
void mark_row_near_box_avx2(std::uint8_t* row, const double* centers_x,
                            std::size_t n, double center_y, double min_x,
                            double min_y, double max_x, double max_y,
                            double inflation_sq) {
  mark_row_near_box_scalar(row, centers_x, n, center_y, min_x, min_y, max_x,
                           max_y, inflation_sq);
}

std::size_t thin_pass_avx2(const std::uint8_t* src, std::uint8_t* dst,
                           std::size_t w, std::size_t h, int parity) {
  return thin_pass_scalar(src, dst, w, h, parity);
}

#endif  // __AVX2__

}  // namespace topo_orca::kernels::detail
