#include "scimap/kernels.hpp"

#include <immintrin.h>

namespace scimap::kernels::detail {

namespace {

inline double hsum_pd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

void repulse2d_avx2(const double* xs, const double* ys, std::size_t n,
                    std::size_t i, double k2, double min_d2,
                    double& fx, double& fy) {
  const __m256d xi = _mm256_set1_pd(xs[i]);
  const __m256d yi = _mm256_set1_pd(ys[i]);
  const __m256d k2v = _mm256_set1_pd(k2);
  const __m256d dmin = _mm256_set1_pd(min_d2);
  __m256d ax = _mm256_setzero_pd();
  __m256d ay = _mm256_setzero_pd();

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs + j));
    const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys + j));
    __m256d d2 = _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx));
    d2 = _mm256_max_pd(d2, dmin);
    const __m256d s = _mm256_div_pd(k2v, d2);
    ax = _mm256_fmadd_pd(dx, s, ax);
    ay = _mm256_fmadd_pd(dy, s, ay);
  }
  double sx = hsum_pd(ax), sy = hsum_pd(ay);
  for (; j < n; ++j) {
    const double dx = xs[i] - xs[j];
    const double dy = ys[i] - ys[j];
    double d2 = dx * dx + dy * dy;
    if (d2 < min_d2) d2 = min_d2;
    const double s = k2 / d2;
    sx += dx * s;
    sy += dy * s;
  }
  fx += sx;
  fy += sy;
}

void repulse3d_avx2(const double* xs, const double* ys, const double* zs,
                    std::size_t n, std::size_t i, double k2, double min_d2,
                    double& fx, double& fy, double& fz) {
  const __m256d xi = _mm256_set1_pd(xs[i]);
  const __m256d yi = _mm256_set1_pd(ys[i]);
  const __m256d zi = _mm256_set1_pd(zs[i]);
  const __m256d k2v = _mm256_set1_pd(k2);
  const __m256d dmin = _mm256_set1_pd(min_d2);
  __m256d ax = _mm256_setzero_pd();
  __m256d ay = _mm256_setzero_pd();
  __m256d az = _mm256_setzero_pd();

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs + j));
    const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys + j));
    const __m256d dz = _mm256_sub_pd(zi, _mm256_loadu_pd(zs + j));
    __m256d d2 = _mm256_mul_pd(dx, dx);
    d2 = _mm256_fmadd_pd(dy, dy, d2);
    d2 = _mm256_fmadd_pd(dz, dz, d2);
    d2 = _mm256_max_pd(d2, dmin);
    const __m256d s = _mm256_div_pd(k2v, d2);
    ax = _mm256_fmadd_pd(dx, s, ax);
    ay = _mm256_fmadd_pd(dy, s, ay);
    az = _mm256_fmadd_pd(dz, s, az);
  }
  double sx = hsum_pd(ax), sy = hsum_pd(ay), sz = hsum_pd(az);
  for (; j < n; ++j) {
    const double dx = xs[i] - xs[j];
    const double dy = ys[i] - ys[j];
    const double dz = zs[i] - zs[j];
    double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < min_d2) d2 = min_d2;
    const double s = k2 / d2;
    sx += dx * s;
    sy += dy * s;
    sz += dz * s;
  }
  fx += sx;
  fy += sy;
  fz += sz;
}

void spmv_gather_avx2(const std::int32_t* row_ptr, const std::int32_t* col,
                      const double* w, std::size_t n, const double* x,
                      double* out) {
  for (std::size_t v = 0; v < n; ++v) {
    const std::int32_t begin = row_ptr[v];
    const std::int32_t end = row_ptr[v + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int32_t k = begin;
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(xv, _mm256_loadu_pd(w + k), acc);
    }
    double s = hsum_pd(acc);
    for (; k < end; ++k) s += x[col[k]] * w[k];
    out[v] = s;
  }
}

}  // namespace scimap::kernels::detail
