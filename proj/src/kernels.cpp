#include "scimap/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace scimap::kernels {

namespace detail {

void repulse2d_scalar(const double* xs, const double* ys, std::size_t n,
                      std::size_t i, double k2, double min_d2,
                      double& fx, double& fy) {
  const double xi = xs[i], yi = ys[i];
  double ax = 0.0, ay = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = xi - xs[j];
    const double dy = yi - ys[j];
    double d2 = dx * dx + dy * dy;
    if (d2 < min_d2) d2 = min_d2;
    const double s = k2 / d2;
    ax += dx * s;
    ay += dy * s;
  }
  fx += ax;
  fy += ay;
}

void repulse3d_scalar(const double* xs, const double* ys, const double* zs,
                      std::size_t n, std::size_t i, double k2, double min_d2,
                      double& fx, double& fy, double& fz) {
  const double xi = xs[i], yi = ys[i], zi = zs[i];
  double ax = 0.0, ay = 0.0, az = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = xi - xs[j];
    const double dy = yi - ys[j];
    const double dz = zi - zs[j];
    double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < min_d2) d2 = min_d2;
    const double s = k2 / d2;
    ax += dx * s;
    ay += dy * s;
    az += dz * s;
  }
  fx += ax;
  fy += ay;
  fz += az;
}

void spmv_gather_scalar(const std::int32_t* row_ptr, const std::int32_t* col,
                        const double* w, std::size_t n, const double* x,
                        double* out) {
  for (std::size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (std::int32_t k = row_ptr[v]; k < row_ptr[v + 1]; ++k) {
      acc += x[col[k]] * w[k];
    }
    out[v] = acc;
  }
}

}  // namespace detail

namespace {

Backend pick_default() {
#ifdef SCIMAP_BUILD_AVX2
  if (const char* env = std::getenv("SCIMAP_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2") return Backend::Avx2;
  }
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#else
  if (const char* env = std::getenv("SCIMAP_SIMD")) {
    const std::string v(env);
    if (v == "avx2") {
      throw std::runtime_error("SCIMAP_SIMD=avx2 requested but this build has no AVX2 kernels");
    }
  }
#endif
  return Backend::Scalar;
}

Backend& current() {
  static Backend b = pick_default();
  return b;
}

}  // namespace

Backend active_backend() { return current(); }

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
#ifdef SCIMAP_BUILD_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error("kernel backend " + backend_name(b) + " not available on this machine");
  }
  current() = b;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

void repulse2d(const double* xs, const double* ys, std::size_t n,
               std::size_t i, double k2, double min_d2,
               double& fx, double& fy) {
#ifdef SCIMAP_BUILD_AVX2
  if (current() == Backend::Avx2) {
    detail::repulse2d_avx2(xs, ys, n, i, k2, min_d2, fx, fy);
    return;
  }
#endif
  detail::repulse2d_scalar(xs, ys, n, i, k2, min_d2, fx, fy);
}

void repulse3d(const double* xs, const double* ys, const double* zs,
               std::size_t n, std::size_t i, double k2, double min_d2,
               double& fx, double& fy, double& fz) {
#ifdef SCIMAP_BUILD_AVX2
  if (current() == Backend::Avx2) {
    detail::repulse3d_avx2(xs, ys, zs, n, i, k2, min_d2, fx, fy, fz);
    return;
  }
#endif
  detail::repulse3d_scalar(xs, ys, zs, n, i, k2, min_d2, fx, fy, fz);
}

void spmv_gather(const std::int32_t* row_ptr, const std::int32_t* col,
                 const double* w, std::size_t n, const double* x, double* out) {
#ifdef SCIMAP_BUILD_AVX2
  if (current() == Backend::Avx2) {
    detail::spmv_gather_avx2(row_ptr, col, w, n, x, out);
    return;
  }
#endif
  detail::spmv_gather_scalar(row_ptr, col, w, n, x, out);
}

}  // namespace scimap::kernels
