#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Numeric inner-loop kernels used by the layout and accessibility stages.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active variant is picked once at startup from CPU features
// and can be forced with the SCIMAP_SIMD environment variable
// ("scalar", "avx2" or "auto") or with set_backend(). SIMD variants are
// equivalence-tested against the scalar references.

namespace scimap::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
void set_backend(Backend b);
bool backend_available(Backend b);
std::string backend_name(Backend b);

// Accumulates the pairwise repulsive displacement acting on node i:
//   f += (p_i - p_j) * k2 / max(|p_i - p_j|^2, min_d2)   over all j.
// The j == i term contributes zero and is not special-cased.
void repulse2d(const double* xs, const double* ys, std::size_t n,
               std::size_t i, double k2, double min_d2,
               double& fx, double& fy);
void repulse3d(const double* xs, const double* ys, const double* zs,
               std::size_t n, std::size_t i, double k2, double min_d2,
               double& fx, double& fy, double& fz);

// One step of a sparse row-gather product over a CSR structure:
//   out[v] = sum over k in [row_ptr[v], row_ptr[v+1]) of x[col[k]] * w[k]
void spmv_gather(const std::int32_t* row_ptr, const std::int32_t* col,
                 const double* w, std::size_t n, const double* x, double* out);

namespace detail {
void repulse2d_scalar(const double* xs, const double* ys, std::size_t n,
                      std::size_t i, double k2, double min_d2,
                      double& fx, double& fy);
void repulse3d_scalar(const double* xs, const double* ys, const double* zs,
                      std::size_t n, std::size_t i, double k2, double min_d2,
                      double& fx, double& fy, double& fz);
void spmv_gather_scalar(const std::int32_t* row_ptr, const std::int32_t* col,
                        const double* w, std::size_t n, const double* x,
                        double* out);
#ifdef SCIMAP_BUILD_AVX2
void repulse2d_avx2(const double* xs, const double* ys, std::size_t n,
                    std::size_t i, double k2, double min_d2,
                    double& fx, double& fy);
void repulse3d_avx2(const double* xs, const double* ys, const double* zs,
                    std::size_t n, std::size_t i, double k2, double min_d2,
                    double& fx, double& fy, double& fz);
void spmv_gather_avx2(const std::int32_t* row_ptr, const std::int32_t* col,
                      const double* w, std::size_t n, const double* x,
                      double* out);
#endif
}  // namespace detail

}  // namespace scimap::kernels
