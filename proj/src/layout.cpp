#include "scimap/layout.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>

#include "scimap/kernels.hpp"

namespace scimap {

namespace {

constexpr double kMinDist2 = 1e-18;
constexpr std::size_t kGridThreshold = 20000;

// Grid-bucketed repulsion with cutoff radius 2k: only pairs within the
// neighboring cells interact. Cells and their members are scanned in index
// order to keep the accumulation deterministic.
void repulse_grid(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::vector<double>& zs, int dims, double k2, double cutoff,
                  std::vector<double>& fx, std::vector<double>& fy, std::vector<double>& fz) {
  const std::size_t n = xs.size();
  const double cell = cutoff;
  const double cutoff2 = cutoff * cutoff;
  std::map<std::array<long, 3>, std::vector<int>> grid;
  auto cell_of = [&](std::size_t i) {
    std::array<long, 3> c{static_cast<long>(std::floor(xs[i] / cell)),
                          static_cast<long>(std::floor(ys[i] / cell)), 0};
    if (dims == 3) c[2] = static_cast<long>(std::floor(zs[i] / cell));
    return c;
  };
  for (std::size_t i = 0; i < n; ++i) grid[cell_of(i)].push_back(static_cast<int>(i));

  for (std::size_t i = 0; i < n; ++i) {
    const auto home = cell_of(i);
    double ax = 0.0, ay = 0.0, az = 0.0;
    const long zlo = dims == 3 ? home[2] - 1 : 0;
    const long zhi = dims == 3 ? home[2] + 1 : 0;
    for (long cx = home[0] - 1; cx <= home[0] + 1; ++cx) {
      for (long cy = home[1] - 1; cy <= home[1] + 1; ++cy) {
        for (long cz = zlo; cz <= zhi; ++cz) {
          auto it = grid.find({cx, cy, cz});
          if (it == grid.end()) continue;
          for (int j : it->second) {
            const double dx = xs[i] - xs[j];
            const double dy = ys[i] - ys[j];
            const double dz = dims == 3 ? zs[i] - zs[j] : 0.0;
            double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 > cutoff2) continue;
            if (d2 < kMinDist2) d2 = kMinDist2;
            const double s = k2 / d2;
            ax += dx * s;
            ay += dy * s;
            az += dz * s;
          }
        }
      }
    }
    fx[i] += ax;
    fy[i] += ay;
    if (dims == 3) fz[i] += az;
  }
}

}  // namespace

Layout layout_network(const CitationNetwork& network, const LayoutOptions& options) {
  if (options.dims != 2 && options.dims != 3) {
    throw InputError("layout dims must be 2 or 3, got " + std::to_string(options.dims));
  }
  if (options.iterations < 1) {
    throw InputError("layout iterations must be >= 1");
  }
  const std::size_t n = network.node_count();
  if (n == 0) throw InputError("cannot lay out an empty network");

  Layout layout;
  layout.dims = options.dims;
  layout.iterations = options.iterations;
  layout.k = std::pow(1.0 / static_cast<double>(n), 1.0 / options.dims);
  layout.grid_cutoff_used =
      options.repulsion == RepulsionMode::Grid ||
      (options.repulsion == RepulsionMode::Auto && n > kGridThreshold);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  layout.xs.resize(n);
  layout.ys.resize(n);
  if (options.dims == 3) layout.zs.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    layout.xs[v] = unit(rng);
    layout.ys[v] = unit(rng);
    if (options.dims == 3) layout.zs[v] = unit(rng);
  }
  if (n == 1) {
    layout.final_temperature = 0.0;
    return layout;
  }

  const double k = layout.k;
  const double k2 = k * k;
  const double t0 = 0.1;
  std::vector<double> fx(n), fy(n), fz(options.dims == 3 ? n : 0);

  for (int iter = 0; iter < options.iterations; ++iter) {
    const double t = t0 * static_cast<double>(options.iterations - iter) /
                     static_cast<double>(options.iterations);
    std::fill(fx.begin(), fx.end(), 0.0);
    std::fill(fy.begin(), fy.end(), 0.0);
    std::fill(fz.begin(), fz.end(), 0.0);

    if (layout.grid_cutoff_used) {
      repulse_grid(layout.xs, layout.ys, layout.zs, options.dims, k2, 2.0 * k, fx, fy, fz);
    } else if (options.dims == 3) {
      for (std::size_t v = 0; v < n; ++v) {
        kernels::repulse3d(layout.xs.data(), layout.ys.data(), layout.zs.data(), n, v, k2,
                           kMinDist2, fx[v], fy[v], fz[v]);
      }
    } else {
      for (std::size_t v = 0; v < n; ++v) {
        kernels::repulse2d(layout.xs.data(), layout.ys.data(), n, v, k2, kMinDist2, fx[v], fy[v]);
      }
    }

    for (std::size_t v = 0; v < n; ++v) {
      for (const auto& nb : network.neighbors(static_cast<int>(v))) {
        if (nb.node <= static_cast<int>(v)) continue;
        const double dx = layout.xs[v] - layout.xs[nb.node];
        const double dy = layout.ys[v] - layout.ys[nb.node];
        const double dz = options.dims == 3 ? layout.zs[v] - layout.zs[nb.node] : 0.0;
        const double d = std::sqrt(std::max(dx * dx + dy * dy + dz * dz, kMinDist2));
        const double s = d / k;  // attractive pull d^2/k along the unit vector
        fx[v] -= dx * s;
        fy[v] -= dy * s;
        fx[nb.node] += dx * s;
        fy[nb.node] += dy * s;
        if (options.dims == 3) {
          fz[v] -= dz * s;
          fz[nb.node] += dz * s;
        }
      }
    }

    double max_step = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double dz = options.dims == 3 ? fz[v] : 0.0;
      const double len = std::sqrt(fx[v] * fx[v] + fy[v] * fy[v] + dz * dz);
      if (len <= 0.0) continue;
      const double step = std::min(len, t);
      const double scale = step / len;
      layout.xs[v] += fx[v] * scale;
      layout.ys[v] += fy[v] * scale;
      if (options.dims == 3) layout.zs[v] += fz[v] * scale;
      max_step = std::max(max_step, step);
    }
    layout.max_step.push_back(max_step);
    layout.final_temperature = t;
  }

  // recenter to a zero centroid
  double cx = 0.0, cy = 0.0, cz = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    cx += layout.xs[v];
    cy += layout.ys[v];
    if (options.dims == 3) cz += layout.zs[v];
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  cz /= static_cast<double>(n);
  for (std::size_t v = 0; v < n; ++v) {
    layout.xs[v] -= cx;
    layout.ys[v] -= cy;
    if (options.dims == 3) layout.zs[v] -= cz;
  }
  return layout;
}

namespace {

// Jacobi eigendecomposition of a symmetric 3x3 matrix.
void jacobi3(std::array<std::array<double, 3>, 3> a, std::array<double, 3>& values,
             std::array<std::array<double, 3>, 3>& vectors) {
  vectors = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off < 1e-15) break;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a[p][q]) < 1e-18) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < 3; ++r) {
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = c * arp - s * arq;
          a[r][q] = s * arp + c * arq;
        }
        for (int r = 0; r < 3; ++r) {
          const double apr = a[p][r], aqr = a[q][r];
          a[p][r] = c * apr - s * aqr;
          a[q][r] = s * apr + c * aqr;
        }
        for (int r = 0; r < 3; ++r) {
          const double vrp = vectors[r][p], vrq = vectors[r][q];
          vectors[r][p] = c * vrp - s * vrq;
          vectors[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  values = {a[0][0], a[1][1], a[2][2]};
}

}  // namespace

Projection project_to_2d(const Layout& layout) {
  Projection proj;
  const std::size_t n = layout.xs.size();
  if (layout.dims == 2) {
    proj.xs = layout.xs;
    proj.ys = layout.ys;
    return proj;
  }
  // covariance of the centered coordinates
  std::array<std::array<double, 3>, 3> cov{};
  const std::array<const std::vector<double>*, 3> coords{&layout.xs, &layout.ys, &layout.zs};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      double s = 0.0;
      for (std::size_t v = 0; v < n; ++v) s += (*coords[a])[v] * (*coords[b])[v];
      cov[a][b] = cov[b][a] = s / static_cast<double>(n);
    }
  }
  std::array<double, 3> values;
  std::array<std::array<double, 3>, 3> vectors;
  jacobi3(cov, values, vectors);

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
  for (int axis = 0; axis < 2; ++axis) {
    const int col = order[axis];
    // deterministic sign: largest-magnitude component positive
    int arg = 0;
    for (int r = 1; r < 3; ++r) {
      if (std::abs(vectors[r][col]) > std::abs(vectors[arg][col])) arg = r;
    }
    const double sign = vectors[arg][col] >= 0.0 ? 1.0 : -1.0;
    auto& out = axis == 0 ? proj.xs : proj.ys;
    out.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      out[v] = sign * (vectors[0][col] * layout.xs[v] + vectors[1][col] * layout.ys[v] +
                       vectors[2][col] * layout.zs[v]);
    }
  }
  return proj;
}

void export_coordinates_csv(const CitationNetwork& network, const CommunityPartition& partition,
                            const Layout& layout, std::ostream& out) {
  out << (layout.dims == 3 ? "id,x,y,z,community\n" : "id,x,y,community\n");
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    out << network.id(static_cast<int>(v)) << ',' << layout.xs[v] << ',' << layout.ys[v];
    if (layout.dims == 3) out << ',' << layout.zs[v];
    out << ',' << partition.assignment[v] << '\n';
  }
}

}  // namespace scimap
