#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "scimap/citenet.hpp"
#include "scimap/communities.hpp"

namespace scimap {

enum class RepulsionMode {
  Auto,   // exact, switching to the grid cutoff above 20,000 nodes
  Exact,  // all-pairs repulsion
  Grid,   // grid-bucketed cutoff approximation
};

struct LayoutOptions {
  int dims = 3;  // 2 or 3
  int iterations = 100;
  std::uint64_t seed = 0;
  RepulsionMode repulsion = RepulsionMode::Auto;
};

struct Layout {
  int dims = 3;
  int iterations = 0;
  double final_temperature = 0.0;
  bool grid_cutoff_used = false;
  double k = 0.0;                 // ideal edge length (1/|V|)^(1/dims)
  std::vector<double> xs, ys, zs;  // zs empty in 2D
  std::vector<double> max_step;    // per-iteration maximum displacement
};

// Force-directed embedding: seeded uniform start in the unit cube, repulsion
// k^2/d between all pairs, attraction d^2/k along edges, displacements capped
// by a linearly cooling temperature. Deterministic for a given seed. The
// final coordinates are recentered to a zero centroid.
Layout layout_network(const CitationNetwork& network, const LayoutOptions& options);

// PCA-aligned 2D projection of a 3D layout (drops the least-variant axis).
struct Projection {
  std::vector<double> xs, ys;
};
Projection project_to_2d(const Layout& layout);

void export_coordinates_csv(const CitationNetwork& network, const CommunityPartition& partition,
                            const Layout& layout, std::ostream& out);

}  // namespace scimap
