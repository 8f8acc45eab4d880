#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "scimap/citenet.hpp"

namespace scimap {

struct CommunityPartition {
  std::vector<int> assignment;  // node -> community label, dense 0..count-1
  std::vector<int> sizes;       // papers per community, decreasing
  double q = 0.0;               // modularity of the assignment

  int count() const { return static_cast<int>(sizes.size()); }
};

// Multilevel modularity optimization (local moving + aggregation).
// Deterministic for a given seed: the node visit order is a seeded shuffle
// and gain ties are broken towards the smallest candidate community label.
// Labels are relabeled 0..C-1 in decreasing community size order.
CommunityPartition detect_communities(const CitationNetwork& network, std::uint64_t seed);

// Newman-Girvan modularity q = sum_c (e_cc - a_c^2), on edge weight
// fractions for weighted networks. A network with no edges has q = 0.
double modularity(const CitationNetwork& network, const std::vector<int>& assignment);

struct CoarseGraph {
  struct Edge {
    int a, b;       // community labels, a < b
    double count;   // inter-community edge count (weight sum when weighted)
    double weight;  // count / (|a| * |b|)
  };
  int community_count = 0;
  std::vector<int> sizes;
  std::vector<double> intra_count;  // within-community edge count, per community
  std::vector<Edge> edges;          // sorted by (a, b)
};

CoarseGraph coarse_grain(const CitationNetwork& network, const CommunityPartition& partition);

void export_partition_csv(const CitationNetwork& network, const CommunityPartition& partition,
                          std::ostream& out);
void export_coarse_csv(const CoarseGraph& coarse, std::ostream& out);

}  // namespace scimap
