#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "scimap/citenet.hpp"
#include "scimap/communities.hpp"

namespace scimap {

// CSR pull form of the uniform random-walk transition: row v lists the
// neighbors u of v with weight 1/deg(u), so one step is
// p'[v] = sum over u in N(v) of p[u]/deg(u).
struct TransitionMatrix {
  std::vector<std::int32_t> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> weight;
  std::size_t n = 0;
};

TransitionMatrix build_transition(const CitationNetwork& network);

// Row `source` of the h-th transition-matrix power. Throws InputError for an
// isolated source or h < 1.
std::vector<double> walk_probabilities(const CitationNetwork& network, int source, int h);
std::vector<double> walk_probabilities(const TransitionMatrix& transition, int source, int h);

// kappa = exp(-sum p ln p) over the nonzero entries; an exactly uniform
// vector short-circuits to the support size, which the identity gives.
double effective_support(const std::vector<double>& probabilities);

// kappa for one node; 0.0 for an isolated node.
double accessibility(const CitationNetwork& network, int source, int h = 3);

struct AccessibilityProfile {
  int h = 3;
  std::vector<double> kappa;  // per node, 0 for isolated nodes
  std::vector<int> isolated;  // nodes excluded from curves
};

AccessibilityProfile accessibility_profile(const CitationNetwork& network, int h = 3);

// [kappa_min, kappa_max] over all non-isolated nodes.
std::pair<double, double> global_kappa_range(const AccessibilityProfile& profile);

// Empirical cumulative distribution of kappa within one community.
struct CumulativeCurve {
  std::vector<double> x;  // sorted distinct kappa values
  std::vector<double> f;  // fraction of the community's nodes with kappa <= x
  std::size_t count = 0;
};

CumulativeCurve cumulative_curve(const AccessibilityProfile& profile,
                                 const CommunityPartition& partition, int community);

// Integral of the curve over the global kappa range, normalized to [0, 1].
// Large areas mark peripheral communities.
double peripherality_area(const CumulativeCurve& curve, double kappa_min, double kappa_max);

void export_kappa_csv(const CitationNetwork& network, const CommunityPartition& partition,
                      const AccessibilityProfile& profile, std::ostream& out);
void export_curves_csv(const std::vector<CumulativeCurve>& curves, std::ostream& out);
void export_areas_csv(const std::vector<std::pair<int, double>>& ranked_areas, std::ostream& out);

}  // namespace scimap
