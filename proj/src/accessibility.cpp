#include "scimap/accessibility.hpp"

#include <algorithm>
#include <cmath>

#include "scimap/kernels.hpp"

namespace scimap {

TransitionMatrix build_transition(const CitationNetwork& network) {
  TransitionMatrix t;
  t.n = network.node_count();
  t.row_ptr.reserve(t.n + 1);
  t.row_ptr.push_back(0);
  for (std::size_t v = 0; v < t.n; ++v) {
    for (const auto& nb : network.neighbors(static_cast<int>(v))) {
      t.col.push_back(nb.node);
      t.weight.push_back(1.0 / static_cast<double>(network.degree(nb.node)));
    }
    t.row_ptr.push_back(static_cast<std::int32_t>(t.col.size()));
  }
  return t;
}

std::vector<double> walk_probabilities(const TransitionMatrix& transition, int source, int h) {
  if (h < 1) throw InputError("walk length must be >= 1, got " + std::to_string(h));
  if (source < 0 || source >= static_cast<int>(transition.n)) {
    throw InputError("unknown source node index " + std::to_string(source));
  }
  if (transition.row_ptr[source] == transition.row_ptr[source + 1]) {
    throw InputError("no walk from isolated node " + std::to_string(source));
  }
  std::vector<double> p(transition.n, 0.0), next(transition.n, 0.0);
  p[source] = 1.0;
  for (int step = 0; step < h; ++step) {
    kernels::spmv_gather(transition.row_ptr.data(), transition.col.data(),
                         transition.weight.data(), transition.n, p.data(), next.data());
    std::swap(p, next);
  }
  return p;
}

std::vector<double> walk_probabilities(const CitationNetwork& network, int source, int h) {
  return walk_probabilities(build_transition(network), source, h);
}

double effective_support(const std::vector<double>& probabilities) {
  int support = 0;
  double first = 0.0;
  bool uniform = true;
  for (double p : probabilities) {
    if (p <= 0.0) continue;
    if (support == 0) {
      first = p;
    } else if (p != first) {
      uniform = false;
    }
    support++;
  }
  if (support == 0) return 0.0;
  if (uniform) return static_cast<double>(support);
  double entropy = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return std::exp(entropy);
}

double accessibility(const CitationNetwork& network, int source, int h) {
  if (network.degree(source) == 0) return 0.0;
  return effective_support(walk_probabilities(network, source, h));
}

AccessibilityProfile accessibility_profile(const CitationNetwork& network, int h) {
  AccessibilityProfile profile;
  profile.h = h;
  profile.kappa.assign(network.node_count(), 0.0);
  const TransitionMatrix transition = build_transition(network);
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    if (network.degree(static_cast<int>(v)) == 0) {
      profile.isolated.push_back(static_cast<int>(v));
      continue;
    }
    profile.kappa[v] = effective_support(walk_probabilities(transition, static_cast<int>(v), h));
  }
  return profile;
}

std::pair<double, double> global_kappa_range(const AccessibilityProfile& profile) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t v = 0; v < profile.kappa.size(); ++v) {
    if (profile.kappa[v] <= 0.0) continue;
    if (!any) {
      lo = hi = profile.kappa[v];
      any = true;
    } else {
      lo = std::min(lo, profile.kappa[v]);
      hi = std::max(hi, profile.kappa[v]);
    }
  }
  if (!any) throw InputError("no non-isolated node; kappa range undefined");
  return {lo, hi};
}

CumulativeCurve cumulative_curve(const AccessibilityProfile& profile,
                                 const CommunityPartition& partition, int community) {
  std::vector<double> values;
  for (std::size_t v = 0; v < profile.kappa.size(); ++v) {
    if (partition.assignment[v] != community) continue;
    if (profile.kappa[v] > 0.0) values.push_back(profile.kappa[v]);
  }
  if (values.empty()) {
    throw InputError("community " + std::to_string(community) +
                     " has no non-isolated node; curve undefined");
  }
  std::sort(values.begin(), values.end());

  CumulativeCurve curve;
  curve.count = values.size();
  const double total = static_cast<double>(values.size());
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    curve.x.push_back(values[i]);
    curve.f.push_back(static_cast<double>(j) / total);
    i = j;
  }
  return curve;
}

double peripherality_area(const CumulativeCurve& curve, double kappa_min, double kappa_max) {
  if (kappa_max <= kappa_min) {
    throw InputError("degenerate kappa range; peripherality area undefined");
  }
  // step-function integral of F over [kappa_min, kappa_max]
  double area = 0.0;
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    const double from = curve.x[i];
    const double to = (i + 1 < curve.x.size()) ? curve.x[i + 1] : kappa_max;
    area += curve.f[i] * (to - from);
  }
  return area / (kappa_max - kappa_min);
}

void export_kappa_csv(const CitationNetwork& network, const CommunityPartition& partition,
                      const AccessibilityProfile& profile, std::ostream& out) {
  out << "id,community,kappa\n";
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    out << network.id(static_cast<int>(v)) << ',' << partition.assignment[v] << ','
        << profile.kappa[v] << '\n';
  }
}

void export_curves_csv(const std::vector<CumulativeCurve>& curves, std::ostream& out) {
  out << "community,kappa,cumulative_fraction\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (std::size_t i = 0; i < curves[c].x.size(); ++i) {
      out << c << ',' << curves[c].x[i] << ',' << curves[c].f[i] << '\n';
    }
  }
}

void export_areas_csv(const std::vector<std::pair<int, double>>& ranked_areas, std::ostream& out) {
  out << "community,area\n";
  for (const auto& [community, area] : ranked_areas) {
    out << community << ',' << area << '\n';
  }
}

}  // namespace scimap
