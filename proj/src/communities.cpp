#include "scimap/communities.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace scimap {

namespace {

struct WorkGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
  std::vector<double> self_weight;                       // w_vv, counted once
  std::vector<double> strength;                          // sum_j w_vj + 2 w_vv
  double m = 0.0;                                        // total weight, each edge once
};

WorkGraph from_network(const CitationNetwork& network) {
  WorkGraph g;
  g.n = static_cast<int>(network.node_count());
  g.adj.resize(g.n);
  g.self_weight.assign(g.n, 0.0);
  g.strength.assign(g.n, 0.0);
  for (int v = 0; v < g.n; ++v) {
    for (const auto& nb : network.neighbors(v)) {
      g.adj[v].push_back({nb.node, nb.weight});
    }
    g.strength[v] = network.strength(v);
  }
  g.m = network.total_weight();
  return g;
}

// One level of local moving. Returns true if any node changed community.
// comm is overwritten with a dense relabeling (ascending old label order).
bool local_moving(const WorkGraph& g, std::mt19937_64& rng, std::vector<int>& comm,
                  int& community_count) {
  comm.resize(g.n);
  std::iota(comm.begin(), comm.end(), 0);
  std::vector<double> sum_tot(g.strength);

  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> kin(g.n, 0.0);
  std::vector<int> touched;
  bool any_move = false;

  bool moved = true;
  for (int sweep = 0; moved && sweep < 10000; ++sweep) {
    moved = false;
    for (int v : order) {
      touched.clear();
      for (const auto& [nb, w] : g.adj[v]) {
        const int c = comm[nb];
        if (kin[c] == 0.0) touched.push_back(c);
        kin[c] += w;
      }
      const int c_old = comm[v];
      sum_tot[c_old] -= g.strength[v];

      // candidates: communities of neighbors plus the current one, scanned in
      // ascending label order so gain ties resolve to the smallest label
      if (std::find(touched.begin(), touched.end(), c_old) == touched.end()) {
        touched.push_back(c_old);
      }
      std::sort(touched.begin(), touched.end());

      int best_c = -1;
      double best_gain = 0.0;
      for (int c : touched) {
        const double gain = kin[c] - sum_tot[c] * g.strength[v] / (2.0 * g.m);
        if (best_c < 0 || gain > best_gain) {
          best_c = c;
          best_gain = gain;
        }
      }

      comm[v] = best_c;
      sum_tot[best_c] += g.strength[v];
      if (best_c != c_old) {
        moved = true;
        any_move = true;
      }
      for (int c : touched) kin[c] = 0.0;
    }
  }

  // dense relabel, ascending old label order
  std::vector<int> relabel(g.n, -1);
  int next = 0;
  std::vector<int> present;
  present.reserve(g.n);
  for (int v = 0; v < g.n; ++v) present.push_back(comm[v]);
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  for (int c : present) relabel[c] = next++;
  for (int v = 0; v < g.n; ++v) comm[v] = relabel[comm[v]];
  community_count = next;
  return any_move;
}

WorkGraph aggregate(const WorkGraph& g, const std::vector<int>& comm, int community_count) {
  WorkGraph agg;
  agg.n = community_count;
  agg.adj.resize(agg.n);
  agg.self_weight.assign(agg.n, 0.0);
  agg.strength.assign(agg.n, 0.0);
  agg.m = g.m;

  std::map<std::pair<int, int>, double> cross;
  for (int v = 0; v < g.n; ++v) {
    const int a = comm[v];
    agg.self_weight[a] += g.self_weight[v];
    for (const auto& [nb, w] : g.adj[v]) {
      if (nb < v) continue;  // each undirected edge once
      const int b = comm[nb];
      if (a == b) {
        agg.self_weight[a] += w;
      } else {
        cross[{std::min(a, b), std::max(a, b)}] += w;
      }
    }
  }
  for (const auto& [edge, w] : cross) {
    agg.adj[edge.first].push_back({edge.second, w});
    agg.adj[edge.second].push_back({edge.first, w});
  }
  for (int v = 0; v < agg.n; ++v) {
    std::sort(agg.adj[v].begin(), agg.adj[v].end());
    agg.strength[v] = 2.0 * agg.self_weight[v];
    for (const auto& [nb, w] : agg.adj[v]) {
      (void)nb;
      agg.strength[v] += w;
    }
  }
  return agg;
}

}  // namespace

CommunityPartition detect_communities(const CitationNetwork& network, std::uint64_t seed) {
  if (network.node_count() == 0) {
    throw InputError("community detection requires a non-empty network");
  }
  const int n = static_cast<int>(network.node_count());

  std::vector<int> assignment(n);
  std::iota(assignment.begin(), assignment.end(), 0);

  if (network.total_weight() > 0.0) {
    std::mt19937_64 rng(seed);
    WorkGraph g = from_network(network);
    while (true) {
      std::vector<int> comm;
      int community_count = 0;
      const bool improved = local_moving(g, rng, comm, community_count);
      for (int v = 0; v < n; ++v) assignment[v] = comm[assignment[v]];
      if (!improved || community_count == g.n) break;
      g = aggregate(g, comm, community_count);
    }
  }

  // relabel 0..C-1 by decreasing size; ties towards the community holding
  // the smallest node index
  std::vector<int> size_by_label, min_node;
  for (int v = 0; v < n; ++v) {
    const int c = assignment[v];
    if (c >= static_cast<int>(size_by_label.size())) {
      size_by_label.resize(c + 1, 0);
      min_node.resize(c + 1, n);
    }
    size_by_label[c]++;
    min_node[c] = std::min(min_node[c], v);
  }
  std::vector<int> labels;
  for (std::size_t c = 0; c < size_by_label.size(); ++c) {
    if (size_by_label[c] > 0) labels.push_back(static_cast<int>(c));
  }
  std::sort(labels.begin(), labels.end(), [&](int a, int b) {
    if (size_by_label[a] != size_by_label[b]) return size_by_label[a] > size_by_label[b];
    return min_node[a] < min_node[b];
  });
  std::vector<int> relabel(size_by_label.size(), -1);
  for (std::size_t rank = 0; rank < labels.size(); ++rank) {
    relabel[labels[rank]] = static_cast<int>(rank);
  }

  CommunityPartition part;
  part.assignment.resize(n);
  part.sizes.assign(labels.size(), 0);
  for (int v = 0; v < n; ++v) {
    part.assignment[v] = relabel[assignment[v]];
    part.sizes[part.assignment[v]]++;
  }
  part.q = modularity(network, part.assignment);
  return part;
}

double modularity(const CitationNetwork& network, const std::vector<int>& assignment) {
  const int n = static_cast<int>(network.node_count());
  if (static_cast<int>(assignment.size()) != n) {
    throw InputError("assignment does not cover all nodes (" +
                     std::to_string(assignment.size()) + " labels for " + std::to_string(n) +
                     " nodes)");
  }
  int max_label = -1;
  for (int v = 0; v < n; ++v) {
    if (assignment[v] < 0) throw InputError("node " + std::to_string(v) + " missing from assignment");
    max_label = std::max(max_label, assignment[v]);
  }
  const double m = network.total_weight();
  if (m == 0.0) return 0.0;

  std::vector<double> within(max_label + 1, 0.0);    // edge weight inside community
  std::vector<double> strength(max_label + 1, 0.0);  // summed node strengths
  for (int v = 0; v < n; ++v) {
    strength[assignment[v]] += network.strength(v);
    for (const auto& nb : network.neighbors(v)) {
      if (nb.node <= v) continue;
      if (assignment[nb.node] == assignment[v]) within[assignment[v]] += nb.weight;
    }
  }
  double q = 0.0;
  for (int c = 0; c <= max_label; ++c) {
    const double e_cc = within[c] / m;
    const double a_c = strength[c] / (2.0 * m);
    q += e_cc - a_c * a_c;
  }
  return q;
}

CoarseGraph coarse_grain(const CitationNetwork& network, const CommunityPartition& partition) {
  CoarseGraph coarse;
  coarse.community_count = partition.count();
  coarse.sizes = partition.sizes;
  coarse.intra_count.assign(coarse.community_count, 0.0);

  std::map<std::pair<int, int>, double> cross;
  for (int v = 0; v < static_cast<int>(network.node_count()); ++v) {
    for (const auto& nb : network.neighbors(v)) {
      if (nb.node <= v) continue;
      const int a = partition.assignment[v];
      const int b = partition.assignment[nb.node];
      if (a == b) {
        coarse.intra_count[a] += nb.weight;
      } else {
        cross[{std::min(a, b), std::max(a, b)}] += nb.weight;
      }
    }
  }
  for (const auto& [edge, count] : cross) {
    const double denom =
        static_cast<double>(coarse.sizes[edge.first]) * static_cast<double>(coarse.sizes[edge.second]);
    coarse.edges.push_back({edge.first, edge.second, count, count / denom});
  }
  return coarse;
}

void export_partition_csv(const CitationNetwork& network, const CommunityPartition& partition,
                          std::ostream& out) {
  out << "id,community\n";
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    out << network.id(static_cast<int>(v)) << ',' << partition.assignment[v] << '\n';
  }
}

void export_coarse_csv(const CoarseGraph& coarse, std::ostream& out) {
  out << "community_a,community_b,edge_count,weight\n";
  for (const auto& e : coarse.edges) {
    out << e.a << ',' << e.b << ',' << e.count << ',' << e.weight << '\n';
  }
}

}  // namespace scimap
