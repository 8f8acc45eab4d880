#include "scimap/citenet.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace scimap {

CitationNetwork::CitationNetwork(std::vector<std::string> ids,
                                 std::vector<std::vector<Neighbor>> adjacency,
                                 bool weighted, int dangling_references)
    : ids_(std::move(ids)),
      adjacency_(std::move(adjacency)),
      weighted_(weighted),
      dangling_references_(dangling_references) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], static_cast<int>(i));
  strength_.assign(ids_.size(), 0.0);
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    auto& nbrs = adjacency_[v];
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    for (const Neighbor& nb : nbrs) {
      strength_[v] += nb.weight;
      if (nb.node > static_cast<int>(v)) {
        edge_count_++;
        total_weight_ += nb.weight;
      }
    }
  }
}

int CitationNetwork::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> CitationNetwork::isolated_nodes() const {
  std::vector<int> isolated;
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    if (adjacency_[v].empty()) isolated.push_back(static_cast<int>(v));
  }
  return isolated;
}

CitationNetwork build_citation_network(const Corpus& corpus) {
  const std::size_t n = corpus.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const Paper& p : corpus.papers()) ids.push_back(p.id);

  std::vector<std::vector<int>> nbr_sets(n);
  int dangling = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::string& ref : corpus.paper(i).references) {
      const int j = corpus.index_of(ref);
      if (j < 0) {
        dangling++;
        continue;
      }
      nbr_sets[i].push_back(j);
      nbr_sets[j].push_back(static_cast<int>(i));
    }
  }
  std::vector<std::vector<CitationNetwork::Neighbor>> adjacency(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& s = nbr_sets[v];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    adjacency[v].reserve(s.size());
    for (int nb : s) adjacency[v].push_back({nb, 1.0});
  }
  return CitationNetwork(std::move(ids), std::move(adjacency), false, dangling);
}

CitationNetwork build_cocitation_network(const Corpus& corpus) {
  const std::size_t n = corpus.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const Paper& p : corpus.papers()) ids.push_back(p.id);

  // weight{i,j} = number of distinct corpus papers whose reference list
  // contains both i and j
  std::map<std::pair<int, int>, int> weights;
  int dangling = 0;
  for (const Paper& citer : corpus.papers()) {
    std::vector<int> cited;
    for (const std::string& ref : citer.references) {
      const int j = corpus.index_of(ref);
      if (j < 0) {
        dangling++;
        continue;
      }
      cited.push_back(j);
    }
    std::sort(cited.begin(), cited.end());
    for (std::size_t a = 0; a < cited.size(); ++a) {
      for (std::size_t b = a + 1; b < cited.size(); ++b) {
        weights[{cited[a], cited[b]}]++;
      }
    }
  }
  std::vector<std::vector<CitationNetwork::Neighbor>> adjacency(n);
  for (const auto& [edge, w] : weights) {
    adjacency[edge.first].push_back({edge.second, static_cast<double>(w)});
    adjacency[edge.second].push_back({edge.first, static_cast<double>(w)});
  }
  return CitationNetwork(std::move(ids), std::move(adjacency), true, dangling);
}

std::vector<int> shortest_paths_from(const CitationNetwork& network, int source) {
  if (source < 0 || source >= static_cast<int>(network.node_count())) {
    throw InputError("unknown source node index " + std::to_string(source));
  }
  std::vector<int> dist(network.node_count(), -1);
  dist[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& nb : network.neighbors(v)) {
      if (dist[nb.node] < 0) {
        dist[nb.node] = dist[v] + 1;
        queue.push_back(nb.node);
      }
    }
  }
  return dist;
}

std::vector<int> shortest_paths_from(const CitationNetwork& network,
                                     const std::string& source_id) {
  const int source = network.index_of(source_id);
  if (source < 0) throw InputError("unknown source id '" + source_id + "'");
  return shortest_paths_from(network, source);
}

double average_degree(const CitationNetwork& network) {
  if (network.node_count() == 0) {
    throw InputError("average degree undefined for an empty network");
  }
  return 2.0 * static_cast<double>(network.edge_count()) /
         static_cast<double>(network.node_count());
}

Components connected_components(const CitationNetwork& network) {
  Components comps;
  comps.label.assign(network.node_count(), -1);
  for (std::size_t start = 0; start < network.node_count(); ++start) {
    if (comps.label[start] >= 0) continue;
    const int c = comps.count++;
    std::deque<int> queue{static_cast<int>(start)};
    comps.label[start] = c;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const auto& nb : network.neighbors(v)) {
        if (comps.label[nb.node] < 0) {
          comps.label[nb.node] = c;
          queue.push_back(nb.node);
        }
      }
    }
  }
  return comps;
}

void export_edge_list(const CitationNetwork& network, std::ostream& out) {
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    for (const auto& nb : network.neighbors(static_cast<int>(v))) {
      if (nb.node <= static_cast<int>(v)) continue;
      out << network.id(static_cast<int>(v)) << '\t' << network.id(nb.node);
      if (network.weighted()) out << '\t' << nb.weight;
      out << '\n';
    }
  }
}

void export_pajek(const CitationNetwork& network, std::ostream& out) {
  out << "*Vertices " << network.node_count() << '\n';
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    out << (v + 1) << " \"" << network.id(static_cast<int>(v)) << "\"\n";
  }
  out << "*Edges\n";
  for (std::size_t v = 0; v < network.node_count(); ++v) {
    for (const auto& nb : network.neighbors(static_cast<int>(v))) {
      if (nb.node <= static_cast<int>(v)) continue;
      out << (v + 1) << ' ' << (nb.node + 1) << ' ' << nb.weight << '\n';
    }
  }
}

}  // namespace scimap
