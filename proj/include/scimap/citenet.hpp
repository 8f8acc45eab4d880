#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "scimap/corpus.hpp"

namespace scimap {

// Undirected simple graph over corpus-internal papers. Nodes are indexed
// 0..n-1 in corpus order; adjacency lists are sorted by neighbor index.
// Immutable after construction.
class CitationNetwork {
 public:
  struct Neighbor {
    int node;
    double weight;
  };

  CitationNetwork() = default;
  CitationNetwork(std::vector<std::string> ids,
                  std::vector<std::vector<Neighbor>> adjacency, bool weighted,
                  int dangling_references);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  double total_weight() const { return total_weight_; }
  bool weighted() const { return weighted_; }
  int dangling_references() const { return dangling_references_; }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int node) const { return ids_[node]; }
  int index_of(const std::string& id) const;

  const std::vector<Neighbor>& neighbors(int node) const { return adjacency_[node]; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  double strength(int node) const { return strength_[node]; }

  std::vector<int> isolated_nodes() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> strength_;  // sum of incident edge weights
  std::size_t edge_count_ = 0;
  double total_weight_ = 0.0;
  bool weighted_ = false;
  int dangling_references_ = 0;
};

// Edge {i,j} iff i lists j in its references or vice versa, both corpus
// internal. References pointing outside the corpus are counted, not linked.
CitationNetwork build_citation_network(const Corpus& corpus);

// Edge {i,j} weighted by the number of distinct corpus papers citing both.
CitationNetwork build_cocitation_network(const Corpus& corpus);

// Breadth-first distances from source, ignoring edge weights.
// Unreachable nodes are marked -1. Throws InputError on unknown source.
std::vector<int> shortest_paths_from(const CitationNetwork& network, int source);
std::vector<int> shortest_paths_from(const CitationNetwork& network, const std::string& source_id);

double average_degree(const CitationNetwork& network);  // 2|E|/|V|

struct Components {
  std::vector<int> label;  // node -> component, dense 0..count-1
  int count = 0;
};

Components connected_components(const CitationNetwork& network);

// Tab-separated `id1 id2 [weight]`, one edge per line, endpoints ordered.
void export_edge_list(const CitationNetwork& network, std::ostream& out);
// Pajek .net graph description (1-based vertex ids), readable by common viewers.
void export_pajek(const CitationNetwork& network, std::ostream& out);

}  // namespace scimap
