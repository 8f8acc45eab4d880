#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scimap/citenet.hpp"
#include "scimap/salience.hpp"

namespace scimap {

// BFS distance rows for a chosen set of source papers.
class PaperDistances {
 public:
  PaperDistances(const CitationNetwork& network, const std::vector<int>& sources);

  // -1 when j is unreachable from i; i must be one of the sources.
  int distance(int i, int j) const;

 private:
  std::vector<int> row_of_;  // node -> row index, -1 when not a source
  std::vector<std::vector<int>> rows_;
};

struct PairAverage {
  double mean = 0.0;
  long long pairs = 0;  // reachable ordered pairs counted
  bool defined = false;
};

// Average topological distance between two keywords: mean of the paper
// shortest-path lengths over ordered pairs (i, j) with u in paper i and v in
// paper j, excluding i == j and unreachable pairs.
PairAverage keyword_distance(const std::vector<int>& papers_u, const std::vector<int>& papers_v,
                             const PaperDistances& dist);

struct KeywordDistanceMatrix {
  std::vector<std::string> keywords;  // sorted
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<long long>> pairs;
  std::vector<std::vector<bool>> defined;

  std::size_t size() const { return keywords.size(); }
};

// Computes all pairwise keyword distances over the network. Throws
// InputError when a keyword occurs in no paper.
KeywordDistanceMatrix keyword_distances(const std::vector<std::string>& keywords,
                                        const TermSets& termsets,
                                        const CitationNetwork& network);

// Replaces undefined entries by (max defined distance + 1) so clustering can
// proceed; returns the number of substituted pairs and the value used.
struct UndefinedResolution {
  int substituted_pairs = 0;
  double substitute_value = 0.0;
};
UndefinedResolution resolve_undefined(KeywordDistanceMatrix& matrix);

struct Dendrogram {
  struct Node {
    int left = -1, right = -1;  // children, -1 for leaves
    int leaf = -1;              // leaf index, -1 for internal nodes
    double height = 0.0;        // merge height, 0 for leaves
    int size = 1;               // leaves under this node
  };
  std::vector<std::string> leaves;  // sorted keyword names; node i < L is leaf i
  std::vector<Node> nodes;          // merges appended in merge order

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int leaf_count() const { return static_cast<int>(leaves.size()); }
};

// Agglomerative clustering with average linkage. Ties in the minimum
// distance are broken towards the merge with the lexicographically smallest
// combined leaf set. Requires >= 2 keywords and a fully defined matrix.
Dendrogram build_dendrogram(const KeywordDistanceMatrix& matrix);

// Merge heights should never decrease along the merge order under average
// linkage; any violations are returned for reporting, never clamped.
int monotonicity_violations(const Dendrogram& dendrogram);

// Groups are the maximal subtrees whose internal merge heights all lie below
// the threshold; every keyword lands in exactly one group.
std::vector<std::vector<std::string>> cut_dendrogram(const Dendrogram& dendrogram,
                                                     double threshold);

struct GroupAssignment {
  std::vector<int> group;                // paper -> group index, -1 unassigned
  std::vector<std::vector<int>> counts;  // paper -> per-group keyword matches
};

// Papers go to the group holding the most of their keywords; ties and zero
// matches stay unassigned.
GroupAssignment assign_papers_to_groups(const std::vector<std::vector<std::string>>& groups,
                                        const TermSets& termsets);

void export_newick(const Dendrogram& dendrogram, std::ostream& out);
void export_dendrogram_json(const Dendrogram& dendrogram, std::ostream& out);
void export_distance_csv(const KeywordDistanceMatrix& matrix, std::ostream& out);

}  // namespace scimap
