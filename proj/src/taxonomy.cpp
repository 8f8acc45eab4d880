#include "scimap/taxonomy.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace scimap {

PaperDistances::PaperDistances(const CitationNetwork& network, const std::vector<int>& sources) {
  row_of_.assign(network.node_count(), -1);
  rows_.reserve(sources.size());
  for (int s : sources) {
    if (row_of_[s] >= 0) continue;
    row_of_[s] = static_cast<int>(rows_.size());
    rows_.push_back(shortest_paths_from(network, s));
  }
}

int PaperDistances::distance(int i, int j) const {
  const int row = row_of_[i];
  if (row < 0) throw InputError("paper " + std::to_string(i) + " is not a distance source");
  return rows_[row][j];
}

PairAverage keyword_distance(const std::vector<int>& papers_u, const std::vector<int>& papers_v,
                             const PaperDistances& dist) {
  PairAverage avg;
  double sum = 0.0;
  for (int i : papers_u) {
    for (int j : papers_v) {
      if (i == j) continue;
      const int d = dist.distance(i, j);
      if (d < 0) continue;  // unreachable pairs are excluded from the average
      sum += static_cast<double>(d);
      avg.pairs++;
    }
  }
  if (avg.pairs > 0) {
    avg.mean = sum / static_cast<double>(avg.pairs);
    avg.defined = true;
  }
  return avg;
}

KeywordDistanceMatrix keyword_distances(const std::vector<std::string>& keywords,
                                        const TermSets& termsets,
                                        const CitationNetwork& network) {
  KeywordDistanceMatrix matrix;
  matrix.keywords = keywords;
  std::sort(matrix.keywords.begin(), matrix.keywords.end());
  matrix.keywords.erase(std::unique(matrix.keywords.begin(), matrix.keywords.end()),
                        matrix.keywords.end());
  const std::size_t n = matrix.keywords.size();

  std::vector<std::vector<int>> papers_of(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t paper = 0; paper < termsets.terms.size(); ++paper) {
      if (termsets.paper_has(paper, matrix.keywords[k])) {
        papers_of[k].push_back(static_cast<int>(paper));
      }
    }
    if (papers_of[k].empty()) {
      throw InputError("keyword '" + matrix.keywords[k] + "' occurs in no paper");
    }
  }

  std::vector<int> sources;
  for (const auto& papers : papers_of) {
    sources.insert(sources.end(), papers.begin(), papers.end());
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  const PaperDistances dist(network, sources);

  matrix.mean.assign(n, std::vector<double>(n, 0.0));
  matrix.pairs.assign(n, std::vector<long long>(n, 0));
  matrix.defined.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    matrix.defined[a][a] = true;
    for (std::size_t b = a + 1; b < n; ++b) {
      const PairAverage avg = keyword_distance(papers_of[a], papers_of[b], dist);
      matrix.mean[a][b] = matrix.mean[b][a] = avg.mean;
      matrix.pairs[a][b] = matrix.pairs[b][a] = avg.pairs;
      matrix.defined[a][b] = matrix.defined[b][a] = avg.defined;
    }
  }
  return matrix;
}

UndefinedResolution resolve_undefined(KeywordDistanceMatrix& matrix) {
  UndefinedResolution res;
  double max_defined = 0.0;
  for (std::size_t a = 0; a < matrix.size(); ++a) {
    for (std::size_t b = a + 1; b < matrix.size(); ++b) {
      if (matrix.defined[a][b]) max_defined = std::max(max_defined, matrix.mean[a][b]);
    }
  }
  res.substitute_value = max_defined + 1.0;
  for (std::size_t a = 0; a < matrix.size(); ++a) {
    for (std::size_t b = a + 1; b < matrix.size(); ++b) {
      if (!matrix.defined[a][b]) {
        matrix.mean[a][b] = matrix.mean[b][a] = res.substitute_value;
        matrix.defined[a][b] = matrix.defined[b][a] = true;
        res.substituted_pairs++;
      }
    }
  }
  return res;
}

Dendrogram build_dendrogram(const KeywordDistanceMatrix& matrix) {
  const int n = static_cast<int>(matrix.size());
  if (n < 2) throw InputError("dendrogram needs at least 2 keywords, got " + std::to_string(n));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!matrix.defined[a][b]) {
        throw InputError("distance between '" + matrix.keywords[a] + "' and '" +
                         matrix.keywords[b] + "' is undefined; resolve before clustering");
      }
    }
  }

  Dendrogram dend;
  dend.leaves = matrix.keywords;
  dend.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    dend.nodes[i].leaf = i;
  }

  struct Cluster {
    int node;
    std::vector<std::string> leaf_names;  // sorted, for tie-breaking
  };
  std::vector<Cluster> active;
  active.reserve(n);
  for (int i = 0; i < n; ++i) active.push_back({i, {matrix.keywords[i]}});

  // working distances between active clusters, Lance-Williams average linkage
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) d[a][b] = matrix.mean[a][b];
  }

  auto merged_names = [](const Cluster& x, const Cluster& y) {
    std::vector<std::string> names;
    names.reserve(x.leaf_names.size() + y.leaf_names.size());
    std::merge(x.leaf_names.begin(), x.leaf_names.end(), y.leaf_names.begin(), y.leaf_names.end(),
               std::back_inserter(names));
    return names;
  };

  while (active.size() > 1) {
    int best_a = -1, best_b = -1;
    double best_d = 0.0;
    std::vector<std::string> best_names;
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double dd = d[a][b];
        if (best_a < 0 || dd < best_d) {
          best_a = static_cast<int>(a);
          best_b = static_cast<int>(b);
          best_d = dd;
          best_names = merged_names(active[a], active[b]);
        } else if (dd == best_d) {
          auto names = merged_names(active[a], active[b]);
          if (names < best_names) {
            best_a = static_cast<int>(a);
            best_b = static_cast<int>(b);
            best_names = std::move(names);
          }
        }
      }
    }

    Dendrogram::Node node;
    node.left = active[best_a].node;
    node.right = active[best_b].node;
    node.height = best_d;
    node.size = dend.nodes[node.left].size + dend.nodes[node.right].size;
    const int new_node = static_cast<int>(dend.nodes.size());
    dend.nodes.push_back(node);

    const double size_a = static_cast<double>(dend.nodes[active[best_a].node].size);
    const double size_b = static_cast<double>(dend.nodes[active[best_b].node].size);
    std::vector<double> new_row(active.size(), 0.0);
    for (std::size_t c = 0; c < active.size(); ++c) {
      if (static_cast<int>(c) == best_a || static_cast<int>(c) == best_b) continue;
      new_row[c] = (size_a * d[best_a][c] + size_b * d[best_b][c]) / (size_a + size_b);
    }

    // replace cluster best_a with the merge, drop best_b
    active[best_a].node = new_node;
    active[best_a].leaf_names = std::move(best_names);
    for (std::size_t c = 0; c < active.size(); ++c) {
      d[best_a][c] = d[c][best_a] = new_row[c];
    }
    d[best_a][best_a] = 0.0;
    const std::size_t last = active.size() - 1;
    if (static_cast<std::size_t>(best_b) != last) {
      active[best_b] = std::move(active[last]);
      for (std::size_t c = 0; c < active.size(); ++c) {
        d[best_b][c] = d[last][c];
        d[c][best_b] = d[c][last];
      }
      d[best_b][best_b] = 0.0;
    }
    active.pop_back();
  }
  return dend;
}

int monotonicity_violations(const Dendrogram& dendrogram) {
  int violations = 0;
  double prev = 0.0;
  for (std::size_t i = dendrogram.leaves.size(); i < dendrogram.nodes.size(); ++i) {
    if (dendrogram.nodes[i].height < prev) violations++;
    prev = dendrogram.nodes[i].height;
  }
  return violations;
}

namespace {

void collect_leaves(const Dendrogram& dend, int node, std::vector<std::string>& out) {
  const auto& nd = dend.nodes[node];
  if (nd.leaf >= 0) {
    out.push_back(dend.leaves[nd.leaf]);
    return;
  }
  collect_leaves(dend, nd.left, out);
  collect_leaves(dend, nd.right, out);
}

void cut_recurse(const Dendrogram& dend, int node, double threshold,
                 std::vector<std::vector<std::string>>& groups) {
  const auto& nd = dend.nodes[node];
  if (nd.leaf >= 0 || nd.height < threshold) {
    std::vector<std::string> group;
    collect_leaves(dend, node, group);
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
    return;
  }
  cut_recurse(dend, nd.left, threshold, groups);
  cut_recurse(dend, nd.right, threshold, groups);
}

}  // namespace

std::vector<std::vector<std::string>> cut_dendrogram(const Dendrogram& dendrogram,
                                                     double threshold) {
  std::vector<std::vector<std::string>> groups;
  cut_recurse(dendrogram, dendrogram.root(), threshold, groups);
  return groups;
}

GroupAssignment assign_papers_to_groups(const std::vector<std::vector<std::string>>& groups,
                                        const TermSets& termsets) {
  GroupAssignment out;
  const std::size_t papers = termsets.terms.size();
  out.group.assign(papers, -1);
  out.counts.assign(papers, std::vector<int>(groups.size(), 0));
  for (std::size_t paper = 0; paper < papers; ++paper) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (const auto& kw : groups[g]) {
        if (termsets.paper_has(paper, kw)) out.counts[paper][g]++;
      }
    }
    int best = -1, best_count = 0;
    bool tie = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (out.counts[paper][g] > best_count) {
        best = static_cast<int>(g);
        best_count = out.counts[paper][g];
        tie = false;
      } else if (out.counts[paper][g] == best_count && best_count > 0) {
        tie = true;
      }
    }
    out.group[paper] = (tie || best_count == 0) ? -1 : best;
  }
  return out;
}

namespace {

std::string newick_name(const std::string& name) {
  bool needs_quote = false;
  for (char c : name) {
    if (c == ' ' || c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '\'') {
      needs_quote = true;
      break;
    }
  }
  if (!needs_quote) return name;
  std::string quoted = "'";
  for (char c : name) {
    if (c == '\'') quoted += "''";
    else quoted.push_back(c);
  }
  quoted += "'";
  return quoted;
}

void newick_recurse(const Dendrogram& dend, int node, double parent_height, std::ostream& out) {
  const auto& nd = dend.nodes[node];
  if (nd.leaf >= 0) {
    out << newick_name(dend.leaves[nd.leaf]) << ':' << (parent_height - 0.0);
    return;
  }
  out << '(';
  newick_recurse(dend, nd.left, nd.height, out);
  out << ',';
  newick_recurse(dend, nd.right, nd.height, out);
  out << "):" << (parent_height - nd.height);
}

nlohmann::ordered_json json_recurse(const Dendrogram& dend, int node) {
  const auto& nd = dend.nodes[node];
  nlohmann::ordered_json j;
  if (nd.leaf >= 0) {
    j["name"] = dend.leaves[nd.leaf];
    return j;
  }
  j["height"] = nd.height;
  j["size"] = nd.size;
  j["children"] = nlohmann::ordered_json::array();
  j["children"].push_back(json_recurse(dend, nd.left));
  j["children"].push_back(json_recurse(dend, nd.right));
  return j;
}

}  // namespace

void export_newick(const Dendrogram& dendrogram, std::ostream& out) {
  const int root = dendrogram.root();
  const auto& nd = dendrogram.nodes[root];
  if (nd.leaf >= 0) {
    out << newick_name(dendrogram.leaves[nd.leaf]) << ";\n";
    return;
  }
  out << '(';
  newick_recurse(dendrogram, nd.left, nd.height, out);
  out << ',';
  newick_recurse(dendrogram, nd.right, nd.height, out);
  out << ");\n";
}

void export_dendrogram_json(const Dendrogram& dendrogram, std::ostream& out) {
  out << json_recurse(dendrogram, dendrogram.root()).dump(2) << '\n';
}

void export_distance_csv(const KeywordDistanceMatrix& matrix, std::ostream& out) {
  out << "keyword_a,keyword_b,mean_distance,pairs\n";
  for (std::size_t a = 0; a < matrix.size(); ++a) {
    for (std::size_t b = a + 1; b < matrix.size(); ++b) {
      out << matrix.keywords[a] << ',' << matrix.keywords[b] << ',';
      if (matrix.defined[a][b]) {
        out << matrix.mean[a][b];
      } else {
        out << "undefined";
      }
      out << ',' << matrix.pairs[a][b] << '\n';
    }
  }
}

}  // namespace scimap
