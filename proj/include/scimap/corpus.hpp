#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "scimap/errors.hpp"

namespace scimap {

struct Paper {
  std::string id;
  std::string title;
  std::string abstract;
  std::optional<int> year;
  int citation_count = 0;
  std::vector<std::string> references;  // deduplicated, never contains id

  bool operator==(const Paper&) const = default;
};

// Immutable after construction; safe to share across parallel readers.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Paper> papers);

  std::size_t size() const { return papers_.size(); }
  bool empty() const { return papers_.empty(); }
  const std::vector<Paper>& papers() const { return papers_; }
  const Paper& paper(std::size_t index) const { return papers_[index]; }

  // -1 when the id is not in the corpus.
  int index_of(const std::string& id) const;
  bool contains(const std::string& id) const { return index_of(id) >= 0; }

 private:
  std::vector<Paper> papers_;
  std::unordered_map<std::string, int> index_;
};

struct ParseReport {
  Corpus corpus;
  int self_references_dropped = 0;
  int duplicate_references_dropped = 0;
  int empty_abstracts = 0;
};

// Input is UTF-8, one JSON record per line with fields id, title, abstract,
// year (integer or null), citation_count, references. Blank lines are
// skipped. Throws InputError naming the offending line on malformed records,
// missing ids or duplicate ids.
ParseReport parse_records(std::istream& in);
ParseReport parse_records_file(const std::string& path);

void serialize(const Corpus& corpus, std::ostream& out);

struct CorpusStats {
  std::size_t paper_count = 0;
  std::optional<int> min_year;
  std::optional<int> max_year;
  std::map<int, int> papers_per_year;  // keys are exactly the years present
  std::size_t papers_without_year = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace scimap
