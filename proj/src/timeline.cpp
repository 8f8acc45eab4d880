#include "scimap/timeline.hpp"

#include <algorithm>

namespace scimap {

TimelineTable keyword_timelines(const std::vector<std::string>& keywords, const Corpus& corpus,
                                const TermSets& termsets) {
  if (termsets.terms.size() != corpus.size()) {
    throw InputError("term sets cover " + std::to_string(termsets.terms.size()) +
                     " papers but the corpus has " + std::to_string(corpus.size()));
  }
  TimelineTable table;
  const CorpusStats stats = corpus_stats(corpus);
  for (const auto& [year, count] : stats.papers_per_year) {
    table.years.push_back(year);
    table.papers_per_year.push_back(count);
  }
  table.keywords = keywords;
  table.frequency.assign(keywords.size(), std::vector<double>(table.years.size(), 0.0));

  std::vector<int> year_index;
  if (!table.years.empty()) {
    year_index.assign(table.years.back() - table.years.front() + 1, -1);
    for (std::size_t y = 0; y < table.years.size(); ++y) {
      year_index[table.years[y] - table.years.front()] = static_cast<int>(y);
    }
  }

  for (std::size_t k = 0; k < keywords.size(); ++k) {
    bool seen = false;
    for (std::size_t paper = 0; paper < corpus.size(); ++paper) {
      if (!termsets.paper_has(paper, keywords[k])) continue;
      seen = true;
      if (!corpus.paper(paper).year) continue;
      const int y = year_index[*corpus.paper(paper).year - table.years.front()];
      table.frequency[k][y] += 1.0;
    }
    for (std::size_t y = 0; y < table.years.size(); ++y) {
      table.frequency[k][y] /= static_cast<double>(table.papers_per_year[y]);
    }
    if (!seen) table.absent_keywords.push_back(keywords[k]);
  }
  return table;
}

TimelineTable truncate_sparse_years(const TimelineTable& table, int min_papers) {
  if (min_papers < 1) throw InputError("min_papers must be >= 1");
  std::size_t start = 0;
  while (start < table.years.size() && table.papers_per_year[start] < min_papers) ++start;

  TimelineTable out;
  out.keywords = table.keywords;
  out.absent_keywords = table.absent_keywords;
  out.years.assign(table.years.begin() + start, table.years.end());
  out.papers_per_year.assign(table.papers_per_year.begin() + start, table.papers_per_year.end());
  out.frequency.reserve(table.frequency.size());
  for (const auto& row : table.frequency) {
    out.frequency.emplace_back(row.begin() + start, row.end());
  }
  return out;
}

void export_timeline_csv(const TimelineTable& table, std::ostream& out) {
  out << "keyword,year,frequency,papers_in_year\n";
  for (std::size_t k = 0; k < table.keywords.size(); ++k) {
    for (std::size_t y = 0; y < table.years.size(); ++y) {
      out << table.keywords[k] << ',' << table.years[y] << ',' << table.frequency[k][y] << ','
          << table.papers_per_year[y] << '\n';
    }
  }
}

void export_papers_per_year_csv(const TimelineTable& table, std::ostream& out) {
  out << "year,papers\n";
  for (std::size_t y = 0; y < table.years.size(); ++y) {
    out << table.years[y] << ',' << table.papers_per_year[y] << '\n';
  }
}

}  // namespace scimap
