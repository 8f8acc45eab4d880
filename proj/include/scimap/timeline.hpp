#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "scimap/corpus.hpp"
#include "scimap/salience.hpp"

namespace scimap {

// Per-year normalized keyword frequencies: for each year with at least one
// paper, the fraction of that year's papers whose term set holds the keyword.
struct TimelineTable {
  std::vector<int> years;            // ascending, only years with >= 1 paper
  std::vector<int> papers_per_year;  // aligned with years
  std::vector<std::string> keywords;
  std::vector<std::vector<double>> frequency;  // keyword x year
  std::vector<std::string> absent_keywords;    // all-zero rows, reported
};

TimelineTable keyword_timelines(const std::vector<std::string>& keywords, const Corpus& corpus,
                                const TermSets& termsets);

// Drops the leading years whose paper totals fall below min_papers. An
// empty result (every year sparse) is returned as such; callers warn.
TimelineTable truncate_sparse_years(const TimelineTable& table, int min_papers);

void export_timeline_csv(const TimelineTable& table, std::ostream& out);
void export_papers_per_year_csv(const TimelineTable& table, std::ostream& out);

}  // namespace scimap
