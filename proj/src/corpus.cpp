#include "scimap/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace scimap {

using nlohmann::json;

Corpus::Corpus(std::vector<Paper> papers) : papers_(std::move(papers)) {
  index_.reserve(papers_.size());
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    auto [it, inserted] = index_.emplace(papers_[i].id, static_cast<int>(i));
    (void)it;
    if (!inserted) {
      throw InputError("duplicate paper id '" + papers_[i].id + "'");
    }
  }
}

int Corpus::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

Paper record_from_json(const json& rec, int line_no, ParseReport& report) {
  if (!rec.is_object()) {
    throw InputError("line " + std::to_string(line_no) + ": record is not an object");
  }
  Paper p;
  auto id_it = rec.find("id");
  if (id_it == rec.end() || !id_it->is_string() || id_it->get<std::string>().empty()) {
    throw InputError("line " + std::to_string(line_no) + ": missing or empty 'id'");
  }
  p.id = id_it->get<std::string>();

  if (auto it = rec.find("title"); it != rec.end() && !it->is_null()) {
    if (!it->is_string())
      throw InputError("line " + std::to_string(line_no) + ": 'title' must be a string");
    p.title = it->get<std::string>();
  }
  if (auto it = rec.find("abstract"); it != rec.end() && !it->is_null()) {
    if (!it->is_string())
      throw InputError("line " + std::to_string(line_no) + ": 'abstract' must be a string");
    p.abstract = it->get<std::string>();
  }
  if (p.abstract.empty()) report.empty_abstracts++;

  if (auto it = rec.find("year"); it != rec.end() && !it->is_null()) {
    if (!it->is_number_integer())
      throw InputError("line " + std::to_string(line_no) + ": 'year' must be an integer or null");
    const int y = it->get<int>();
    if (y < 1800 || y > 2100)
      throw InputError("line " + std::to_string(line_no) + ": year " + std::to_string(y) +
                       " outside [1800, 2100]");
    p.year = y;
  }
  if (auto it = rec.find("citation_count"); it != rec.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 0)
      throw InputError("line " + std::to_string(line_no) +
                       ": 'citation_count' must be a non-negative integer");
    p.citation_count = it->get<int>();
  }
  if (auto it = rec.find("references"); it != rec.end() && !it->is_null()) {
    if (!it->is_array())
      throw InputError("line " + std::to_string(line_no) + ": 'references' must be an array");
    std::unordered_set<std::string> seen;
    for (const auto& r : *it) {
      if (!r.is_string())
        throw InputError("line " + std::to_string(line_no) + ": reference ids must be strings");
      std::string ref = r.get<std::string>();
      if (ref == p.id) {
        report.self_references_dropped++;
        continue;
      }
      if (!seen.insert(ref).second) {
        report.duplicate_references_dropped++;
        continue;
      }
      p.references.push_back(std::move(ref));
    }
  }
  return p;
}

}  // namespace

ParseReport parse_records(std::istream& in) {
  ParseReport report;
  std::vector<Paper> papers;
  std::unordered_map<std::string, int> first_line;  // id -> line where first seen
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error&) {
      throw InputError("line " + std::to_string(line_no) + ": malformed record");
    }
    Paper p = record_from_json(rec, line_no, report);
    auto [it, inserted] = first_line.emplace(p.id, line_no);
    if (!inserted) {
      throw InputError("duplicate paper id '" + p.id + "' at line " + std::to_string(line_no) +
                       " (first seen at line " + std::to_string(it->second) + ")");
    }
    papers.push_back(std::move(p));
  }
  report.corpus = Corpus(std::move(papers));
  return report;
}

ParseReport parse_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  return parse_records(in);
}

void serialize(const Corpus& corpus, std::ostream& out) {
  for (const Paper& p : corpus.papers()) {
    nlohmann::ordered_json rec;
    rec["id"] = p.id;
    rec["title"] = p.title;
    rec["abstract"] = p.abstract;
    if (p.year) {
      rec["year"] = *p.year;
    } else {
      rec["year"] = nullptr;
    }
    rec["citation_count"] = p.citation_count;
    rec["references"] = p.references;
    out << rec.dump() << '\n';
  }
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.paper_count = corpus.size();
  for (const Paper& p : corpus.papers()) {
    if (!p.year) {
      stats.papers_without_year++;
      continue;
    }
    stats.papers_per_year[*p.year]++;
    if (!stats.min_year || *p.year < *stats.min_year) stats.min_year = *p.year;
    if (!stats.max_year || *p.year > *stats.max_year) stats.max_year = *p.year;
  }
  return stats;
}

}  // namespace scimap
