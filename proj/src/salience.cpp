#include "scimap/salience.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace scimap {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Regular plural fallback for words not in the lemma table.
std::string rule_lemma(const std::string& w) {
  if (ends_with(w, "ies") && w.size() >= 5) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (ends_with(w, "es") && w.size() >= 4) {
    const std::string stem = w.substr(0, w.size() - 2);
    if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
        ends_with(stem, "ch") || ends_with(stem, "sh")) {
      return stem;
    }
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() >= 3) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

bool is_unigram(const std::string& term) {
  return term.find(' ') == std::string::npos;
}

std::vector<std::string> component_words(const std::string& term) {
  std::vector<std::string> words;
  std::istringstream in(term);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

// The walk behind select_keywords and label_communities: collects up to k
// terms from a ranking while keeping the output free of unigrams that are
// components of bigrams in the output or in the top-200 reference region.
std::vector<std::string> select_from_ranking(const std::vector<std::string>& ranked, int k,
                                             bool* short_of_k) {
  std::unordered_set<std::string> blocked;
  const std::size_t reference = std::min<std::size_t>(ranked.size(), 200);
  for (std::size_t i = 0; i < reference; ++i) {
    if (is_unigram(ranked[i])) continue;
    for (const auto& w : component_words(ranked[i])) blocked.insert(w);
  }

  std::vector<std::string> selected;
  for (const auto& term : ranked) {
    if (static_cast<int>(selected.size()) >= k) break;
    if (is_unigram(term)) {
      if (blocked.count(term)) continue;
      selected.push_back(term);
    } else {
      for (const auto& w : component_words(term)) {
        if (blocked.insert(w).second) {
          std::erase(selected, w);
        }
      }
      selected.push_back(term);
    }
  }
  if (short_of_k) *short_of_k = static_cast<int>(selected.size()) < k;
  return selected;
}

}  // namespace

TextDictionary load_dictionary(const std::string& stopwords_path, const std::string& lemmas_path) {
  TextDictionary dict;
  if (!stopwords_path.empty()) {
    std::ifstream in(stopwords_path);
    if (!in) throw InputError("cannot open stopword file '" + stopwords_path + "'");
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) dict.stopwords.insert(line);
    }
  }
  if (!lemmas_path.empty()) {
    std::ifstream in(lemmas_path);
    if (!in) throw InputError("cannot open lemma table '" + lemmas_path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      while (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw InputError("lemma table '" + lemmas_path + "' line " + std::to_string(line_no) +
                         ": expected surface<TAB>lemma");
      }
      dict.lemmas[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }
  return dict;
}

std::vector<Token> preprocess(const std::string& text, const TextDictionary& dict) {
  std::vector<Token> tokens;
  std::string word;
  int raw_pos = 0;
  auto flush = [&]() {
    if (word.empty()) return;
    const int pos = raw_pos++;
    if (!dict.stopwords.count(word)) {
      auto it = dict.lemmas.find(word);
      tokens.push_back({it != dict.lemmas.end() ? it->second : rule_lemma(word), pos});
    }
    word.clear();
  };
  for (unsigned char c : text) {
    if (c >= 'A' && c <= 'Z') {
      word.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (c >= 'a' && c <= 'z') {
      word.push_back(static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> extract_terms(const std::vector<Token>& tokens) {
  std::vector<std::string> terms;
  terms.reserve(tokens.size() * 2);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    terms.push_back(tokens[i].lemma);
    if (i + 1 < tokens.size() && tokens[i + 1].pos == tokens[i].pos + 1) {
      terms.push_back(tokens[i].lemma + " " + tokens[i + 1].lemma);
    }
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

std::vector<std::vector<Token>> preprocess_corpus(const Corpus& corpus,
                                                  const TextDictionary& dict) {
  std::vector<std::vector<Token>> streams;
  streams.reserve(corpus.size());
  for (const Paper& p : corpus.papers()) {
    std::vector<Token> stream = preprocess(p.title, dict);
    std::vector<Token> abstract = preprocess(p.abstract, dict);
    // offset so the last title token and the first abstract token are never
    // adjacent
    int offset = 2;
    if (!stream.empty()) offset += stream.back().pos;
    for (Token& t : abstract) {
      t.pos += offset;
      stream.push_back(std::move(t));
    }
    streams.push_back(std::move(stream));
  }
  return streams;
}

bool TermSets::paper_has(std::size_t paper, const std::string& term) const {
  const auto& t = terms[paper];
  return std::binary_search(t.begin(), t.end(), term);
}

TermSets build_term_sets(const std::vector<std::vector<Token>>& token_streams) {
  TermSets sets;
  sets.terms.reserve(token_streams.size());
  for (const auto& stream : token_streams) {
    sets.terms.push_back(extract_terms(stream));
  }
  return sets;
}

int KeywordTable::term_index(const std::string& term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) return -1;
  return static_cast<int>(it - terms.begin());
}

KeywordTable community_frequencies(const TermSets& termsets, const CommunityPartition& partition) {
  if (termsets.terms.size() != partition.assignment.size()) {
    throw InputError("partition covers " + std::to_string(partition.assignment.size()) +
                     " papers but term sets cover " + std::to_string(termsets.terms.size()));
  }
  KeywordTable table;
  table.community_count = partition.count();
  table.community_sizes = partition.sizes;
  table.total_papers = static_cast<int>(termsets.terms.size());
  for (int c = 0; c < table.community_count; ++c) {
    if (table.community_sizes[c] == table.total_papers) {
      throw InputError("community " + std::to_string(c) + " covers all " +
                       std::to_string(table.total_papers) +
                       " papers; out-community frequency is undefined for a "
                       "single-community partition");
    }
  }

  for (const auto& terms : termsets.terms) {
    table.terms.insert(table.terms.end(), terms.begin(), terms.end());
  }
  std::sort(table.terms.begin(), table.terms.end());
  table.terms.erase(std::unique(table.terms.begin(), table.terms.end()), table.terms.end());

  const std::size_t vocab = table.terms.size();
  table.doc_counts.assign(vocab, std::vector<int>(table.community_count, 0));
  table.corpus_doc_count.assign(vocab, 0);
  for (std::size_t paper = 0; paper < termsets.terms.size(); ++paper) {
    const int c = partition.assignment[paper];
    for (const auto& term : termsets.terms[paper]) {
      const int t = table.term_index(term);
      table.doc_counts[t][c]++;
      table.corpus_doc_count[t]++;
    }
  }

  table.f_in.assign(vocab, std::vector<double>(table.community_count, 0.0));
  table.f_out.assign(vocab, std::vector<double>(table.community_count, 0.0));
  for (std::size_t t = 0; t < vocab; ++t) {
    for (int c = 0; c < table.community_count; ++c) {
      table.f_in[t][c] =
          static_cast<double>(table.doc_counts[t][c]) / static_cast<double>(table.community_sizes[c]);
      const double denom = static_cast<double>(table.total_papers - table.community_sizes[c]);
      double out = 0.0;
      for (int g = 0; g < table.community_count; ++g) {
        if (g == c) continue;
        out += static_cast<double>(table.doc_counts[t][g]) / denom;
      }
      table.f_out[t][c] = out;
    }
  }
  return table;
}

std::vector<RankedKeyword> importance_index(const KeywordTable& table) {
  std::vector<RankedKeyword> ranked;
  ranked.reserve(table.terms.size());
  for (std::size_t t = 0; t < table.terms.size(); ++t) {
    int best_c = 0;
    double best = table.f_in[t][0] - table.f_out[t][0];
    for (int c = 1; c < table.community_count; ++c) {
      const double diff = table.f_in[t][c] - table.f_out[t][c];
      if (diff > best) {
        best = diff;
        best_c = c;
      }
    }
    ranked.push_back({table.terms[t], best, best_c, table.f_in[t][best_c], table.f_out[t][best_c]});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedKeyword& a, const RankedKeyword& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.term < b.term;
  });
  return ranked;
}

std::vector<RankedKeyword> select_keywords(const std::vector<RankedKeyword>& ranked, int k,
                                           bool* short_of_k) {
  std::vector<std::string> terms;
  terms.reserve(ranked.size());
  for (const auto& r : ranked) terms.push_back(r.term);
  const std::vector<std::string> chosen = select_from_ranking(terms, k, short_of_k);

  std::unordered_set<std::string> keep(chosen.begin(), chosen.end());
  std::vector<RankedKeyword> out;
  out.reserve(chosen.size());
  for (const auto& r : ranked) {
    if (keep.count(r.term)) out.push_back(r);
  }
  return out;
}

std::vector<std::vector<std::string>> label_communities(const KeywordTable& table, int top_m) {
  std::vector<std::vector<std::string>> labels(table.community_count);
  for (int c = 0; c < table.community_count; ++c) {
    std::vector<std::size_t> order;
    for (std::size_t t = 0; t < table.terms.size(); ++t) {
      if (table.doc_counts[t][c] > 0) order.push_back(t);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = table.f_in[a][c] - table.f_out[a][c];
      const double db = table.f_in[b][c] - table.f_out[b][c];
      if (da != db) return da > db;
      return table.terms[a] < table.terms[b];
    });
    std::vector<std::string> ranked;
    ranked.reserve(order.size());
    for (std::size_t t : order) ranked.push_back(table.terms[t]);
    labels[c] = select_from_ranking(ranked, top_m, nullptr);
  }
  return labels;
}

std::vector<std::string> filter_generic_keywords(const std::vector<std::string>& keywords,
                                                 const TermSets& termsets,
                                                 double coverage_threshold) {
  const double limit = coverage_threshold * static_cast<double>(termsets.terms.size());
  std::vector<std::string> kept;
  for (const auto& kw : keywords) {
    int df = 0;
    for (std::size_t paper = 0; paper < termsets.terms.size(); ++paper) {
      if (termsets.paper_has(paper, kw)) df++;
    }
    if (static_cast<double>(df) > limit) continue;
    kept.push_back(kw);
  }
  return kept;
}

std::string normalize_phrase(const std::string& phrase, const TextDictionary& dict) {
  const std::vector<Token> tokens = preprocess(phrase, dict);
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.lemma;
  }
  return out;
}

std::vector<std::string> load_keyword_phrases(const std::string& path,
                                              const TextDictionary& dict) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open keywords file '" + path + "'");
  std::vector<std::string> phrases;
  std::string line;
  while (std::getline(in, line)) {
    const std::string normalized = normalize_phrase(line, dict);
    if (normalized.empty()) continue;
    if (std::find(phrases.begin(), phrases.end(), normalized) == phrases.end()) {
      phrases.push_back(normalized);
    }
  }
  return phrases;
}

void augment_with_phrases(TermSets& termsets,
                          const std::vector<std::vector<Token>>& token_streams,
                          const std::vector<std::string>& phrases) {
  for (std::size_t paper = 0; paper < token_streams.size(); ++paper) {
    const auto& stream = token_streams[paper];
    for (const auto& phrase : phrases) {
      const std::vector<std::string> words = component_words(phrase);
      if (words.empty() || words.size() > stream.size()) continue;
      bool found = false;
      for (std::size_t start = 0; start + words.size() <= stream.size() && !found; ++start) {
        bool match = true;
        for (std::size_t w = 0; w < words.size(); ++w) {
          if (stream[start + w].lemma != words[w]) {
            match = false;
            break;
          }
        }
        found = match;
      }
      if (found) {
        auto& terms = termsets.terms[paper];
        auto it = std::lower_bound(terms.begin(), terms.end(), phrase);
        if (it == terms.end() || *it != phrase) terms.insert(it, phrase);
      }
    }
  }
}

void export_keywords_csv(const std::vector<RankedKeyword>& keywords, std::ostream& out) {
  out << "term,I,community,F_in,F_out\n";
  for (const auto& kw : keywords) {
    out << kw.term << ',' << kw.importance << ',' << kw.community << ',' << kw.f_in << ','
        << kw.f_out << '\n';
  }
}

}  // namespace scimap
