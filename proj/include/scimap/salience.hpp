#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scimap/communities.hpp"
#include "scimap/corpus.hpp"

namespace scimap {

struct TextDictionary {
  std::unordered_set<std::string> stopwords;
  std::unordered_map<std::string, std::string> lemmas;
};

// Stopword file: one word per line. Lemma table: `surface<TAB>lemma` lines.
TextDictionary load_dictionary(const std::string& stopwords_path, const std::string& lemmas_path);

struct Token {
  std::string lemma;
  int pos;  // index in the raw token stream, before stopword removal

  bool operator==(const Token&) const = default;
};

// Lowercases, splits on non-letter boundaries, drops stopwords, lemmatizes
// via the table with a rule-based fallback for regular plurals.
std::vector<Token> preprocess(const std::string& text, const TextDictionary& dict);

// Unigrams plus adjacent bigrams. A bigram is only formed from tokens that
// were adjacent in the raw text: stopword removal does not create new
// adjacencies. Result is sorted and duplicate-free.
std::vector<std::string> extract_terms(const std::vector<Token>& tokens);

// Token streams per paper, title + abstract with a gap between them so no
// bigram spans the boundary.
std::vector<std::vector<Token>> preprocess_corpus(const Corpus& corpus,
                                                  const TextDictionary& dict);

// Per-paper term sets, aligned with corpus order.
struct TermSets {
  std::vector<std::vector<std::string>> terms;  // sorted unique per paper

  bool paper_has(std::size_t paper, const std::string& term) const;
};

TermSets build_term_sets(const std::vector<std::vector<Token>>& token_streams);

// Document counts and community-relative frequencies for every term that
// occurs in at least one paper.
struct KeywordTable {
  std::vector<std::string> terms;  // lexicographically sorted
  int community_count = 0;
  std::vector<int> community_sizes;
  int total_papers = 0;
  std::vector<std::vector<int>> doc_counts;  // term -> per-community paper count
  std::vector<int> corpus_doc_count;         // term -> papers containing it
  std::vector<std::vector<double>> f_in;     // term x community
  std::vector<std::vector<double>> f_out;

  int term_index(const std::string& term) const;  // -1 when absent
};

// f_in = n_c(w)/|c|; f_out = sum over other communities of n_g(w)/(N-|c|).
// Throws InputError when a community spans the whole network, which leaves
// the out-community frequency undefined.
KeywordTable community_frequencies(const TermSets& termsets, const CommunityPartition& partition);

struct RankedKeyword {
  std::string term;
  double importance;  // max over communities of f_in - f_out
  int community;      // argmax community, smallest label on ties
  double f_in;        // at the argmax community
  double f_out;
};

// Sorted by importance descending, ties broken lexicographically by term.
std::vector<RankedKeyword> importance_index(const KeywordTable& table);

// Walks the ranking collecting k keywords while enforcing the
// bigram-subsumption rule: a unigram is skipped when it is a component word
// of any bigram in the reference region (top 200 of the ranking) and a
// selected bigram evicts previously selected component unigrams, so the
// output never contains a unigram that is part of a bigram in the output.
// When fewer than k are eligible, returns all and sets *short_of_k.
std::vector<RankedKeyword> select_keywords(const std::vector<RankedKeyword>& ranked, int k = 50,
                                           bool* short_of_k = nullptr);

// Top keywords per community by (f_in - f_out) for that community, after
// the same subsumption filtering. Empty term list when a community has none.
std::vector<std::vector<std::string>> label_communities(const KeywordTable& table, int top_m = 3);

// Drops keywords contained in strictly more than coverage_threshold * N papers.
std::vector<std::string> filter_generic_keywords(const std::vector<std::string>& keywords,
                                                 const TermSets& termsets,
                                                 double coverage_threshold = 0.5);

// Expert keyword workflow: phrases are preprocessed with the same pipeline
// and matched as consecutive token subsequences against each paper's stream.
std::vector<std::string> load_keyword_phrases(const std::string& path, const TextDictionary& dict);
std::string normalize_phrase(const std::string& phrase, const TextDictionary& dict);
void augment_with_phrases(TermSets& termsets,
                          const std::vector<std::vector<Token>>& token_streams,
                          const std::vector<std::string>& phrases);

void export_keywords_csv(const std::vector<RankedKeyword>& keywords, std::ostream& out);

}  // namespace scimap
