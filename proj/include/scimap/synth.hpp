#pragma once

#include <cstdint>

#include "scimap/corpus.hpp"

namespace scimap {

// Fixture generator: planted topics with disjoint vocabularies and seeded
// citation probabilities. Paper i belongs to topic i / papers_per_topic.
struct SyntheticCorpusSpec {
  int topics = 5;
  int papers_per_topic = 400;
  double p_intra = 0.02;   // citation probability within a topic
  double p_inter = 0.001;  // citation probability across topics
  int vocab_per_topic = 30;
  int shared_vocab = 20;
  int words_per_abstract = 12;
  int year_min = 1998;
  int year_max = 2015;
  std::uint64_t seed = 0;
};

Corpus generate_synthetic_corpus(const SyntheticCorpusSpec& spec);

}  // namespace scimap
