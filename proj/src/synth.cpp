#include "scimap/synth.hpp"

#include <random>
#include <string>
#include <vector>

namespace scimap {

namespace {

// Injective letters-only encoding; words end in a vowel so the plural
// fallback of the preprocessor leaves them untouched.
std::string codeword(unsigned long long x) {
  static const char consonants[] = "bdfgklmnprstvz";
  static const char vowels[] = "aeiou";
  std::string word;
  do {
    word.push_back(consonants[x % 14]);
    word.push_back(vowels[(x / 14) % 5]);
    x /= 70;
  } while (x > 0);
  return word;
}

}  // namespace

Corpus generate_synthetic_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.topics < 1) throw InputError("synthetic corpus needs at least one topic");
  if (spec.papers_per_topic < 1) throw InputError("papers_per_topic must be >= 1");
  if (spec.p_intra < 0.0 || spec.p_intra > 1.0 || spec.p_inter < 0.0 || spec.p_inter > 1.0) {
    throw InputError("citation probabilities must lie in [0, 1]");
  }
  if (spec.vocab_per_topic < 1) throw InputError("vocab_per_topic must be >= 1");
  if (spec.year_min > spec.year_max) throw InputError("year_min must not exceed year_max");

  std::vector<std::vector<std::string>> topic_vocab(spec.topics);
  for (int t = 0; t < spec.topics; ++t) {
    for (int w = 0; w < spec.vocab_per_topic; ++w) {
      topic_vocab[t].push_back(codeword(1000 + static_cast<unsigned long long>(t) * spec.vocab_per_topic + w));
    }
  }
  std::vector<std::string> shared;
  for (int w = 0; w < spec.shared_vocab; ++w) {
    shared.push_back(codeword(500000 + static_cast<unsigned long long>(w)));
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> year_of(spec.year_min, spec.year_max);

  const int n = spec.topics * spec.papers_per_topic;
  std::vector<Paper> papers(n);
  for (int i = 0; i < n; ++i) {
    const int topic = i / spec.papers_per_topic;
    Paper& p = papers[i];
    p.id = "p" + std::to_string(i);
    p.year = year_of(rng);

    std::uniform_int_distribution<int> pick_topic_word(0, spec.vocab_per_topic - 1);
    auto sample_word = [&]() -> const std::string& {
      if (spec.shared_vocab > 0 && coin(rng) < 0.2) {
        std::uniform_int_distribution<int> pick(0, spec.shared_vocab - 1);
        return shared[pick(rng)];
      }
      return topic_vocab[topic][pick_topic_word(rng)];
    };

    for (int w = 0; w < 3; ++w) {
      if (w) p.title.push_back(' ');
      p.title += sample_word();
    }
    for (int w = 0; w < spec.words_per_abstract; ++w) {
      if (w) p.abstract.push_back(' ');
      p.abstract += sample_word();
    }
  }

  // the later paper (by year, then index) cites the earlier one
  std::vector<int> received(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same = i / spec.papers_per_topic == j / spec.papers_per_topic;
      const double p = same ? spec.p_intra : spec.p_inter;
      if (coin(rng) >= p) continue;
      const int citer = *papers[i].year > *papers[j].year ? i : j;
      const int cited = citer == i ? j : i;
      papers[citer].references.push_back(papers[cited].id);
      received[cited]++;
    }
  }
  for (int i = 0; i < n; ++i) papers[i].citation_count = received[i];

  return Corpus(std::move(papers));
}

}  // namespace scimap
