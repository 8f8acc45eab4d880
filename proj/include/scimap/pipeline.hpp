#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scimap/accessibility.hpp"
#include "scimap/citenet.hpp"
#include "scimap/communities.hpp"
#include "scimap/corpus.hpp"
#include "scimap/layout.hpp"
#include "scimap/salience.hpp"
#include "scimap/taxonomy.hpp"
#include "scimap/timeline.hpp"

namespace scimap {

struct PipelineConfig {
  std::string corpus_path;
  std::string network_mode = "citation";  // citation | cocitation
  std::uint64_t seed = 0;
  int top_k = 50;
  int accessibility_h = 3;
  int layout_dims = 3;
  int layout_iterations = 100;
  double cut_threshold = -1.0;  // < 0: half the root merge height
  double coverage_threshold = 0.5;
  int timeline_min_papers = 10;
  int label_top_m = 3;
  std::string stopwords_path;
  std::string lemmas_path;
  std::string keywords_file;  // expert keywords bypass the ranking
  std::string output_dir = "scimap_out";
};

// Flat key = value lines, one per CLI flag; '#' starts a comment.
PipelineConfig load_config_file(const std::string& path);
void validate(const PipelineConfig& config);

enum class Stage {
  Corpus,
  Citenet,
  Communities,
  Salience,
  Coarse,
  Accessibility,
  Taxonomy,
  Layout,
  Timeline,
};

// Everything the stages produce, filled up to the requested stage.
struct Artifacts {
  ParseReport corpus_report;
  CorpusStats stats;

  CitationNetwork network;
  Components components;

  CommunityPartition partition;
  CoarseGraph coarse;

  std::vector<std::vector<Token>> token_streams;
  TermSets termsets;
  KeywordTable table;
  std::vector<RankedKeyword> ranked;
  std::vector<RankedKeyword> selected;
  std::vector<std::string> keyword_terms;
  std::vector<std::vector<std::string>> community_labels;
  bool expert_mode = false;
  bool short_of_k = false;
  int generic_filtered = 0;

  AccessibilityProfile profile;
  std::vector<CumulativeCurve> curves;
  std::vector<std::pair<int, double>> areas;  // ranked, most peripheral first
  double kappa_min = 0.0, kappa_max = 0.0;

  KeywordDistanceMatrix distances;
  UndefinedResolution resolution;
  Dendrogram dendrogram;
  double effective_cut = 0.0;
  std::vector<std::vector<std::string>> groups;
  GroupAssignment group_assignment;

  Layout layout;

  TimelineTable timeline;

  std::vector<std::string> notes;  // decisions and warnings, manifest-bound
};

// Runs the stages in order through `through`, throwing InputError for bad
// input at the corpus stage and StageError (with the stage name) afterwards.
Artifacts compute_artifacts(const PipelineConfig& config, Stage through);

struct RunResult {
  std::vector<std::string> files;  // relative names written, sorted
  std::string manifest_json;
};

// Full pipeline: computes everything and writes every export plus
// manifest.json into the output directory. Partial outputs are removed when
// a stage fails. Identical inputs produce byte-identical outputs.
RunResult run_pipeline(const PipelineConfig& config);

}  // namespace scimap
