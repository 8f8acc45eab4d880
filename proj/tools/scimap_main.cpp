#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "scimap/pipeline.hpp"
#include "scimap/synth.hpp"

namespace {

using namespace scimap;

void print_notes(const Artifacts& art) {
  for (const auto& note : art.notes) std::cerr << "note: " << note << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

int run_ingest(const PipelineConfig& config) {
  const Artifacts art = compute_artifacts(config, Stage::Corpus);
  print_notes(art);
  const auto& stats = art.stats;
  std::cout << "papers: " << stats.paper_count << '\n';
  if (stats.min_year) {
    std::cout << "years: " << *stats.min_year << "-" << *stats.max_year << '\n';
  }
  std::cout << "papers without year: " << stats.papers_without_year << '\n';
  std::cout << "papers per year:\n";
  for (const auto& [year, count] : stats.papers_per_year) {
    std::cout << "  " << year << ": " << count << '\n';
  }
  return 0;
}

int run_network(const PipelineConfig& config, const std::string& edges_path,
                const std::string& net_path) {
  const Artifacts art = compute_artifacts(config, Stage::Citenet);
  print_notes(art);
  std::cout << "mode: " << config.network_mode << '\n'
            << "nodes: " << art.network.node_count() << '\n'
            << "edges: " << art.network.edge_count() << '\n'
            << "average degree: " << average_degree(art.network) << '\n'
            << "components: " << art.components.count << '\n'
            << "isolated nodes: " << art.network.isolated_nodes().size() << '\n'
            << "dangling references: " << art.network.dangling_references() << '\n';
  if (!edges_path.empty()) {
    auto out = open_output(edges_path);
    export_edge_list(art.network, out);
  }
  if (!net_path.empty()) {
    auto out = open_output(net_path);
    export_pajek(art.network, out);
  }
  return 0;
}

int run_communities(const PipelineConfig& config, const std::string& partition_path,
                    const std::string& coarse_path) {
  const Artifacts art = compute_artifacts(config, Stage::Coarse);
  print_notes(art);
  std::cout << "communities: " << art.partition.count() << '\n'
            << "modularity: " << art.partition.q << '\n';
  for (int c = 0; c < art.partition.count(); ++c) {
    std::cout << "  community " << c << ": " << art.partition.sizes[c] << " papers";
    if (c < static_cast<int>(art.community_labels.size()) && !art.community_labels[c].empty()) {
      std::cout << " (";
      for (std::size_t i = 0; i < art.community_labels[c].size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << art.community_labels[c][i];
      }
      std::cout << ')';
    }
    std::cout << '\n';
  }
  if (!partition_path.empty()) {
    auto out = open_output(partition_path);
    export_partition_csv(art.network, art.partition, out);
  }
  if (!coarse_path.empty()) {
    auto out = open_output(coarse_path);
    export_coarse_csv(art.coarse, out);
  }
  return 0;
}

int run_keywords(const PipelineConfig& config, const std::string& csv_path) {
  const Artifacts art = compute_artifacts(config, Stage::Salience);
  print_notes(art);
  std::cout << "vocabulary: " << art.table.terms.size() << " terms\n"
            << "selected: " << art.selected.size() << " keywords\n";
  for (const auto& kw : art.selected) {
    std::cout << "  " << kw.term << "  I=" << kw.importance << "  community=" << kw.community
              << '\n';
  }
  if (!csv_path.empty()) {
    auto out = open_output(csv_path);
    export_keywords_csv(art.selected, out);
  }
  return 0;
}

int run_taxonomy(const PipelineConfig& config, const std::string& newick_path,
                 const std::string& json_path, const std::string& distances_path,
                 const std::string& groups_path) {
  const Artifacts art = compute_artifacts(config, Stage::Taxonomy);
  print_notes(art);
  std::cout << "keywords: " << art.distances.size() << '\n'
            << "cut threshold: " << art.effective_cut << '\n'
            << "groups: " << art.groups.size() << '\n';
  for (std::size_t g = 0; g < art.groups.size(); ++g) {
    std::cout << "  group " << g << ": ";
    for (std::size_t i = 0; i < art.groups[g].size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << art.groups[g][i];
    }
    std::cout << '\n';
  }
  if (!newick_path.empty()) {
    auto out = open_output(newick_path);
    export_newick(art.dendrogram, out);
  }
  if (!json_path.empty()) {
    auto out = open_output(json_path);
    export_dendrogram_json(art.dendrogram, out);
  }
  if (!distances_path.empty()) {
    auto out = open_output(distances_path);
    export_distance_csv(art.distances, out);
  }
  if (!groups_path.empty()) {
    auto out = open_output(groups_path);
    out << "group,keyword\n";
    for (std::size_t g = 0; g < art.groups.size(); ++g) {
      for (const auto& kw : art.groups[g]) out << g << ',' << kw << '\n';
    }
  }
  return 0;
}

int run_accessibility(const PipelineConfig& config, const std::string& kappa_path,
                      const std::string& areas_path, const std::string& curves_path) {
  const Artifacts art = compute_artifacts(config, Stage::Accessibility);
  print_notes(art);
  std::cout << "h: " << art.profile.h << '\n'
            << "kappa range: [" << art.kappa_min << ", " << art.kappa_max << "]\n"
            << "peripherality ranking (most peripheral first):\n";
  for (const auto& [community, area] : art.areas) {
    std::cout << "  community " << community << ": area " << area << '\n';
  }
  if (!kappa_path.empty()) {
    auto out = open_output(kappa_path);
    export_kappa_csv(art.network, art.partition, art.profile, out);
  }
  if (!areas_path.empty()) {
    auto out = open_output(areas_path);
    export_areas_csv(art.areas, out);
  }
  if (!curves_path.empty()) {
    auto out = open_output(curves_path);
    export_curves_csv(art.curves, out);
  }
  return 0;
}

int run_layout_cmd(const PipelineConfig& config, const std::string& coords_path) {
  const Artifacts art = compute_artifacts(config, Stage::Communities);
  print_notes(art);
  LayoutOptions options;
  options.dims = config.layout_dims;
  options.iterations = config.layout_iterations;
  options.seed = config.seed;
  const Layout layout = layout_network(art.network, options);
  std::cout << "dims: " << layout.dims << '\n'
            << "iterations: " << layout.iterations << '\n'
            << "final temperature: " << layout.final_temperature << '\n'
            << "grid cutoff: " << (layout.grid_cutoff_used ? "yes" : "no") << '\n';
  if (!coords_path.empty()) {
    auto out = open_output(coords_path);
    export_coordinates_csv(art.network, art.partition, layout, out);
  }
  return 0;
}

int run_timeline(const PipelineConfig& config, const std::string& csv_path) {
  const Artifacts art = compute_artifacts(config, Stage::Salience);
  print_notes(art);
  const TimelineTable table = truncate_sparse_years(
      keyword_timelines(art.keyword_terms, art.corpus_report.corpus, art.termsets),
      config.timeline_min_papers);
  if (table.years.empty()) {
    std::cout << "timeline: empty\n";
  } else {
    std::cout << "years: " << table.years.front() << "-" << table.years.back() << '\n'
              << "keywords tracked: " << table.keywords.size() << '\n';
  }
  if (!csv_path.empty()) {
    auto out = open_output(csv_path);
    export_timeline_csv(table, out);
  }
  return 0;
}

int run_full(const PipelineConfig& config) {
  const RunResult result = run_pipeline(config);
  std::cout << "wrote " << result.files.size() << " files to " << config.output_dir << '\n';
  for (const auto& name : result.files) std::cout << "  " << name << '\n';
  return 0;
}

int run_synth(const SyntheticCorpusSpec& spec, const std::string& output) {
  const Corpus corpus = generate_synthetic_corpus(spec);
  if (output.empty()) {
    serialize(corpus, std::cout);
  } else {
    auto out = open_output(output);
    serialize(corpus, out);
  }
  std::cerr << "generated " << corpus.size() << " papers in " << spec.topics << " topics\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scimap: build science maps from bibliographic corpora"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string config_path;
  std::string edges_path, net_path, partition_path, coarse_path, keywords_csv, newick_path,
      dendro_json_path, distances_path, groups_path, kappa_path, areas_path, curves_path,
      coords_path, timeline_csv, synth_output;
  SyntheticCorpusSpec synth_spec;

  auto add_corpus = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", cfg.corpus_path, "corpus file, one JSON record per line")
        ->required();
  };
  auto add_network = [&](CLI::App* cmd) {
    cmd->add_option("--network", cfg.network_mode, "citation | cocitation")
        ->check(CLI::IsMember({"citation", "cocitation"}));
  };
  auto add_text = [&](CLI::App* cmd) {
    cmd->add_option("--stopwords", cfg.stopwords_path, "stopword file, one word per line");
    cmd->add_option("--lemmas", cfg.lemmas_path, "lemma table, surface<TAB>lemma per line");
    cmd->add_option("--keywords-file", cfg.keywords_file,
                    "expert keyword list, one phrase per line (bypasses the ranking)");
    cmd->add_option("--top-k", cfg.top_k, "number of keywords to select");
    cmd->add_option("--coverage-threshold", cfg.coverage_threshold,
                    "drop keywords covering more than this fraction of the corpus");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "seed for every random choice in the run");
  };

  auto* ingest = app.add_subcommand("ingest", "parse and validate a corpus");
  add_corpus(ingest);

  auto* network = app.add_subcommand("network", "build the citation or co-citation network");
  add_corpus(network);
  add_network(network);
  network->add_option("--export-edges", edges_path, "write a tab-separated edge list");
  network->add_option("--export-net", net_path, "write a Pajek graph description");

  auto* communities = app.add_subcommand("communities", "detect communities and coarse-grain");
  add_corpus(communities);
  add_network(communities);
  add_seed(communities);
  add_text(communities);
  communities->add_option("--export-partition", partition_path, "write id,community CSV");
  communities->add_option("--export-coarse", coarse_path, "write the coarse graph CSV");

  auto* keywords = app.add_subcommand("keywords", "rank and select community keywords");
  add_corpus(keywords);
  add_network(keywords);
  add_seed(keywords);
  add_text(keywords);
  keywords->add_option("--out", keywords_csv, "write the keyword CSV");

  auto* taxonomy = app.add_subcommand("taxonomy", "keyword distances, dendrogram and groups");
  add_corpus(taxonomy);
  add_network(taxonomy);
  add_seed(taxonomy);
  add_text(taxonomy);
  taxonomy->add_option("--accessibility-h", cfg.accessibility_h, "random-walk length");
  taxonomy->add_option("--cut-threshold", cfg.cut_threshold,
                       "dendrogram cut height (default: half the root height)");
  taxonomy->add_option("--dendrogram", newick_path, "write the Newick tree");
  taxonomy->add_option("--dendrogram-json", dendro_json_path, "write the JSON tree");
  taxonomy->add_option("--distances", distances_path, "write the keyword distance CSV");
  taxonomy->add_option("--groups", groups_path, "write the group CSV");

  auto* accessibility = app.add_subcommand("accessibility", "random-walk accessibility analysis");
  add_corpus(accessibility);
  add_network(accessibility);
  add_seed(accessibility);
  add_text(accessibility);
  accessibility->add_option("--accessibility-h", cfg.accessibility_h, "random-walk length");
  accessibility->add_option("--kappa", kappa_path, "write per-node kappa CSV");
  accessibility->add_option("--areas", areas_path, "write per-community area CSV");
  accessibility->add_option("--curves", curves_path, "write curve sample points CSV");

  auto* layout = app.add_subcommand("layout", "force-directed 2D/3D embedding");
  add_corpus(layout);
  add_network(layout);
  add_seed(layout);
  layout->add_option("--layout-dims", cfg.layout_dims, "2 or 3");
  layout->add_option("--layout-iterations", cfg.layout_iterations, "iteration count");
  layout->add_option("--coords", coords_path, "write the coordinates CSV");

  auto* timeline = app.add_subcommand("timeline", "per-year keyword frequencies");
  add_corpus(timeline);
  add_network(timeline);
  add_seed(timeline);
  add_text(timeline);
  timeline->add_option("--timeline-min-papers", cfg.timeline_min_papers,
                       "drop leading years with fewer papers");
  timeline->add_option("--out", timeline_csv, "write the timeline CSV");

  auto* run = app.add_subcommand("run", "full pipeline, all exports plus a manifest");
  run->add_option("--config", config_path, "flat key = value config file; CLI flags override it");
  auto* run_corpus =
      run->add_option("--corpus", cfg.corpus_path, "corpus file, one JSON record per line");
  add_network(run);
  add_seed(run);
  add_text(run);
  run->add_option("--accessibility-h", cfg.accessibility_h, "random-walk length");
  run->add_option("--cut-threshold", cfg.cut_threshold, "dendrogram cut height");
  run->add_option("--layout-dims", cfg.layout_dims, "2 or 3");
  run->add_option("--layout-iterations", cfg.layout_iterations, "iteration count");
  run->add_option("--timeline-min-papers", cfg.timeline_min_papers,
                  "drop leading years with fewer papers");
  run->add_option("--out-dir", cfg.output_dir, "output directory")->envname("SCIMAP_OUT");

  auto* synth = app.add_subcommand("synth", "generate a synthetic planted-topic corpus");
  synth->add_option("--topics", synth_spec.topics, "number of planted topics");
  synth->add_option("--papers-per-topic", synth_spec.papers_per_topic, "papers per topic");
  synth->add_option("--p-intra", synth_spec.p_intra, "within-topic citation probability");
  synth->add_option("--p-inter", synth_spec.p_inter, "across-topic citation probability");
  synth->add_option("--vocab-per-topic", synth_spec.vocab_per_topic, "words per topic vocabulary");
  synth->add_option("--shared-vocab", synth_spec.shared_vocab, "shared vocabulary size");
  synth->add_option("--words-per-abstract", synth_spec.words_per_abstract, "abstract length");
  synth->add_option("--year-min", synth_spec.year_min, "earliest publication year");
  synth->add_option("--year-max", synth_spec.year_max, "latest publication year");
  synth->add_option("--seed", synth_spec.seed, "generator seed");
  synth->add_option("--output", synth_output, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed() && !config_path.empty()) {
      PipelineConfig file_cfg = load_config_file(config_path);
      // CLI flags set explicitly win over the config file
      auto keep = [&](const std::string& flag, auto member) {
        if (run->count(flag) > 0) file_cfg.*member = cfg.*member;
      };
      keep("--corpus", &PipelineConfig::corpus_path);
      keep("--network", &PipelineConfig::network_mode);
      keep("--seed", &PipelineConfig::seed);
      keep("--top-k", &PipelineConfig::top_k);
      keep("--accessibility-h", &PipelineConfig::accessibility_h);
      keep("--layout-dims", &PipelineConfig::layout_dims);
      keep("--layout-iterations", &PipelineConfig::layout_iterations);
      keep("--cut-threshold", &PipelineConfig::cut_threshold);
      keep("--coverage-threshold", &PipelineConfig::coverage_threshold);
      keep("--timeline-min-papers", &PipelineConfig::timeline_min_papers);
      keep("--stopwords", &PipelineConfig::stopwords_path);
      keep("--lemmas", &PipelineConfig::lemmas_path);
      keep("--keywords-file", &PipelineConfig::keywords_file);
      if (run->count("--out-dir") > 0 || !file_cfg.output_dir.empty()) {
        if (run->count("--out-dir") > 0) file_cfg.output_dir = cfg.output_dir;
      }
      if (file_cfg.output_dir.empty()) file_cfg.output_dir = cfg.output_dir;
      cfg = file_cfg;
    } else if (run->parsed() && cfg.corpus_path.empty()) {
      (void)run_corpus;
      throw InputError("run needs --corpus or a --config file naming one");
    }

    if (ingest->parsed()) return run_ingest(cfg);
    if (network->parsed()) return run_network(cfg, edges_path, net_path);
    if (communities->parsed()) return run_communities(cfg, partition_path, coarse_path);
    if (keywords->parsed()) return run_keywords(cfg, keywords_csv);
    if (taxonomy->parsed())
      return run_taxonomy(cfg, newick_path, dendro_json_path, distances_path, groups_path);
    if (accessibility->parsed()) return run_accessibility(cfg, kappa_path, areas_path, curves_path);
    if (layout->parsed()) return run_layout_cmd(cfg, coords_path);
    if (timeline->parsed()) return run_timeline(cfg, timeline_csv);
    if (run->parsed()) return run_full(cfg);
    if (synth->parsed()) return run_synth(synth_spec, synth_output);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
