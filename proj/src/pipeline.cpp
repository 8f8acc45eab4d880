#include "scimap/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "scimap/kernels.hpp"

namespace scimap {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  PipelineConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "corpus") config.corpus_path = value;
      else if (key == "network") config.network_mode = value;
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "top-k") config.top_k = std::stoi(value);
      else if (key == "accessibility-h") config.accessibility_h = std::stoi(value);
      else if (key == "layout-dims") config.layout_dims = std::stoi(value);
      else if (key == "layout-iterations") config.layout_iterations = std::stoi(value);
      else if (key == "cut-threshold") config.cut_threshold = std::stod(value);
      else if (key == "coverage-threshold") config.coverage_threshold = std::stod(value);
      else if (key == "timeline-min-papers") config.timeline_min_papers = std::stoi(value);
      else if (key == "label-top-m") config.label_top_m = std::stoi(value);
      else if (key == "stopwords") config.stopwords_path = value;
      else if (key == "lemmas") config.lemmas_path = value;
      else if (key == "keywords-file") config.keywords_file = value;
      else if (key == "out-dir") config.output_dir = value;
      else throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw InputError("config line " + std::to_string(line_no) + ": bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw InputError("config line " + std::to_string(line_no) + ": bad value for '" + key + "'");
    }
  }
  return config;
}

void validate(const PipelineConfig& config) {
  if (config.corpus_path.empty()) throw InputError("no corpus file given");
  if (config.network_mode != "citation" && config.network_mode != "cocitation") {
    throw InputError("network mode must be 'citation' or 'cocitation', got '" +
                     config.network_mode + "'");
  }
  if (config.top_k < 1) throw InputError("top-k must be >= 1");
  if (config.accessibility_h < 1) throw InputError("accessibility-h must be >= 1");
  if (config.layout_dims != 2 && config.layout_dims != 3) throw InputError("layout-dims must be 2 or 3");
  if (config.layout_iterations < 1) throw InputError("layout-iterations must be >= 1");
  if (config.coverage_threshold < 0.0 || config.coverage_threshold > 1.0) {
    throw InputError("coverage-threshold must lie in [0, 1]");
  }
  if (config.timeline_min_papers < 1) throw InputError("timeline-min-papers must be >= 1");
  if (config.label_top_m < 1) throw InputError("label-top-m must be >= 1");
  if (config.output_dir.empty()) throw InputError("output directory must not be empty");
}

namespace {

// Runs fn under a stage name. Corpus-stage input problems stay InputError;
// everything else surfaces as StageError carrying the stage name.
void run_stage(const std::string& stage, bool input_stage, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    if (input_stage) throw;
    throw StageError(stage, e.what());
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

Artifacts compute_artifacts(const PipelineConfig& config, Stage through) {
  validate(config);
  Artifacts art;

  run_stage("corpus", true, [&] {
    art.corpus_report = parse_records_file(config.corpus_path);
    art.stats = corpus_stats(art.corpus_report.corpus);
    if (art.corpus_report.self_references_dropped > 0) {
      art.notes.push_back("dropped " + std::to_string(art.corpus_report.self_references_dropped) +
                          " self references at parse time");
    }
    if (art.corpus_report.duplicate_references_dropped > 0) {
      art.notes.push_back("dropped " +
                          std::to_string(art.corpus_report.duplicate_references_dropped) +
                          " duplicate references at parse time");
    }
    if (art.corpus_report.empty_abstracts > 0) {
      art.notes.push_back(std::to_string(art.corpus_report.empty_abstracts) +
                          " papers have an empty abstract");
    }
  });
  if (through == Stage::Corpus) return art;
  const Corpus& corpus = art.corpus_report.corpus;

  run_stage("citenet", false, [&] {
    art.network = config.network_mode == "cocitation" ? build_cocitation_network(corpus)
                                                      : build_citation_network(corpus);
    if (art.network.node_count() == 0) {
      throw std::runtime_error("network is empty (no papers in the corpus)");
    }
    art.components = connected_components(art.network);
    const auto isolated = art.network.isolated_nodes();
    if (!isolated.empty()) {
      art.notes.push_back(std::to_string(isolated.size()) + " isolated nodes kept in the network");
    }
    if (art.network.dangling_references() > 0) {
      art.notes.push_back(std::to_string(art.network.dangling_references()) +
                          " references point outside the corpus and were ignored");
    }
  });
  if (through == Stage::Citenet) return art;

  run_stage("communities", false, [&] {
    art.partition = detect_communities(art.network, config.seed);
  });
  if (through == Stage::Communities) return art;

  run_stage("salience", false, [&] {
    const TextDictionary dict = load_dictionary(config.stopwords_path, config.lemmas_path);
    art.token_streams = preprocess_corpus(corpus, dict);
    art.termsets = build_term_sets(art.token_streams);
    if (!config.keywords_file.empty()) {
      art.expert_mode = true;
      const auto phrases = load_keyword_phrases(config.keywords_file, dict);
      augment_with_phrases(art.termsets, art.token_streams, phrases);
      art.table = community_frequencies(art.termsets, art.partition);
      art.ranked = importance_index(art.table);
      const auto kept = filter_generic_keywords(phrases, art.termsets, config.coverage_threshold);
      art.generic_filtered = static_cast<int>(phrases.size() - kept.size());
      if (art.generic_filtered > 0) {
        art.notes.push_back("omitted " + std::to_string(art.generic_filtered) +
                            " expert keywords covering more than " +
                            std::to_string(config.coverage_threshold * 100.0) +
                            "% of the network");
      }
      std::vector<std::string> missing;
      for (const auto& kw : kept) {
        bool anywhere = false;
        for (std::size_t paper = 0; paper < art.termsets.terms.size() && !anywhere; ++paper) {
          anywhere = art.termsets.paper_has(paper, kw);
        }
        if (anywhere) {
          art.keyword_terms.push_back(kw);
        } else {
          missing.push_back(kw);
        }
      }
      if (!missing.empty()) {
        art.notes.push_back(std::to_string(missing.size()) +
                            " expert keywords matched no abstract and were dropped");
      }
      for (const auto& kw : art.keyword_terms) {
        const int t = art.table.term_index(kw);
        if (t >= 0) {
          for (const auto& r : art.ranked) {
            if (r.term == kw) {
              art.selected.push_back(r);
              break;
            }
          }
        }
      }
    } else {
      art.table = community_frequencies(art.termsets, art.partition);
      art.ranked = importance_index(art.table);
      art.selected = select_keywords(art.ranked, config.top_k, &art.short_of_k);
      if (art.short_of_k) {
        art.notes.push_back("only " + std::to_string(art.selected.size()) +
                            " keywords eligible, fewer than the requested " +
                            std::to_string(config.top_k));
      }
      for (const auto& r : art.selected) art.keyword_terms.push_back(r.term);
    }
    art.community_labels = label_communities(art.table, config.label_top_m);
    for (std::size_t c = 0; c < art.community_labels.size(); ++c) {
      if (art.community_labels[c].empty()) {
        art.notes.push_back("community " + std::to_string(c) + " has no terms to label it");
      }
    }
  });
  if (through == Stage::Salience) return art;

  run_stage("coarse", false, [&] { art.coarse = coarse_grain(art.network, art.partition); });
  if (through == Stage::Coarse) return art;

  run_stage("accessibility", false, [&] {
    art.profile = accessibility_profile(art.network, config.accessibility_h);
    if (!art.profile.isolated.empty()) {
      art.notes.push_back(std::to_string(art.profile.isolated.size()) +
                          " isolated nodes have kappa 0 and are excluded from the curves");
    }
    const auto range = global_kappa_range(art.profile);
    art.kappa_min = range.first;
    art.kappa_max = range.second;
    for (int c = 0; c < art.partition.count(); ++c) {
      art.curves.push_back(cumulative_curve(art.profile, art.partition, c));
    }
    if (art.kappa_max > art.kappa_min) {
      for (int c = 0; c < art.partition.count(); ++c) {
        art.areas.push_back({c, peripherality_area(art.curves[c], art.kappa_min, art.kappa_max)});
      }
      std::sort(art.areas.begin(), art.areas.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
    } else {
      art.notes.push_back("kappa range is degenerate; peripherality areas skipped");
    }
  });
  if (through == Stage::Accessibility) return art;

  run_stage("taxonomy", false, [&] {
    art.distances = keyword_distances(art.keyword_terms, art.termsets, art.network);
    art.resolution = resolve_undefined(art.distances);
    if (art.resolution.substituted_pairs > 0) {
      art.notes.push_back(std::to_string(art.resolution.substituted_pairs) +
                          " keyword pairs had no reachable paper pair; distance set to " +
                          std::to_string(art.resolution.substitute_value));
    }
    art.dendrogram = build_dendrogram(art.distances);
    const int violations = monotonicity_violations(art.dendrogram);
    if (violations > 0) {
      art.notes.push_back(std::to_string(violations) + " non-monotone merge heights in the dendrogram");
    }
    const double root_height = art.dendrogram.nodes[art.dendrogram.root()].height;
    art.effective_cut = config.cut_threshold >= 0.0 ? config.cut_threshold : root_height / 2.0;
    if (config.cut_threshold < 0.0) {
      art.notes.push_back("cut threshold defaulted to half the root merge height (" +
                          std::to_string(art.effective_cut) + ")");
    }
    art.groups = cut_dendrogram(art.dendrogram, art.effective_cut);
    art.group_assignment = assign_papers_to_groups(art.groups, art.termsets);
  });
  if (through == Stage::Taxonomy) return art;

  run_stage("layout", false, [&] {
    LayoutOptions options;
    options.dims = config.layout_dims;
    options.iterations = config.layout_iterations;
    options.seed = config.seed;
    art.layout = layout_network(art.network, options);
    if (art.layout.grid_cutoff_used) {
      art.notes.push_back("layout used the grid repulsion cutoff approximation");
    }
  });
  if (through == Stage::Layout) return art;

  run_stage("timeline", false, [&] {
    art.timeline = truncate_sparse_years(
        keyword_timelines(art.keyword_terms, corpus, art.termsets), config.timeline_min_papers);
    if (art.timeline.years.empty()) {
      art.notes.push_back("every year falls below the timeline paper threshold; timeline is empty");
    }
    for (const auto& kw : art.timeline.absent_keywords) {
      art.notes.push_back("keyword '" + kw + "' occurs in no paper; all-zero timeline row");
    }
  });
  return art;
}

namespace {

ordered_json science_map_json(const Artifacts& art, const PipelineConfig& config) {
  ordered_json map;
  map["network_mode"] = config.network_mode;
  map["dims"] = art.layout.dims;
  map["nodes"] = ordered_json::array();
  for (std::size_t v = 0; v < art.network.node_count(); ++v) {
    ordered_json node;
    node["id"] = art.network.id(static_cast<int>(v));
    node["x"] = art.layout.xs[v];
    node["y"] = art.layout.ys[v];
    if (art.layout.dims == 3) node["z"] = art.layout.zs[v];
    node["community"] = art.partition.assignment[v];
    map["nodes"].push_back(std::move(node));
  }
  map["communities"] = ordered_json::array();
  for (int c = 0; c < art.partition.count(); ++c) {
    ordered_json community;
    community["label"] = c;
    community["size"] = art.partition.sizes[c];
    community["keywords"] = art.community_labels[c];
    map["communities"].push_back(std::move(community));
  }
  map["coarse_edges"] = ordered_json::array();
  for (const auto& e : art.coarse.edges) {
    ordered_json edge;
    edge["a"] = e.a;
    edge["b"] = e.b;
    edge["count"] = e.count;
    edge["weight"] = e.weight;
    map["coarse_edges"].push_back(std::move(edge));
  }
  return map;
}

ordered_json manifest_json(const Artifacts& art, const PipelineConfig& config,
                           const std::vector<std::string>& files) {
  ordered_json m;
  m["tool"] = "scimap";
  m["version"] = "1.0.0";

  ordered_json params;
  params["corpus"] = config.corpus_path;
  params["network"] = config.network_mode;
  params["seed"] = config.seed;
  params["top_k"] = config.top_k;
  params["accessibility_h"] = config.accessibility_h;
  params["layout_dims"] = config.layout_dims;
  params["layout_iterations"] = config.layout_iterations;
  params["cut_threshold"] = art.effective_cut;
  params["cut_threshold_auto"] = config.cut_threshold < 0.0;
  params["coverage_threshold"] = config.coverage_threshold;
  params["timeline_min_papers"] = config.timeline_min_papers;
  params["label_top_m"] = config.label_top_m;
  params["stopwords"] = config.stopwords_path;
  params["lemmas"] = config.lemmas_path;
  params["keywords_file"] = config.keywords_file;
  m["parameters"] = std::move(params);
  m["kernel_backend"] = kernels::backend_name(kernels::active_backend());

  ordered_json corpus;
  corpus["papers"] = art.corpus_report.corpus.size();
  corpus["empty_abstracts"] = art.corpus_report.empty_abstracts;
  corpus["self_references_dropped"] = art.corpus_report.self_references_dropped;
  corpus["duplicate_references_dropped"] = art.corpus_report.duplicate_references_dropped;
  if (art.stats.min_year) {
    corpus["year_min"] = *art.stats.min_year;
    corpus["year_max"] = *art.stats.max_year;
  }
  corpus["papers_without_year"] = art.stats.papers_without_year;
  m["corpus"] = std::move(corpus);

  ordered_json network;
  network["nodes"] = art.network.node_count();
  network["edges"] = art.network.edge_count();
  network["average_degree"] = average_degree(art.network);
  network["components"] = art.components.count;
  network["isolated_nodes"] = art.network.isolated_nodes().size();
  network["dangling_references"] = art.network.dangling_references();
  m["network"] = std::move(network);

  ordered_json communities;
  communities["count"] = art.partition.count();
  communities["modularity"] = art.partition.q;
  communities["sizes"] = art.partition.sizes;
  m["communities"] = std::move(communities);

  ordered_json keywords;
  keywords["vocabulary"] = art.table.terms.size();
  keywords["selected"] = art.keyword_terms.size();
  keywords["expert_mode"] = art.expert_mode;
  keywords["short_of_k"] = art.short_of_k;
  keywords["generic_filtered"] = art.generic_filtered;
  m["keywords"] = std::move(keywords);

  ordered_json accessibility;
  accessibility["h"] = art.profile.h;
  accessibility["kappa_min"] = art.kappa_min;
  accessibility["kappa_max"] = art.kappa_max;
  accessibility["areas"] = ordered_json::array();
  for (const auto& [community, area] : art.areas) {
    ordered_json row;
    row["community"] = community;
    row["area"] = area;
    accessibility["areas"].push_back(std::move(row));
  }
  m["accessibility"] = std::move(accessibility);

  ordered_json taxonomy;
  taxonomy["keywords"] = art.distances.size();
  taxonomy["undefined_pairs"] = art.resolution.substituted_pairs;
  taxonomy["substitute_distance"] = art.resolution.substitute_value;
  taxonomy["monotonicity_violations"] = monotonicity_violations(art.dendrogram);
  taxonomy["cut_threshold"] = art.effective_cut;
  taxonomy["groups"] = art.groups.size();
  int unassigned = 0;
  for (int g : art.group_assignment.group) {
    if (g < 0) unassigned++;
  }
  taxonomy["unassigned_papers"] = unassigned;
  m["taxonomy"] = std::move(taxonomy);

  ordered_json layout;
  layout["dims"] = art.layout.dims;
  layout["iterations"] = art.layout.iterations;
  layout["final_temperature"] = art.layout.final_temperature;
  layout["grid_cutoff"] = art.layout.grid_cutoff_used;
  layout["ideal_edge_length"] = art.layout.k;
  m["layout"] = std::move(layout);

  ordered_json timeline;
  if (!art.timeline.years.empty()) {
    timeline["year_start"] = art.timeline.years.front();
    timeline["year_end"] = art.timeline.years.back();
  }
  timeline["min_papers"] = config.timeline_min_papers;
  timeline["absent_keywords"] = art.timeline.absent_keywords;
  m["timeline"] = std::move(timeline);

  m["notes"] = art.notes;
  m["files"] = files;
  return m;
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& config) {
  Artifacts art = compute_artifacts(config, Stage::Timeline);

  const fs::path out_dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory '" + config.output_dir + "'");

  RunResult result;
  std::vector<fs::path> written;
  auto write_file = [&](const std::string& name, const std::function<void(std::ostream&)>& writer) {
    const fs::path path = out_dir / name;
    std::ofstream out(path);
    if (!out) throw StageError("export", "cannot write '" + path.string() + "'");
    writer(out);
    out.flush();
    if (!out) throw StageError("export", "failed writing '" + path.string() + "'");
    written.push_back(path);
    result.files.push_back(name);
  };

  try {
    write_file("edges.tsv", [&](std::ostream& o) { export_edge_list(art.network, o); });
    write_file("network.net", [&](std::ostream& o) { export_pajek(art.network, o); });
    write_file("partition.csv",
               [&](std::ostream& o) { export_partition_csv(art.network, art.partition, o); });
    write_file("coarse_graph.csv", [&](std::ostream& o) { export_coarse_csv(art.coarse, o); });
    write_file("keywords.csv", [&](std::ostream& o) { export_keywords_csv(art.selected, o); });
    write_file("community_labels.csv", [&](std::ostream& o) {
      o << "community,rank,keyword\n";
      for (std::size_t c = 0; c < art.community_labels.size(); ++c) {
        for (std::size_t r = 0; r < art.community_labels[c].size(); ++r) {
          o << c << ',' << r << ',' << art.community_labels[c][r] << '\n';
        }
      }
    });
    write_file("kappa.csv", [&](std::ostream& o) {
      export_kappa_csv(art.network, art.partition, art.profile, o);
    });
    write_file("curves.csv", [&](std::ostream& o) { export_curves_csv(art.curves, o); });
    write_file("areas.csv", [&](std::ostream& o) { export_areas_csv(art.areas, o); });
    write_file("keyword_distances.csv",
               [&](std::ostream& o) { export_distance_csv(art.distances, o); });
    write_file("dendrogram.nwk", [&](std::ostream& o) { export_newick(art.dendrogram, o); });
    write_file("dendrogram.json",
               [&](std::ostream& o) { export_dendrogram_json(art.dendrogram, o); });
    write_file("groups.csv", [&](std::ostream& o) {
      o << "group,keyword\n";
      for (std::size_t g = 0; g < art.groups.size(); ++g) {
        for (const auto& kw : art.groups[g]) o << g << ',' << kw << '\n';
      }
    });
    write_file("paper_groups.csv", [&](std::ostream& o) {
      o << "id,group\n";
      for (std::size_t paper = 0; paper < art.group_assignment.group.size(); ++paper) {
        o << art.corpus_report.corpus.paper(paper).id << ',';
        if (art.group_assignment.group[paper] >= 0) {
          o << art.group_assignment.group[paper];
        } else {
          o << "unassigned";
        }
        o << '\n';
      }
    });
    write_file("coordinates.csv", [&](std::ostream& o) {
      export_coordinates_csv(art.network, art.partition, art.layout, o);
    });
    write_file("science_map.json",
               [&](std::ostream& o) { o << science_map_json(art, config).dump(2) << '\n'; });
    write_file("timelines.csv", [&](std::ostream& o) { export_timeline_csv(art.timeline, o); });
    write_file("papers_per_year.csv",
               [&](std::ostream& o) { export_papers_per_year_csv(art.timeline, o); });

    result.files.push_back("manifest.json");
    std::sort(result.files.begin(), result.files.end());
    const ordered_json manifest = manifest_json(art, config, result.files);
    result.manifest_json = manifest.dump(2);
    const fs::path manifest_path = out_dir / "manifest.json";
    std::ofstream out(manifest_path);
    if (!out) throw StageError("export", "cannot write '" + manifest_path.string() + "'");
    out << result.manifest_json << '\n';
    out.flush();
    if (!out) throw StageError("export", "failed writing '" + manifest_path.string() + "'");
  } catch (...) {
    for (const auto& path : written) {
      std::error_code ignore;
      fs::remove(path, ignore);
    }
    throw;
  }
  return result;
}

}  // namespace scimap
