// Copyright 2026 The Smellscape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand is a thin mapping from flags to
// one call of the C API; exit codes are the ss_status values (0 ok, 1 input
// error, 2 internal error).

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "smellscape.h"

namespace {

struct EngineDeleter {
  void operator()(ss_engine* engine) const { ss_engine_free(engine); }
};
using EnginePtr = std::unique_ptr<ss_engine, EngineDeleter>;

int finish(ss_engine* engine, ss_status status, const char* command) {
  if (status != SS_STATUS_OK)
    std::fprintf(stderr, "smellscape %s: %s\n", command,
                 ss_engine_last_error(engine));
  return static_cast<int>(status);
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Urban smellscape analytics from geo-tagged social media"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ss_version()));

  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for parallel stages");

  EnginePtr engine(ss_engine_new());
  if (!engine) {
    std::fprintf(stderr, "smellscape: cannot create engine\n");
    return static_cast<int>(SS_STATUS_INTERNAL_ERROR);
  }

  // ingest -------------------------------------------------------------------
  std::string in_records, in_format = "jsonl", in_streets, in_pollutants,
              in_venues, in_timezone = "UTC", in_out, in_rejects;
  bool in_ngrams = false;
  auto* ingest = app.add_subcommand("ingest", "Parse raw inputs into a dataset snapshot");
  ingest->add_option("--records", in_records, "Line-delimited records file")->required();
  ingest->add_option("--format", in_format, "Record format: jsonl or csv");
  ingest->add_option("--streets", in_streets, "GeoJSON street network");
  ingest->add_option("--pollutants", in_pollutants, "Pollutant CSV (segment_id,no2,pm10,pm25)");
  ingest->add_option("--venues", in_venues, "Venue CSV (lat,lon,kind)");
  ingest->add_option("--timezone", in_timezone, "Civil timezone: UTC or fixed offset like +01:00");
  ingest->add_flag("--ngram-text", in_ngrams, "Split tag text into n-grams (n <= 3) before matching");
  ingest->add_option("--out", in_out, "Output dataset snapshot")->required();
  ingest->add_option("--rejects", in_rejects,
                     "Rejected-lines report CSV (default: <out>.rejects.csv)");

  // map ----------------------------------------------------------------------
  std::string map_dataset, map_smell, map_affect, map_pleasant, map_out,
      map_report;
  double map_dist = 50.0;
  bool map_multiset = false;
  auto* map = app.add_subcommand("map", "Snap records to street segments and tally tags");
  map->add_option("--dataset", map_dataset, "Dataset snapshot from ingest")->required();
  map->add_option("--smell-dict", map_smell, "Smell taxonomy CSV")->required();
  map->add_option("--affect-dict", map_affect, "Affect lexicon CSV");
  map->add_option("--pleasant-list", map_pleasant, "Pleasant/unpleasant word list CSV");
  map->add_option("--max-dist", map_dist, "Snap radius in meters (default 50)");
  map->add_flag("--multiset-tags", map_multiset, "Count duplicate tags per copy instead of once per record");
  map->add_option("--out", map_out, "Output tallies snapshot")->required();
  map->add_option("--report", map_report, "Snap summary CSV");

  // seasonality ----------------------------------------------------------------
  std::string sea_tallies, sea_out;
  int sea_lag = 12;
  auto* seasonality = app.add_subcommand("seasonality", "Lag autocorrelation of monthly category fractions");
  seasonality->add_option("--tallies", sea_tallies, "Tallies snapshot")->required();
  seasonality->add_option("--lag", sea_lag, "Lag in months (default 12)");
  seasonality->add_option("--out", sea_out, "Output CSV")->required();

  // pleasantness ---------------------------------------------------------------
  std::string ple_tallies, ple_by = "month", ple_out;
  std::uint64_t ple_min = 30;
  auto* pleasantness = app.add_subcommand("pleasantness", "Pleasure scores by month or street segment");
  pleasantness->add_option("--tallies", ple_tallies, "Tallies snapshot")->required();
  pleasantness->add_option("--by", ple_by, "month or segment");
  pleasantness->add_option("--min-tags", ple_min, "Segment smell-tag threshold (default 30)");
  pleasantness->add_option("--out", ple_out, "Output CSV")->required();

  // month-report ---------------------------------------------------------------
  std::string mon_tallies, mon_out;
  std::uint64_t mon_min = 30;
  bool mon_per_year = false;
  auto* month_report = app.add_subcommand("month-report", "Top smell per month, its entropy, and where to find it");
  month_report->add_option("--tallies", mon_tallies, "Tallies snapshot")->required();
  month_report->add_option("--min-tags", mon_min, "Per-month segment threshold (default 30)");
  month_report->add_flag("--per-year", mon_per_year, "One row per (year, month) instead of pooling calendar months");
  month_report->add_option("--out", mon_out, "Output CSV")->required();

  // emotions -------------------------------------------------------------------
  std::string emo_tallies, emo_sweep, emo_out, emo_sentiment, emo_pleasure;
  std::uint64_t emo_min = 30;
  bool emo_spearman = false;
  auto* emotions = app.add_subcommand("emotions", "Smell-emotion correlation matrix and sentiment curves");
  emotions->add_option("--tallies", emo_tallies, "Tallies snapshot")->required();
  emotions->add_option("--min-tags", emo_min, "Matrix segment threshold (default 30)");
  emotions->add_option("--sweep", emo_sweep, "Threshold sweep lo:hi:step for the curves");
  emotions->add_flag("--spearman", emo_spearman, "Spearman matrix instead of Pearson");
  emotions->add_option("--out", emo_out, "Emotion matrix CSV")->required();
  emotions->add_option("--sentiment-out", emo_sentiment, "Per-category smell-sentiment correlation CSV");
  emotions->add_option("--pleasure-out", emo_pleasure, "Pleasure-sentiment correlation curve CSV");

  // colors ---------------------------------------------------------------------
  std::string col_dataset, col_smell, col_colors, col_out, col_words, col_graph;
  std::uint64_t col_min = 10;
  auto* colors = app.add_subcommand("colors", "Color-smell association strengths");
  colors->add_option("--dataset", col_dataset, "Dataset snapshot")->required();
  colors->add_option("--smell-dict", col_smell, "Smell taxonomy CSV")->required();
  colors->add_option("--color-dict", col_colors, "Color nuance dictionary CSV")->required();
  colors->add_option("--min-photos", col_min, "Minimum co-occurrence photos (default 10)");
  colors->add_option("--out", col_out, "Category matrix CSV")->required();
  colors->add_option("--words-out", col_words, "Word-level matrix CSV");
  colors->add_option("--graph", col_graph, "Bipartite graph JSON");

  // taxonomy -------------------------------------------------------------------
  auto* taxonomy = app.add_subcommand("taxonomy", "Offline taxonomy tools");
  std::string tax_records, tax_format = "jsonl", tax_vocab, tax_out;
  double tax_resolution = 1.0;
  std::uint64_t tax_seed = 7;
  auto* tax_build = taxonomy->add_subcommand("build", "Cluster a word co-occurrence graph");
  tax_build->add_option("--records", tax_records, "Line-delimited records file")->required();
  tax_build->add_option("--format", tax_format, "Record format: jsonl or csv");
  tax_build->add_option("--vocab", tax_vocab, "Vocabulary file, one word per line")->required();
  tax_build->add_option("--resolution", tax_resolution, "Modularity resolution (default 1.0)");
  tax_build->add_option("--seed", tax_seed, "Seed recorded with the output (default 7)");
  tax_build->add_option("--out", tax_out, "Clusters JSON")->required();
  taxonomy->require_subcommand(1);

  // validate -------------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Correlate tallies against external ground data");
  std::string val_tallies, val_dataset, val_sweep = "30", val_out;
  double val_dist = 50.0;
  double val_buffer = 0.0;
  auto* val_pollution = validate->add_subcommand("pollution", "Aggregation methods vs pollutant levels");
  val_pollution->add_option("--tallies", val_tallies, "Tallies snapshot")->required();
  val_pollution->add_option("--dataset", val_dataset, "Dataset snapshot with pollutants")->required();
  val_pollution->add_option("--sweep", val_sweep, "Threshold sweep lo:hi:step (default 30)");
  val_pollution->add_option("--buffer-m", val_buffer, "Density over a corridor buffered by this radius instead of per meter");
  val_pollution->add_option("--out", val_out, "Output CSV")->required();
  auto* val_venues = validate->add_subcommand("venues", "Smell fractions vs venue counts");
  val_venues->add_option("--tallies", val_tallies, "Tallies snapshot")->required();
  val_venues->add_option("--dataset", val_dataset, "Dataset snapshot with venues")->required();
  val_venues->add_option("--sweep", val_sweep, "Threshold sweep lo:hi:step (default 30)");
  val_venues->add_option("--max-dist", val_dist, "Venue snap radius in meters (default 50)");
  val_venues->add_option("--out", val_out, "Output CSV")->required();
  validate->require_subcommand(1);

  // export ---------------------------------------------------------------------
  std::string exp_tallies, exp_layer = "pleasure", exp_colors, exp_out;
  std::uint64_t exp_min = 30;
  auto* exporter = app.add_subcommand("export", "GeoJSON map of a metric layer");
  exporter->add_option("--tallies", exp_tallies, "Tallies snapshot")->required();
  exporter->add_option("--layer", exp_layer, "pleasure, sentiment, category:NAME or emotion:NAME");
  exporter->add_option("--min-tags", exp_min, "Threshold for the z-scored layers (default 30)");
  exporter->add_option("--color-matrix", exp_colors, "colors CSV supplying category ramp colors");
  exporter->add_option("--out", exp_out, "Output GeoJSON")->required();

  CLI11_PARSE(app, argc, argv);
  ss_engine_set_threads(engine.get(), threads);

  if (ingest->parsed()) {
    if (in_rejects.empty()) in_rejects = in_out + ".rejects.csv";
    ss_ingest_params p{};
    p.records_path = in_records.c_str();
    p.records_format = in_format.c_str();
    p.streets_path = opt(in_streets);
    p.pollutants_path = opt(in_pollutants);
    p.venues_path = opt(in_venues);
    p.timezone = in_timezone.c_str();
    p.ngram_text = in_ngrams ? 1 : 0;
    p.out_dataset_path = in_out.c_str();
    p.out_rejects_path = in_rejects.c_str();
    return finish(engine.get(), ss_run_ingest(engine.get(), &p), "ingest");
  }
  if (map->parsed()) {
    ss_map_params p{};
    p.dataset_path = map_dataset.c_str();
    p.smell_dict_path = map_smell.c_str();
    p.affect_dict_path = opt(map_affect);
    p.pleasant_list_path = opt(map_pleasant);
    p.max_dist_m = map_dist;
    p.multiset_tags = map_multiset ? 1 : 0;
    p.out_tallies_path = map_out.c_str();
    p.out_report_path = opt(map_report);
    return finish(engine.get(), ss_run_map(engine.get(), &p), "map");
  }
  if (seasonality->parsed()) {
    ss_seasonality_params p{};
    p.tallies_path = sea_tallies.c_str();
    p.lag = sea_lag;
    p.out_csv_path = sea_out.c_str();
    return finish(engine.get(), ss_run_seasonality(engine.get(), &p),
                  "seasonality");
  }
  if (pleasantness->parsed()) {
    ss_pleasantness_params p{};
    p.tallies_path = ple_tallies.c_str();
    p.by = ple_by.c_str();
    p.min_tags = ple_min;
    p.out_csv_path = ple_out.c_str();
    return finish(engine.get(), ss_run_pleasantness(engine.get(), &p),
                  "pleasantness");
  }
  if (month_report->parsed()) {
    ss_month_report_params p{};
    p.tallies_path = mon_tallies.c_str();
    p.min_tags = mon_min;
    p.per_year = mon_per_year ? 1 : 0;
    p.out_csv_path = mon_out.c_str();
    return finish(engine.get(), ss_run_month_report(engine.get(), &p),
                  "month-report");
  }
  if (emotions->parsed()) {
    ss_emotions_params p{};
    p.tallies_path = emo_tallies.c_str();
    p.min_tags = emo_min;
    p.sweep = opt(emo_sweep);
    p.spearman_matrix = emo_spearman ? 1 : 0;
    p.out_matrix_path = emo_out.c_str();
    p.out_sentiment_path = opt(emo_sentiment);
    p.out_pleasure_path = opt(emo_pleasure);
    return finish(engine.get(), ss_run_emotions(engine.get(), &p), "emotions");
  }
  if (colors->parsed()) {
    ss_colors_params p{};
    p.dataset_path = col_dataset.c_str();
    p.smell_dict_path = col_smell.c_str();
    p.color_dict_path = col_colors.c_str();
    p.min_photos = col_min;
    p.out_matrix_path = col_out.c_str();
    p.out_words_path = opt(col_words);
    p.out_graph_path = opt(col_graph);
    return finish(engine.get(), ss_run_colors(engine.get(), &p), "colors");
  }
  if (taxonomy->parsed() && tax_build->parsed()) {
    ss_taxonomy_params p{};
    p.records_path = tax_records.c_str();
    p.records_format = tax_format.c_str();
    p.vocab_path = tax_vocab.c_str();
    p.resolution = tax_resolution;
    p.seed = tax_seed;
    p.out_json_path = tax_out.c_str();
    return finish(engine.get(), ss_run_taxonomy(engine.get(), &p), "taxonomy");
  }
  if (validate->parsed()) {
    ss_validate_params p{};
    p.tallies_path = val_tallies.c_str();
    p.dataset_path = val_dataset.c_str();
    p.sweep = val_sweep.c_str();
    p.max_dist_m = val_dist;
    p.buffer_m = val_buffer;
    p.out_csv_path = val_out.c_str();
    if (val_pollution->parsed())
      return finish(engine.get(), ss_run_validate_pollution(engine.get(), &p),
                    "validate pollution");
    return finish(engine.get(), ss_run_validate_venues(engine.get(), &p),
                  "validate venues");
  }
  if (exporter->parsed()) {
    ss_export_params p{};
    p.tallies_path = exp_tallies.c_str();
    p.layer = exp_layer.c_str();
    p.min_tags = exp_min;
    p.color_matrix_path = opt(exp_colors);
    p.out_geojson_path = exp_out.c_str();
    return finish(engine.get(), ss_run_export(engine.get(), &p), "export");
  }
  return static_cast<int>(SS_STATUS_INPUT_ERROR);
}
