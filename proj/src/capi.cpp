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

#include "smellscape.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "smellscape/affect.hpp"
#include "smellscape/chroma.hpp"
#include "smellscape/error.hpp"
#include "smellscape/geo.hpp"
#include "smellscape/ingest.hpp"
#include "smellscape/lexicon.hpp"
#include "smellscape/report.hpp"
#include "smellscape/smellmetrics.hpp"
#include "smellscape/stats.hpp"
#include "smellscape/tally.hpp"
#include "smellscape/taxonomy.hpp"
#include "smellscape/text.hpp"

struct ss_engine {
  std::string last_error;
  int threads = 1;
};

namespace {

using namespace smellscape;

constexpr double kDefaultSnapDistM = 50.0;
constexpr std::uint64_t kDefaultMinTags = 30;
constexpr std::uint64_t kDefaultMinPhotos = 10;

std::string str_or(const char* value, const char* fallback) {
  return value && *value ? value : fallback;
}

template <typename Fn>
ss_status guarded(ss_engine* engine, Fn&& fn) {
  if (!engine) return SS_STATUS_INTERNAL_ERROR;
  engine->last_error.clear();
  try {
    fn();
    return SS_STATUS_OK;
  } catch (const Error& e) {
    engine->last_error = e.what();
    return SS_STATUS_INPUT_ERROR;
  } catch (const std::exception& e) {
    engine->last_error = std::string("internal: ") + e.what();
    return SS_STATUS_INTERNAL_ERROR;
  }
}

const char* require(const char* value, const char* name) {
  if (!value || !*value)
    throw Error(errc::bad_argument, std::string(name) + " is required");
  return value;
}

RecordFormat parse_format(const char* format) {
  const std::string f = str_or(format, "jsonl");
  if (f == "jsonl") return RecordFormat::jsonl;
  if (f == "csv") return RecordFormat::csv;
  throw Error(errc::bad_argument, "unknown record format '" + f + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(errc::io_error, "cannot write " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(errc::io_error, "failed writing " + path);
}

TallySet load_tallies(const char* path) {
  return read_tallies(require(path, "tallies_path"));
}

// Dominant color per category from a previously written color matrix CSV.
std::map<std::string, std::size_t> read_dominant_colors(
    const std::string& path) {
  std::ifstream in = open_input(path);
  std::map<std::string, std::size_t> dominant;
  std::string line;
  bool header_seen = false;
  std::vector<std::size_t> strength_cols;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, ',');
    if (!header_seen) {
      header_seen = true;
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i].rfind("strength_", 0) == 0) strength_cols.push_back(i);
      if (strength_cols.size() != kColorCount)
        throw Error(errc::bad_format,
                    path + " is not a color matrix (bad header)");
      continue;
    }
    if (fields.size() <= strength_cols.back()) continue;
    std::size_t best = 0;
    double best_strength = -1.0;
    for (std::size_t c = 0; c < kColorCount; ++c) {
      const double v = std::strtod(fields[strength_cols[c]].c_str(), nullptr);
      if (v > best_strength) {
        best_strength = v;
        best = c;
      }
    }
    dominant.emplace(fields[0], best);
  }
  return dominant;
}

}  // namespace

extern "C" {

const char* ss_version(void) {
  return smellscape::report::kToolVersion.data();
}

ss_engine* ss_engine_new(void) { return new (std::nothrow) ss_engine(); }

void ss_engine_free(ss_engine* engine) { delete engine; }

const char* ss_engine_last_error(const ss_engine* engine) {
  return engine ? engine->last_error.c_str() : "null engine";
}

void ss_engine_set_threads(ss_engine* engine, int threads) {
  if (engine) engine->threads = threads < 1 ? 1 : threads;
}

size_t ss_normalize_tag(const char* raw, char* out, size_t out_size) {
  const std::string normalized = smellscape::normalize_tag(raw ? raw : "");
  if (out && out_size > 0) {
    const size_t n = std::min(out_size - 1, normalized.size());
    std::memcpy(out, normalized.data(), n);
    out[n] = '\0';
  }
  return normalized.size();
}

ss_status ss_run_ingest(ss_engine* engine, const ss_ingest_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    Dataset dataset;
    dataset.timezone = Timezone::parse(str_or(params->timezone, "UTC"));

    ParseReport records_report;
    {
      auto in = open_input(require(params->records_path, "records_path"));
      dataset.records = parse_records(in, parse_format(params->records_format),
                                      records_report);
    }
    if (params->ngram_text) expand_tags_to_ngrams(dataset.records, 3);

    if (params->streets_path && *params->streets_path) {
      auto in = open_input(params->streets_path);
      dataset.streets = parse_street_network(in);
    }
    ParseReport pollutants_report;
    if (params->pollutants_path && *params->pollutants_path) {
      auto in = open_input(params->pollutants_path);
      dataset.pollutants = parse_pollutants(in, pollutants_report);
    }
    ParseReport venues_report;
    if (params->venues_path && *params->venues_path) {
      auto in = open_input(params->venues_path);
      dataset.venues = parse_venues(in, venues_report);
    }

    write_dataset(dataset, require(params->out_dataset_path, "out_dataset_path"));

    if (params->out_rejects_path && *params->out_rejects_path) {
      auto out = open_output(params->out_rejects_path);
      out << "source,line,reason\n";
      auto append = [&out](const char* source, const ParseReport& rep) {
        for (const auto& reject : rep.rejects) {
          std::string reason = reject.reason;
          for (char& c : reason)
            if (c == ',' || c == '\n') c = ';';
          out << source << ',' << reject.line_no << ',' << reason << '\n';
        }
      };
      append("records", records_report);
      append("pollutants", pollutants_report);
      append("venues", venues_report);
      finish_output(out, params->out_rejects_path);
    }
  });
}

ss_status ss_run_map(ss_engine* engine, const ss_map_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const Dataset dataset = read_dataset(require(params->dataset_path,
                                                 "dataset_path"));
    Lexicons lexicons;
    LoadReport smell_report, affect_report, pleasant_report;
    lexicons.taxonomy = SmellTaxonomy::load_file(
        require(params->smell_dict_path, "smell_dict_path"), &smell_report);
    if (params->affect_dict_path && *params->affect_dict_path)
      lexicons.affect =
          AffectLexicon::load_file(params->affect_dict_path, &affect_report);
    if (params->pleasant_list_path && *params->pleasant_list_path)
      lexicons.pleasantness = PleasantnessLists::load_file(
          params->pleasant_list_path, &pleasant_report);

    SegmentIndex index(dataset.streets);
    AggregateOptions options;
    options.max_dist_m =
        params->max_dist_m > 0.0 ? params->max_dist_m : kDefaultSnapDistM;
    options.multiset_tags = params->multiset_tags != 0;
    options.threads = engine->threads;

    const TallySet tallies = aggregate(dataset.records, index, lexicons,
                                       dataset.timezone, options);
    write_tallies(tallies, require(params->out_tallies_path,
                                   "out_tallies_path"));

    if (params->out_report_path && *params->out_report_path) {
      auto out = open_output(params->out_report_path);
      out << "records_total,records_snapped,records_unsnapped,max_dist_m,"
             "segments_with_records,smell_words,affect_words,"
             "pleasantness_words\n";
      out << tallies.records_total << ',' << tallies.records_snapped << ','
          << tallies.records_unsnapped << ','
          << report::fixed6(tallies.max_dist_m) << ','
          << tallies.segments.size() << ',' << smell_report.entries << ','
          << affect_report.entries << ',' << pleasant_report.entries << '\n';
      finish_output(out, params->out_report_path);
    }
  });
}

ss_status ss_run_seasonality(ss_engine* engine,
                             const ss_seasonality_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);
    const std::size_t lag = params->lag > 0 ? static_cast<std::size_t>(params->lag) : 12;

    report::Provenance provenance;
    provenance.add("command", "seasonality");
    provenance.add("lag", std::to_string(lag));
    provenance.add_file("tallies", params->tallies_path);

    auto out = open_output(require(params->out_csv_path, "out_csv_path"));
    report::write_seasonality_csv(tallies, lag, provenance, out);
    finish_output(out, params->out_csv_path);
  });
}

ss_status ss_run_pleasantness(ss_engine* engine,
                              const ss_pleasantness_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);
    const std::string by = str_or(params->by, "month");
    const std::uint64_t min_tags =
        params->min_tags > 0 ? params->min_tags : kDefaultMinTags;

    report::Provenance provenance;
    provenance.add("command", "pleasantness");
    provenance.add("by", by);
    provenance.add_file("tallies", params->tallies_path);

    auto out = open_output(require(params->out_csv_path, "out_csv_path"));
    if (by == "month") {
      report::write_pleasantness_month_csv(tallies, provenance, out);
    } else if (by == "segment") {
      provenance.add("min_tags", std::to_string(min_tags));
      report::write_pleasantness_segment_csv(tallies, min_tags, provenance, out);
    } else {
      throw Error(errc::bad_argument, "by must be 'month' or 'segment'");
    }
    finish_output(out, params->out_csv_path);
  });
}

ss_status ss_run_month_report(ss_engine* engine,
                              const ss_month_report_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);
    const std::uint64_t min_tags =
        params->min_tags > 0 ? params->min_tags : kDefaultMinTags;

    report::Provenance provenance;
    provenance.add("command", "month-report");
    provenance.add("min_tags", std::to_string(min_tags));
    provenance.add("per_year", params->per_year ? "true" : "false");
    provenance.add_file("tallies", params->tallies_path);

    auto out = open_output(require(params->out_csv_path, "out_csv_path"));
    if (params->per_year)
      report::write_month_report_per_year_csv(tallies, min_tags, provenance,
                                              out);
    else
      report::write_month_report_csv(tallies, min_tags, provenance, out);
    finish_output(out, params->out_csv_path);
  });
}

ss_status ss_run_emotions(ss_engine* engine, const ss_emotions_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);
    const std::uint64_t min_tags =
        params->min_tags > 0 ? params->min_tags : kDefaultMinTags;
    const std::vector<std::uint64_t> thresholds =
        params->sweep && *params->sweep ? report::parse_sweep(params->sweep)
                                        : std::vector<std::uint64_t>{min_tags};

    report::Provenance provenance;
    provenance.add("command", "emotions");
    provenance.add("min_tags", std::to_string(min_tags));
    provenance.add("statistic", params->spearman_matrix ? "spearman" : "pearson");
    provenance.add_file("tallies", params->tallies_path);

    const auto matrix = affect::emotion_matrix(tallies, min_tags,
                                               params->spearman_matrix != 0);
    {
      auto out = open_output(require(params->out_matrix_path,
                                     "out_matrix_path"));
      report::Provenance p = provenance;
      p.add("n_segments", std::to_string(matrix.n_segments));
      report::write_emotion_matrix_csv(matrix, p, out);
      finish_output(out, params->out_matrix_path);
    }
    if (params->out_sentiment_path && *params->out_sentiment_path) {
      const auto rows = affect::correlate_smell_sentiment(tallies, thresholds);
      auto out = open_output(params->out_sentiment_path);
      report::write_smell_sentiment_csv(rows, provenance, out);
      finish_output(out, params->out_sentiment_path);
    }
    if (params->out_pleasure_path && *params->out_pleasure_path) {
      const auto points = affect::correlate_pleasure_sentiment(tallies,
                                                               thresholds);
      auto out = open_output(params->out_pleasure_path);
      report::write_pleasure_sentiment_csv(points, provenance, out);
      finish_output(out, params->out_pleasure_path);
    }
  });
}

ss_status ss_run_colors(ss_engine* engine, const ss_colors_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const Dataset dataset = read_dataset(require(params->dataset_path,
                                                 "dataset_path"));
    const auto taxonomy =
        SmellTaxonomy::load_file(require(params->smell_dict_path,
                                         "smell_dict_path"));
    const auto colors =
        ColorLexicon::load_file(require(params->color_dict_path,
                                        "color_dict_path"));
    const std::uint64_t min_photos =
        params->min_photos > 0 ? params->min_photos : kDefaultMinPhotos;

    const auto assoc = chroma::build_associations(dataset.records, taxonomy,
                                                  colors, min_photos);

    report::Provenance provenance;
    provenance.add("command", "colors");
    provenance.add("min_photos", std::to_string(min_photos));
    provenance.add_file("dataset", params->dataset_path);
    provenance.add_file("smell_dict", params->smell_dict_path);
    provenance.add_file("color_dict", params->color_dict_path);

    {
      auto out = open_output(require(params->out_matrix_path,
                                     "out_matrix_path"));
      report::write_color_matrix_csv(assoc, provenance, out);
      finish_output(out, params->out_matrix_path);
    }
    if (params->out_words_path && *params->out_words_path) {
      auto out = open_output(params->out_words_path);
      report::write_word_color_csv(assoc, provenance, out);
      finish_output(out, params->out_words_path);
    }
    if (params->out_graph_path && *params->out_graph_path) {
      auto out = open_output(params->out_graph_path);
      report::write_color_graph_json(assoc, provenance, out);
      finish_output(out, params->out_graph_path);
    }
  });
}

ss_status ss_run_taxonomy(ss_engine* engine, const ss_taxonomy_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    ParseReport report;
    std::vector<GeoTaggedRecord> records;
    {
      auto in = open_input(require(params->records_path, "records_path"));
      records = parse_records(in, parse_format(params->records_format), report);
    }
    std::unordered_set<std::string> vocabulary;
    {
      auto in = open_input(require(params->vocab_path, "vocab_path"));
      std::string line;
      while (std::getline(in, line)) {
        std::string word = normalize_tag(line);
        if (!word.empty()) vocabulary.insert(std::move(word));
      }
    }
    if (vocabulary.empty())
      throw Error(errc::bad_argument, "vocabulary is empty");

    const double resolution =
        params->resolution > 0.0 ? params->resolution : 1.0;
    const auto graph = taxonomy::build_graph(records, vocabulary);
    const auto partition = taxonomy::cluster(graph, resolution, params->seed);

    report::Provenance provenance;
    provenance.add("command", "taxonomy build");
    provenance.add("resolution", report::fixed6(resolution));
    provenance.add("seed", std::to_string(params->seed));
    provenance.add_file("records", params->records_path);
    provenance.add_file("vocab", params->vocab_path);

    auto out = open_output(require(params->out_json_path, "out_json_path"));
    report::write_clusters_json(graph, partition, resolution, params->seed,
                                provenance, out);
    finish_output(out, params->out_json_path);
  });
}

ss_status ss_run_validate_pollution(ss_engine* engine,
                                    const ss_validate_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);
    const Dataset dataset = read_dataset(require(params->dataset_path,
                                                 "dataset_path"));
    const auto thresholds = report::parse_sweep(str_or(params->sweep, "30"));

    report::Provenance provenance;
    provenance.add("command", "validate pollution");
    if (params->buffer_m > 0.0)
      provenance.add("buffer_m", report::fixed6(params->buffer_m));
    provenance.add_file("tallies", params->tallies_path);
    provenance.add_file("dataset", params->dataset_path);

    const auto cells = report::validate_pollution(
        tallies, dataset.pollutants, thresholds, params->buffer_m);
    auto out = open_output(require(params->out_csv_path, "out_csv_path"));
    report::write_pollution_csv(cells, provenance, out);
    finish_output(out, params->out_csv_path);
  });
}

ss_status ss_run_validate_venues(ss_engine* engine,
                                 const ss_validate_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);
    const Dataset dataset = read_dataset(require(params->dataset_path,
                                                 "dataset_path"));
    const auto thresholds = report::parse_sweep(str_or(params->sweep, "30"));
    const double max_dist =
        params->max_dist_m > 0.0 ? params->max_dist_m : kDefaultSnapDistM;

    report::Provenance provenance;
    provenance.add("command", "validate venues");
    provenance.add("max_dist_m", report::fixed6(max_dist));
    provenance.add_file("tallies", params->tallies_path);
    provenance.add_file("dataset", params->dataset_path);

    const auto cells =
        report::validate_venues(tallies, dataset.venues, max_dist, thresholds);
    auto out = open_output(require(params->out_csv_path, "out_csv_path"));
    report::write_venues_csv(cells, provenance, out);
    finish_output(out, params->out_csv_path);
  });
}

ss_status ss_run_export(ss_engine* engine, const ss_export_params* params) {
  return guarded(engine, [&] {
    if (!params) throw Error(errc::bad_argument, "null params");
    const TallySet tallies = load_tallies(params->tallies_path);

    report::ExportOptions options;
    options.min_tags = params->min_tags > 0 ? params->min_tags : kDefaultMinTags;
    const std::string layer = str_or(params->layer, "pleasure");
    if (layer == "pleasure") {
      options.layer = report::MapLayer::pleasure;
    } else if (layer == "sentiment") {
      options.layer = report::MapLayer::sentiment;
    } else if (layer.rfind("category:", 0) == 0) {
      options.layer = report::MapLayer::category;
      options.name = layer.substr(9);
    } else if (layer.rfind("emotion:", 0) == 0) {
      options.layer = report::MapLayer::emotion;
      options.name = layer.substr(8);
    } else {
      throw Error(errc::unknown_layer, "'" + layer + "'");
    }
    if (params->color_matrix_path && *params->color_matrix_path)
      options.dominant_colors = read_dominant_colors(params->color_matrix_path);

    report::Provenance provenance;
    provenance.add("command", "export");
    provenance.add("layer", layer);
    provenance.add("min_tags", std::to_string(options.min_tags));
    provenance.add_file("tallies", params->tallies_path);

    auto out = open_output(require(params->out_geojson_path,
                                   "out_geojson_path"));
    report::export_geojson(tallies, options, provenance, out);
    finish_output(out, params->out_geojson_path);
  });
}

}  // extern "C"
