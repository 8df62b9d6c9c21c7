/* Copyright 2026 The Smellscape Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the smellscape shared library.
 *
 * Every pipeline stage is a single call taking a parameter struct of input
 * and output paths. Calls return SS_STATUS_OK (0), SS_STATUS_INPUT_ERROR (1)
 * for anything wrong with the inputs, or SS_STATUS_INTERNAL_ERROR (2); the
 * CLI maps these directly onto exit codes. After a failure,
 * ss_engine_last_error() describes what happened.
 */

#ifndef SMELLSCAPE_H
#define SMELLSCAPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SMELLSCAPE_API __declspec(dllexport)
#else
#define SMELLSCAPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
  SS_STATUS_OK = 0,
  SS_STATUS_INPUT_ERROR = 1,
  SS_STATUS_INTERNAL_ERROR = 2
} ss_status;

/* Opaque handle holding per-run configuration and the last error message. */
typedef struct ss_engine ss_engine;

SMELLSCAPE_API const char* ss_version(void);

SMELLSCAPE_API ss_engine* ss_engine_new(void);
SMELLSCAPE_API void ss_engine_free(ss_engine* engine);

/* Message for the most recent failed call on this engine; empty string when
 * the last call succeeded. The pointer stays valid until the next call. */
SMELLSCAPE_API const char* ss_engine_last_error(const ss_engine* engine);

/* Worker threads for the data-parallel stages. Values < 1 mean 1. Results
 * are identical for every thread count. */
SMELLSCAPE_API void ss_engine_set_threads(ss_engine* engine, int threads);

/* Writes the normalized form of a raw tag into out (NUL-terminated,
 * truncated to out_size). Returns the untruncated length. */
SMELLSCAPE_API size_t ss_normalize_tag(const char* raw, char* out,
                                       size_t out_size);

/* --- ingest: parse raw inputs into a dataset snapshot -------------------- */

typedef struct ss_ingest_params {
  const char* records_path;     /* required; line-delimited records */
  const char* records_format;   /* "jsonl" (default) or "csv" */
  const char* streets_path;     /* optional GeoJSON street network */
  const char* pollutants_path;  /* optional CSV segment_id,no2,pm10,pm25 */
  const char* venues_path;      /* optional CSV lat,lon,kind */
  const char* timezone;         /* "UTC" (default) or fixed offset "+HH:MM" */
  int ngram_text;               /* nonzero: split tag text into n-grams, n <= 3 */
  const char* out_dataset_path; /* required; binary snapshot */
  const char* out_rejects_path; /* optional CSV of rejected lines */
} ss_ingest_params;

SMELLSCAPE_API ss_status ss_run_ingest(ss_engine* engine,
                                       const ss_ingest_params* params);

/* --- map: snap records to segments and build monthly tallies ------------- */

typedef struct ss_map_params {
  const char* dataset_path;       /* required */
  const char* smell_dict_path;    /* required */
  const char* affect_dict_path;   /* optional */
  const char* pleasant_list_path; /* optional */
  double max_dist_m;              /* <= 0 means the 50 m default */
  int multiset_tags;              /* nonzero: duplicate tags count per copy */
  const char* out_tallies_path;   /* required */
  const char* out_report_path;    /* optional CSV snap summary */
} ss_map_params;

SMELLSCAPE_API ss_status ss_run_map(ss_engine* engine,
                                    const ss_map_params* params);

/* --- analyses over a tallies snapshot ------------------------------------ */

typedef struct ss_seasonality_params {
  const char* tallies_path;
  int lag;                /* <= 0 means 12 */
  const char* out_csv_path;
} ss_seasonality_params;

SMELLSCAPE_API ss_status ss_run_seasonality(ss_engine* engine,
                                            const ss_seasonality_params* params);

typedef struct ss_pleasantness_params {
  const char* tallies_path;
  const char* by;           /* "month" or "segment" */
  uint64_t min_tags;        /* segment population threshold, default 30 */
  const char* out_csv_path;
} ss_pleasantness_params;

SMELLSCAPE_API ss_status ss_run_pleasantness(
    ss_engine* engine, const ss_pleasantness_params* params);

typedef struct ss_month_report_params {
  const char* tallies_path;
  uint64_t min_tags; /* per-month segment threshold, default 30 */
  int per_year;      /* nonzero: one row per (year, month), no pooling */
  const char* out_csv_path;
} ss_month_report_params;

SMELLSCAPE_API ss_status ss_run_month_report(
    ss_engine* engine, const ss_month_report_params* params);

typedef struct ss_emotions_params {
  const char* tallies_path;
  uint64_t min_tags;               /* matrix threshold, default 30 */
  const char* sweep;               /* "lo:hi:step" for threshold curves, optional */
  int spearman_matrix;             /* nonzero: Spearman instead of Pearson */
  const char* out_matrix_path;     /* required; smell x emotion matrix CSV */
  const char* out_sentiment_path;  /* optional; per-category correlation CSV */
  const char* out_pleasure_path;   /* optional; pleasure-sentiment curve CSV */
} ss_emotions_params;

SMELLSCAPE_API ss_status ss_run_emotions(ss_engine* engine,
                                         const ss_emotions_params* params);

/* --- colors: co-occurrence association strengths from the raw dataset ---- */

typedef struct ss_colors_params {
  const char* dataset_path;    /* required */
  const char* smell_dict_path; /* required */
  const char* color_dict_path; /* required */
  uint64_t min_photos;         /* 0 means the 10-photo default */
  const char* out_matrix_path; /* required; category matrix CSV */
  const char* out_words_path;  /* optional; word-level matrix CSV */
  const char* out_graph_path;  /* optional; bipartite graph JSON */
} ss_colors_params;

SMELLSCAPE_API ss_status ss_run_colors(ss_engine* engine,
                                       const ss_colors_params* params);

/* --- taxonomy builder ----------------------------------------------------- */

typedef struct ss_taxonomy_params {
  const char* records_path;   /* required; line-delimited records */
  const char* records_format; /* "jsonl" (default) or "csv" */
  const char* vocab_path;     /* required; one word per line */
  double resolution;          /* <= 0 means 1.0 */
  uint64_t seed;
  const char* out_json_path;  /* required */
} ss_taxonomy_params;

SMELLSCAPE_API ss_status ss_run_taxonomy(ss_engine* engine,
                                         const ss_taxonomy_params* params);

/* --- validation studies --------------------------------------------------- */

typedef struct ss_validate_params {
  const char* tallies_path; /* required */
  const char* dataset_path; /* required; source of pollutants / venues */
  const char* sweep;        /* optional threshold sweep, default "30" */
  double max_dist_m;        /* venues only; <= 0 means 50 */
  double buffer_m;          /* pollution only; > 0 switches the density
                               aggregation to a buffered-corridor area */
  const char* out_csv_path; /* required */
} ss_validate_params;

SMELLSCAPE_API ss_status ss_run_validate_pollution(
    ss_engine* engine, const ss_validate_params* params);
SMELLSCAPE_API ss_status ss_run_validate_venues(
    ss_engine* engine, const ss_validate_params* params);

/* --- map export ------------------------------------------------------------ */

typedef struct ss_export_params {
  const char* tallies_path;      /* required */
  const char* layer;             /* "pleasure", "sentiment", "category:NAME",
                                    "emotion:NAME" */
  uint64_t min_tags;             /* threshold for the z-scored layers */
  const char* color_matrix_path; /* optional colors CSV for category ramps */
  const char* out_geojson_path;  /* required */
} ss_export_params;

SMELLSCAPE_API ss_status ss_run_export(ss_engine* engine,
                                       const ss_export_params* params);

#ifdef __cplusplus
}
#endif

#endif /* SMELLSCAPE_H */
