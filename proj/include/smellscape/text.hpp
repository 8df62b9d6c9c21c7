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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace smellscape {

// Canonical tag form used by every lexicon lookup: ASCII-lowercased, with
// underscores, hyphens and camel-case boundaries turned into single spaces,
// runs of whitespace collapsed, and surrounding whitespace trimmed.
// Idempotent: normalize_tag(normalize_tag(x)) == normalize_tag(x).
std::string normalize_tag(std::string_view raw);

// Splits an already-normalized string on single spaces.
std::vector<std::string> split_words(std::string_view normalized);

// Contiguous n-grams (n = 1..max_n) over a token list, joined by single
// spaces. Used by the ingest text-scanning option to turn free text into
// candidate tags for exact dictionary matching.
std::vector<std::string> ngrams(const std::vector<std::string>& words,
                                std::size_t max_n);

// Splits a delimited row into fields. No quoting rules: lexicon and table
// files are plain delimited text.
std::vector<std::string> split_fields(std::string_view line, char delim);

std::string trim(std::string_view s);

}  // namespace smellscape
