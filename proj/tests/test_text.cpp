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

#include <doctest.h>

#include "smellscape/rng.hpp"
#include "smellscape/text.hpp"

using namespace smellscape;

TEST_CASE("normalize_tag handles separators, case and camel-case") {
  CHECK(normalize_tag("Cut_Grass") == "cut grass");
  CHECK(normalize_tag("GASOLINE") == "gasoline");
  CHECK(normalize_tag("gasoline") == "gasoline");
  CHECK(normalize_tag("CutGrass") == "cut grass");
  CHECK(normalize_tag("cut-grass") == "cut grass");
  CHECK(normalize_tag("  cut   grass  ") == "cut grass");
  CHECK(normalize_tag("cut__grass") == "cut grass");
  CHECK(normalize_tag("streetArt") == "street art");
  CHECK(normalize_tag("") == "");
  CHECK(normalize_tag("   ") == "");
  CHECK(normalize_tag("_-_") == "");
}

TEST_CASE("normalize_tag is idempotent on random inputs") {
  Rng rng(42);
  const std::string alphabet =
      "abcXYZ_- \tGHijkl0123\xc3\xa9";  // includes a UTF-8 e-acute
  for (int i = 0; i < 500; ++i) {
    std::string raw;
    const std::size_t len = rng.next_below(24);
    for (std::size_t k = 0; k < len; ++k)
      raw.push_back(alphabet[rng.next_below(alphabet.size())]);
    const std::string once = normalize_tag(raw);
    CHECK(normalize_tag(once) == once);
  }
}

TEST_CASE("split_words splits normalized strings") {
  CHECK(split_words("cut grass") == std::vector<std::string>{"cut", "grass"});
  CHECK(split_words("soil") == std::vector<std::string>{"soil"});
  CHECK(split_words("").empty());
}

TEST_CASE("ngrams emits contiguous runs up to n") {
  const std::vector<std::string> words = {"fresh", "cut", "grass"};
  const auto grams = ngrams(words, 3);
  const std::vector<std::string> expected = {
      "fresh", "fresh cut", "fresh cut grass", "cut", "cut grass", "grass"};
  CHECK(grams == expected);

  CHECK(ngrams({}, 3).empty());
  CHECK(ngrams({"solo"}, 3) == std::vector<std::string>{"solo"});
}

TEST_CASE("split_fields keeps empty fields") {
  const auto fields = split_fields("a,,c", ',');
  REQUIRE(fields.size() == 3);
  CHECK(fields[0] == "a");
  CHECK(fields[1] == "");
  CHECK(fields[2] == "c");
}
