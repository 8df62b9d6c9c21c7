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

#include <sstream>

#include "smellscape/error.hpp"
#include "smellscape/lexicon.hpp"

using namespace smellscape;

namespace {

const char* kMiniTaxonomy =
    "#categories: emissions,nature,waste\n"
    "emissions,fuel,gasoline\n"
    "emissions,fuel,petrol\n"
    "emissions,traffic,traffic\n"
    "nature,grass,cut grass\n"
    "nature,grass,grass\n"
    "nature,flowers,violet\n"
    "waste,,rubbish\n";

SmellTaxonomy mini_taxonomy() {
  std::istringstream in(kMiniTaxonomy);
  return SmellTaxonomy::load(in);
}

std::string data_path(const char* name) {
  return std::string(SMELLSCAPE_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("taxonomy load and lookup") {
  LoadReport report;
  std::istringstream in(kMiniTaxonomy);
  const auto tax = SmellTaxonomy::load(in, &report);

  CHECK(report.entries == 7);
  CHECK(tax.categories() ==
        std::vector<std::string>{"emissions", "nature", "waste"});

  const auto entry = classify_tag("gasoline", tax);
  REQUIRE(entry.has_value());
  CHECK(tax.categories()[entry->category] == "emissions");
  CHECK(entry->subcategory == "fuel");

  CHECK_FALSE(classify_tag("skyscraper", tax).has_value());
  // Case and separator normalization reach the same entry.
  const auto upper = classify_tag("GASOLINE", tax);
  REQUIRE(upper.has_value());
  CHECK(upper->category == entry->category);

  const auto grass = classify_tag("Cut_Grass", tax);
  REQUIRE(grass.has_value());
  CHECK(tax.categories()[grass->category] == "nature");
}

TEST_CASE("taxonomy load errors") {
  SUBCASE("duplicate word") {
    std::istringstream in("emissions,fuel,petrol\nemissions,fuel,petrol\n");
    CHECK_THROWS_AS((void)SmellTaxonomy::load(in), Error);
    std::istringstream again("emissions,fuel,petrol\nnature,,petrol\n");
    try {
      (void)SmellTaxonomy::load(again);
      FAIL("expected DuplicateWord");
    } catch (const Error& e) {
      CHECK(e.code() == errc::duplicate_word);
    }
  }
  SUBCASE("unknown category with declaration") {
    std::istringstream in("#categories: nature\nwaste,,rubbish\n");
    try {
      (void)SmellTaxonomy::load(in);
      FAIL("expected UnknownCategory");
    } catch (const Error& e) {
      CHECK(e.code() == errc::unknown_category);
    }
  }
  SUBCASE("malformed row") {
    std::istringstream in("nature\n");
    try {
      (void)SmellTaxonomy::load(in);
      FAIL("expected MalformedRow");
    } catch (const Error& e) {
      CHECK(e.code() == errc::malformed_row);
    }
  }
  SUBCASE("empty file warns, zero entries") {
    LoadReport report;
    std::istringstream in("");
    const auto tax = SmellTaxonomy::load(in, &report);
    CHECK(tax.size() == 0);
    CHECK(report.entries == 0);
    CHECK_FALSE(report.warnings.empty());
  }
}

TEST_CASE("affect lexicon classification") {
  std::istringstream in(
      "sunny,positive,\n"
      "lovely,positive,joy;trust\n"
      "waiting,,anticipation\n"
      "gross,negative,disgust\n");
  const auto lex = AffectLexicon::load(in);

  const auto positive_only = classify_affect("sunny", lex);
  REQUIRE(positive_only.polarity.has_value());
  CHECK(*positive_only.polarity == Polarity::positive);
  CHECK(positive_only.emotions.none());

  const auto multi = classify_affect("Lovely", lex);
  REQUIRE(multi.polarity.has_value());
  CHECK(multi.emotions.count() == 2);
  CHECK(multi.emotions.test(*emotion_index("joy")));
  CHECK(multi.emotions.test(*emotion_index("trust")));

  const auto emotions_only = classify_affect("waiting", lex);
  CHECK_FALSE(emotions_only.polarity.has_value());
  CHECK(emotions_only.emotions.test(*emotion_index("anticipation")));

  const auto unlisted = classify_affect("zebra", lex);
  CHECK_FALSE(unlisted.polarity.has_value());
  CHECK(unlisted.emotions.none());
}

TEST_CASE("affect lexicon rejects conflicts and unknown emotions") {
  std::istringstream conflict("word,positive,\nword,negative,\n");
  CHECK_THROWS_AS((void)AffectLexicon::load(conflict), Error);
  std::istringstream unknown("word,positive,elation\n");
  CHECK_THROWS_AS((void)AffectLexicon::load(unknown), Error);
}

TEST_CASE("color lexicon lookups") {
  std::istringstream in("crimson,red\nnavy,blue\n");
  const auto lex = ColorLexicon::load(in);

  CHECK(classify_color("crimson", lex) == color_index("red"));
  // Canonical colors map to themselves without explicit rows.
  CHECK(classify_color("red", lex) == color_index("red"));
  CHECK_FALSE(classify_color("sound", lex).has_value());

  std::istringstream bad("lilac,purple_haze\n");
  CHECK_THROWS_AS((void)ColorLexicon::load(bad), Error);
  std::istringstream twice("lilac,violet\nlilac,blue\n");
  CHECK_THROWS_AS((void)ColorLexicon::load(twice), Error);
}

TEST_CASE("shipped color dictionary resolves crimson") {
  const auto lex = ColorLexicon::load_file(data_path("color_nuances.csv"));
  CHECK(classify_color("crimson", lex) == color_index("red"));
  CHECK(lex.size() > 150);
}

TEST_CASE("pleasantness lists are disjoint") {
  std::istringstream in("grass,pleasant\ntraffic,unpleasant\n");
  const auto lists = PleasantnessLists::load(in);
  CHECK(lists.is_pleasant("grass"));
  CHECK_FALSE(lists.is_unpleasant("grass"));
  CHECK(lists.is_unpleasant("traffic"));
  CHECK_FALSE(lists.is_pleasant("skyscraper"));
  CHECK_FALSE(lists.is_unpleasant("skyscraper"));

  std::istringstream overlap("grass,pleasant\ngrass,unpleasant\n");
  CHECK_THROWS_AS((void)PleasantnessLists::load(overlap), Error);
}

TEST_CASE("shipped lexicons load and satisfy their invariants") {
  const auto tax = SmellTaxonomy::load_file(data_path("smell_dictionary.csv"));
  CHECK(tax.categories().size() == 10);
  CHECK(tax.size() > 200);
  const auto fuel = classify_tag("gasoline", tax);
  REQUIRE(fuel.has_value());
  CHECK(tax.categories()[fuel->category] == "emissions");
  CHECK(fuel->subcategory == "fuel");

  const auto lists =
      PleasantnessLists::load_file(data_path("pleasantness.csv"));
  CHECK(lists.pleasant().size() > 40);
  CHECK(lists.unpleasant().size() > 40);
  // XOR: membership in pleasant or unpleasant, never both.
  for (const auto& word : lists.pleasant())
    CHECK_FALSE(lists.is_unpleasant(word));
  for (const auto& word : lists.unpleasant())
    CHECK_FALSE(lists.is_pleasant(word));

  const auto affect = AffectLexicon::load_file(data_path("affect_lexicon.csv"));
  CHECK(affect.size() > 100);
}

TEST_CASE("lexicon serialize-reload round trip") {
  const auto tax = mini_taxonomy();
  std::ostringstream serialized;
  tax.serialize(serialized);
  std::istringstream in(serialized.str());
  const auto again = SmellTaxonomy::load(in);
  CHECK(again.size() == tax.size());
  CHECK(again.categories() == tax.categories());
  for (const auto& [word, entry] : tax.entries()) {
    const auto* reloaded = again.find(word);
    REQUIRE(reloaded != nullptr);
    CHECK(reloaded->category == entry.category);
    CHECK(reloaded->subcategory == entry.subcategory);
  }

  std::istringstream affect_src(
      "lovely,positive,joy;trust\nwaiting,,anticipation\n");
  const auto affect = AffectLexicon::load(affect_src);
  std::ostringstream affect_out;
  affect.serialize(affect_out);
  std::istringstream affect_in(affect_out.str());
  const auto affect_again = AffectLexicon::load(affect_in);
  CHECK(affect_again.size() == affect.size());
  for (const auto& [word, entry] : affect.entries()) {
    const auto* reloaded = affect_again.find(word);
    REQUIRE(reloaded != nullptr);
    CHECK(reloaded->polarity == entry.polarity);
    CHECK(reloaded->emotions == entry.emotions);
  }

  std::istringstream color_src("crimson,red\nnavy,blue\n");
  const auto colors = ColorLexicon::load(color_src);
  std::ostringstream color_out;
  colors.serialize(color_out);
  std::istringstream color_in(color_out.str());
  const auto colors_again = ColorLexicon::load(color_in);
  for (const auto& [nuance, idx] : colors.nuances())
    CHECK(colors_again.find(nuance) == idx);

  std::istringstream lists_src("grass,pleasant\ntraffic,unpleasant\n");
  const auto lists = PleasantnessLists::load(lists_src);
  std::ostringstream lists_out;
  lists.serialize(lists_out);
  std::istringstream lists_in(lists_out.str());
  const auto lists_again = PleasantnessLists::load(lists_in);
  CHECK(lists_again.pleasant() == lists.pleasant());
  CHECK(lists_again.unpleasant() == lists.unpleasant());
}
