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

#include "smellscape/text.hpp"

#include <cctype>

namespace smellscape {

namespace {

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_separator(char c) {
  return c == '_' || c == '-' || std::isspace(static_cast<unsigned char>(c));
}

}  // namespace

std::string normalize_tag(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  char prev = '\0';
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (is_separator(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      prev = '\0';
      continue;
    }
    // Camel-case boundary: a lower-to-upper transition starts a new word.
    // All-caps runs ("GASOLINE") stay one word.
    if (is_ascii_upper(c) && is_ascii_lower(prev)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    }
    prev = c;
    if (is_ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start < normalized.size()) {
    std::size_t end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) words.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

std::vector<std::string> ngrams(const std::vector<std::string>& words,
                                std::size_t max_n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string gram;
    for (std::size_t n = 0; n < max_n && i + n < words.size(); ++n) {
      if (n > 0) gram.push_back(' ');
      gram += words[i + n];
      out.push_back(gram);
    }
  }
  return out;
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(delim, start);
    if (end == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace smellscape
