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

#include <stdexcept>
#include <string>

namespace smellscape {

// Every recoverable failure in the library throws Error with one of these
// codes. The C API maps them onto SS_STATUS_INPUT_ERROR; anything else that
// escapes (std::bad_alloc, logic bugs) maps onto SS_STATUS_INTERNAL_ERROR.
enum class errc {
  duplicate_word,
  unknown_category,
  unknown_color,
  malformed_row,
  malformed_record,
  duplicate_segment_id,
  degenerate_geometry,
  zero_variance,
  length_mismatch,
  too_few_points,
  not_a_distribution,
  series_too_short,
  month_empty,
  no_qualifying_colors,
  empty_category,
  empty_graph,
  unknown_layer,
  bad_argument,
  io_error,
  bad_format,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace smellscape
