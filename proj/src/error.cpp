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

#include "smellscape/error.hpp"

namespace smellscape {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::duplicate_word: return "DuplicateWord";
    case errc::unknown_category: return "UnknownCategory";
    case errc::unknown_color: return "UnknownColor";
    case errc::malformed_row: return "MalformedRow";
    case errc::malformed_record: return "MalformedRecord";
    case errc::duplicate_segment_id: return "DuplicateSegmentId";
    case errc::degenerate_geometry: return "DegenerateGeometry";
    case errc::zero_variance: return "ZeroVariance";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::too_few_points: return "TooFewPoints";
    case errc::not_a_distribution: return "NotADistribution";
    case errc::series_too_short: return "SeriesTooShort";
    case errc::month_empty: return "MonthEmpty";
    case errc::no_qualifying_colors: return "NoQualifyingColors";
    case errc::empty_category: return "EmptyCategory";
    case errc::empty_graph: return "EmptyGraph";
    case errc::unknown_layer: return "UnknownLayer";
    case errc::bad_argument: return "BadArgument";
    case errc::io_error: return "IoError";
    case errc::bad_format: return "BadFormat";
  }
  return "UnknownError";
}

}  // namespace smellscape
