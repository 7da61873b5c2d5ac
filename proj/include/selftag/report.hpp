// Copyright 2026 The selftag Authors.
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

// Text and CSV renderings of scheme coverage.

#pragma once

#include <string>
#include <vector>

#include "selftag/float_schemes.hpp"
#include "selftag/st32.hpp"

namespace selftag {

/// "2^-63" style rendering of an exact power-of-two boundary.
std::string power_of_two_label(double x);

/// One interval per line as "lo .. hi    [exact)". A zero lower end prints
/// as 0.0 and an upper end at the top class prints as Infinity/NaN.
std::string coverage_report(const SchemeConfig& config);
std::string coverage_report32(st32::Variant32 v);

/// Per-prefix coverage table in the profiler CSV shape: one row per
/// exponent prefix (32 rows, or 16 for 32-bit), 1 or 0 per scheme.
std::string coverage_table_csv(const std::vector<SchemeConfig>& schemes);
std::string coverage_table_csv32(const std::vector<st32::Variant32>& variants);

} // namespace selftag
