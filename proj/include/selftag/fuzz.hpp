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

// Roundtrip and predicate fuzzing of the encodings over random and
// structured bit patterns.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selftag/float_schemes.hpp"
#include "selftag/st32.hpp"

namespace selftag {

struct FuzzReport {
    std::string scheme;
    std::uint64_t samples = 0;
    /// Roundtrip (or identity / disjointness) failures.
    std::uint64_t mismatches = 0;
    /// Disagreements between covers() and the encode outcome.
    std::uint64_t predicate_mismatches = 0;
    /// Random samples whose transformed tag is in the self-tag set.
    std::uint64_t self_tagged = 0;
    std::uint64_t random_samples = 0;

    bool passed() const noexcept { return mismatches == 0 && predicate_mismatches == 0; }
    double self_tagged_fraction() const noexcept {
        return random_samples == 0 ? 0.0
                                   : static_cast<double>(self_tagged) / static_cast<double>(random_samples);
    }
};

/// Class-boundary patterns: exponent fields 64p and 64p+63 for every
/// 5-bit prefix, both signs, mantissas {0, 1, 2^52-1}, plus zeros, infinities
/// and NaN edge patterns.
std::vector<FloatBits> structured_patterns64();

/// Self-tagging: untransform(transform(b)) == b and covers(b) agrees with
/// st_encode(b). NaN-box: identity below the canonical NaN, canonical NaN
/// above. NuN-box: roundtrip below 0xFFFE000000000000 and disjointness of
/// boxed floats from the non-float ranges for every pattern.
FuzzReport fuzz_scheme(const SchemeConfig& config, std::uint64_t n, std::uint64_t seed);

FuzzReport fuzz_st32(st32::Variant32 v, std::uint64_t n, std::uint64_t seed);

/// Every 32-bit pattern, split across threads.
FuzzReport exhaustive_st32(st32::Variant32 v, unsigned threads);

/// Fraction of the 2^k classes of the bits that decide the self-tag which
/// are self-tagged, counted exhaustively over those classes.
double class_fraction(const SchemeConfig& config);
double class_fraction32(st32::Variant32 v);

} // namespace selftag
