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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selftag/word.hpp"

namespace selftag {

enum class Variant {
    Boxed,
    NanBox,
    NunBox,
    SelfTag1,
    SelfTag2Biased,
    SelfTag2Zeros,
    SelfTag3,
    SelfTag4,
    SelfTagMantissa,
};

std::string_view variant_name(Variant v) noexcept;

constexpr bool is_self_tagging(Variant v) noexcept {
    return v != Variant::Boxed && v != Variant::NanBox && v != Variant::NunBox;
}

/// How floats that cannot be immediate are referenced from a word.
struct HeapLayout {
    enum class Kind { TaggedPtr, GenericPtr };

    Kind kind = Kind::TaggedPtr;
    /// Float tag for TaggedPtr; the shared "other objects" tag for GenericPtr.
    Tag tag{2};

    static constexpr HeapLayout tagged(Tag t) { return {Kind::TaggedPtr, t}; }
    static constexpr HeapLayout generic(Tag t) { return {Kind::GenericPtr, t}; }

    friend constexpr bool operator==(const HeapLayout&, const HeapLayout&) = default;
};

struct SchemeConfig {
    Variant variant = Variant::Boxed;
    /// Primary tag of SelfTag1 and SelfTag2Biased.
    Tag tag{0};
    /// Post-rotation tag offset of SelfTag2Zeros, SelfTag3 and SelfTag4.
    Tag offset{0};
    HeapLayout heap{};

    /// Canonical short name, e.g. "st3:3" or "nunbox"; parse_scheme() accepts it back.
    std::string name() const;

    friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Parses "boxed", "nanbox", "nunbox", "stm", or "st1|st2b|st2z|st3|st4[:N]"
/// where N is the tag (st1, st2b) or the offset (st2z, st3, st4). Names
/// without a parameter resolve to the presets.
SchemeConfig parse_scheme(std::string_view name);

/// One configuration per variant, in Variant order.
const std::vector<SchemeConfig>& preset_schemes();

/// Throws ContractError if the float tags collide with the heap tag.
void validate(const SchemeConfig& config);

TagSet self_tag_set(const SchemeConfig& config);

/// The invertible word transform of a self-tagging variant, applied without
/// any tag test. Additions wrap modulo 2^64.
Word64 st_transform(FloatBits bits, const SchemeConfig& config);
FloatBits st_untransform(Word64 w, const SchemeConfig& config);

struct EncodeOutcome {
    enum class Kind { Immediate, NeedsHeap, PreallocatedZero };

    Kind kind = Kind::NeedsHeap;
    /// The immediate word when kind is Immediate.
    Word64 word = 0;

    bool immediate() const noexcept { return kind == Kind::Immediate; }
};

EncodeOutcome st_encode(FloatBits bits, const SchemeConfig& config);

/// Whether a float is self-tagged under the configuration. Decided from the
/// IEEE754 fields directly; it never calls st_encode.
bool covers(const SchemeConfig& config, FloatBits bits);

/// Magnitude range [lo, hi) of floats self-tagged by one run of adjacent
/// exponent-prefix classes. hi is +inf for a run ending at the top class.
struct CoverageInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool includes_zero = false;
    bool includes_inf_nan = false;
    int first_prefix = 0;
    int last_prefix = 0;
};

/// Exponent-prefix classes (bits 62..58) whose floats are self-tagged.
std::uint32_t covered_prefix_mask(const SchemeConfig& config);

std::vector<CoverageInterval> coverage_intervals(const SchemeConfig& config);

// NaN-boxing: floats are themselves; everything at or above the canonical
// negative quiet NaN carries a 3-bit tag in bits 50..48 and a 48-bit payload.
inline constexpr Word64 kCanonicalNaN = 0xFFF8000000000000ULL;
inline constexpr std::uint64_t kPayloadMask = 0x0000FFFFFFFFFFFFULL;

constexpr Word64 nan_box_float(FloatBits bits) noexcept {
    return bits >= kCanonicalNaN ? kCanonicalNaN : bits;
}

constexpr bool nan_is_float(Word64 w) noexcept { return w <= kCanonicalNaN; }

Word64 nan_box_nonfloat(Tag tag, std::uint64_t payload);

struct NanBoxedNonFloat {
    Tag tag;
    std::uint64_t payload;
};

NanBoxedNonFloat nan_unbox_nonfloat(Word64 w);

// NuN-boxing: floats are biased by 2^48 so that words whose top 16 bits are
// 0x0000 or 0xFFFF are free for pointers and fixnums.
inline constexpr std::uint64_t kNunBias = 0x0001000000000000ULL;
inline constexpr FloatBits kNunReservedNaN = 0xFFFE000000000000ULL;

constexpr Word64 nun_box_float(FloatBits bits) noexcept {
    if (bits >= kNunReservedNaN) {
        bits = kCanonicalNaN;
    }
    return bits + kNunBias;
}

constexpr bool nun_is_float(Word64 w) noexcept {
    const std::uint64_t top = w >> 48;
    return top != 0x0000 && top != 0xFFFF;
}

FloatBits nun_unbox_float(Word64 w);

} // namespace selftag
