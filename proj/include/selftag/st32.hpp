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

// Self-tagging for 32-bit words with 2-bit tags and binary32 floats.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "selftag/error.hpp"
#include "selftag/float_schemes.hpp"

namespace selftag::st32 {

using Word32 = std::uint32_t;

class Tag2 {
public:
    constexpr Tag2() = default;
    constexpr explicit Tag2(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
        if (value > 3) {
            throw RangeError("2-bit tag out of range [0,3]: " + std::to_string(value));
        }
    }
    constexpr unsigned value() const noexcept { return value_; }
    friend constexpr bool operator==(Tag2, Tag2) = default;

private:
    std::uint8_t value_ = 0;
};

struct Variant32 {
    enum class Kind { OneTag, TwoTag };

    Kind kind = Kind::OneTag;
    /// The tag of OneTag, or tag1 of TwoTag (whose second tag is tag1 - 1 mod 4).
    Tag2 tag;

    static constexpr Variant32 one_tag(Tag2 t) { return {Kind::OneTag, t}; }
    static constexpr Variant32 two_tag(Tag2 t) { return {Kind::TwoTag, t}; }

    std::string name() const;
};

inline constexpr int kPrefixShift = 27;
inline constexpr int kRotation = 4;

constexpr Word32 bias(Variant32 v) noexcept {
    const Word32 k = v.kind == Variant32::Kind::OneTag ? 1 + 2 * v.tag.value() : 2 * v.tag.value();
    return k << kPrefixShift;
}

constexpr Word32 st32_transform(Word32 bits, Variant32 v) noexcept {
    return std::rotl(static_cast<Word32>(bits + bias(v)), kRotation);
}

constexpr Word32 st32_untransform(Word32 w, Variant32 v) noexcept {
    return static_cast<Word32>(std::rotr(w, kRotation) - bias(v));
}

/// 4-bit mask over 2-bit tags.
constexpr std::uint8_t tag_set_mask(Variant32 v) noexcept {
    const unsigned t = v.tag.value();
    if (v.kind == Variant32::Kind::OneTag) {
        return static_cast<std::uint8_t>(1u << t);
    }
    return static_cast<std::uint8_t>((1u << t) | (1u << ((t + 3) & 3)));
}

constexpr bool is_self_tagged(Word32 w, Variant32 v) noexcept {
    return (tag_set_mask(v) >> (w & 3u)) & 1u;
}

/// Covered 4-bit exponent prefixes (bits 30..27), computed from the field
/// arithmetic rather than from the transform.
std::uint16_t covered_prefix_mask(Variant32 v) noexcept;

bool covers32(Variant32 v, Word32 bits) noexcept;

std::vector<CoverageInterval> st32_coverage(Variant32 v);

inline constexpr std::int64_t kFixnum32Min = -(std::int64_t{1} << 29);
inline constexpr std::int64_t kFixnum32Max = (std::int64_t{1} << 29) - 1;

constexpr Word32 encode_fixnum32(std::int64_t v) {
    if (v < kFixnum32Min || v > kFixnum32Max) {
        throw RangeError("fixnum out of 30-bit range: " + std::to_string(v));
    }
    return static_cast<Word32>(static_cast<std::uint64_t>(v) << 2);
}

constexpr std::int64_t decode_fixnum32(Word32 w) {
    if ((w & 3u) != 0) {
        throw TypeError("not a 32-bit fixnum");
    }
    return static_cast<std::int32_t>(w) >> 2;
}

/// Suggested 2-tag layout: two float tags, one tag for fixnums, one for heap
/// objects.
struct Layout32 {
    Tag2 fixnum_tag{1};
    Tag2 heap_tag{2};
};

inline constexpr Layout32 kSuggestedLayout{};

} // namespace selftag::st32
