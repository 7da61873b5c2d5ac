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

// Word-level primitives shared by every value representation: rotations,
// 3-bit low tags, tag-set membership and fixnums with tag 000.

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "selftag/error.hpp"

namespace selftag {

using Word64 = std::uint64_t;
using FloatBits = std::uint64_t;

inline constexpr int kTagBits = 3;
inline constexpr Word64 kTagMask = 0x7;

/// A 3-bit low tag.
class Tag {
public:
    constexpr Tag() = default;
    constexpr explicit Tag(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
        if (value > 7) {
            throw RangeError("tag out of range [0,7]: " + std::to_string(value));
        }
    }

    constexpr unsigned value() const noexcept { return value_; }

    /// (tag + delta) mod 8.
    constexpr Tag plus(int delta) const noexcept {
        return Tag(static_cast<unsigned>((static_cast<int>(value_) + delta) & 7), Unchecked{});
    }

    friend constexpr bool operator==(Tag, Tag) = default;

private:
    struct Unchecked {};
    constexpr Tag(unsigned value, Unchecked) : value_(static_cast<std::uint8_t>(value)) {}

    std::uint8_t value_ = 0;
};

/// Set of 3-bit tags as an 8-bit mask; bit i set iff tag i is a member.
class TagSet {
public:
    constexpr TagSet() = default;
    constexpr explicit TagSet(std::uint8_t mask) : mask_(mask) {}
    constexpr TagSet(std::initializer_list<Tag> tags) {
        for (Tag t : tags) {
            mask_ = static_cast<std::uint8_t>(mask_ | (1u << t.value()));
        }
    }

    constexpr std::uint8_t mask() const noexcept { return mask_; }
    constexpr bool contains(Tag t) const noexcept { return (mask_ >> t.value()) & 1u; }
    constexpr int size() const noexcept { return std::popcount(mask_); }
    constexpr TagSet with(Tag t) const noexcept {
        return TagSet(static_cast<std::uint8_t>(mask_ | (1u << t.value())));
    }

    friend constexpr bool operator==(TagSet, TagSet) = default;

private:
    std::uint8_t mask_ = 0;
};

inline constexpr void check_rotation(unsigned shift, unsigned width) {
    if (shift >= width) {
        throw RangeError("rotation amount out of range: " + std::to_string(shift));
    }
}

constexpr Word64 rotl64(Word64 w, unsigned shift) {
    check_rotation(shift, 64);
    return std::rotl(w, static_cast<int>(shift));
}

constexpr Word64 rotr64(Word64 w, unsigned shift) {
    check_rotation(shift, 64);
    return std::rotr(w, static_cast<int>(shift));
}

constexpr Tag tag_of(Word64 w) noexcept { return Tag(static_cast<unsigned>(w & kTagMask)); }

/// The 8-bit tag set replicated into every byte of a 32-bit word.
constexpr std::uint32_t repeat_mask(TagSet set) noexcept {
    return ~std::uint32_t{0} / 0xff * set.mask();
}

/// Membership through the bit-test trick: a 32-bit bit test indexes with the
/// low 5 bits of the word, and the mask repeats every 8 bits, so only the
/// low 3 bits matter.
constexpr bool has_tag_in_set(Word64 w, TagSet set) noexcept {
    return (repeat_mask(set) >> (static_cast<std::uint32_t>(w) & 31u)) & 1u;
}

inline constexpr std::int64_t kFixnumMin = -(std::int64_t{1} << 60);
inline constexpr std::int64_t kFixnumMax = (std::int64_t{1} << 60) - 1;

constexpr Word64 encode_fixnum(std::int64_t v) {
    if (v < kFixnumMin || v > kFixnumMax) {
        throw RangeError("fixnum out of 61-bit range: " + std::to_string(v));
    }
    return static_cast<Word64>(v) << kTagBits;
}

constexpr std::int64_t decode_fixnum(Word64 w) {
    if ((w & kTagMask) != 0) {
        throw TypeError("not a fixnum: tag " + std::to_string(w & kTagMask));
    }
    return static_cast<std::int64_t>(w) >> kTagBits;
}

/// Adds two tag-000 fixnums directly on their encoded words.
constexpr Word64 fixnum_add(Word64 a, Word64 b) {
    if (((a | b) & kTagMask) != 0) {
        throw TypeError("fixnum_add on non-fixnum word");
    }
    std::int64_t sum = 0;
    if (__builtin_add_overflow(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), &sum)) {
        throw OverflowError("fixnum addition overflow");
    }
    return static_cast<Word64>(sum);
}

constexpr Word64 fixnum_sub(Word64 a, Word64 b) {
    if (((a | b) & kTagMask) != 0) {
        throw TypeError("fixnum_sub on non-fixnum word");
    }
    std::int64_t diff = 0;
    if (__builtin_sub_overflow(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), &diff)) {
        throw OverflowError("fixnum subtraction overflow");
    }
    return static_cast<Word64>(diff);
}

} // namespace selftag
