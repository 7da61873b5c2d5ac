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

#include "selftag/float_schemes.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace selftag {
namespace {

constexpr int kPrefixShift = 58;
constexpr unsigned kExponentRotation = 4;
constexpr unsigned kBiasedRotation = 5;

void require_self_tagging(const SchemeConfig& config) {
    if (!is_self_tagging(config.variant)) {
        throw ContractError("operation needs a self-tagging variant, got " +
                            std::string(variant_name(config.variant)));
    }
}

constexpr std::uint32_t prefix_bits(std::initializer_list<int> prefixes) {
    std::uint32_t mask = 0;
    for (int p : prefixes) {
        mask |= 1u << p;
    }
    return mask;
}

// Covered 5-bit exponent prefixes. Rotating by 4 exposes the top 3 exponent
// bits, so each tag claims 4 consecutive prefixes. The biased variants claim
// prefixes around 00000/01111/10000/11111 whatever the tag.
constexpr std::uint32_t kTop3Zero = prefix_bits({0, 1, 2, 3});
constexpr std::uint32_t kTop3Three = prefix_bits({12, 13, 14, 15});
constexpr std::uint32_t kTop3Four = prefix_bits({16, 17, 18, 19});
constexpr std::uint32_t kTop3Seven = prefix_bits({28, 29, 30, 31});
constexpr std::uint32_t kOneTagPrefixes = prefix_bits({0, 15, 16, 31});
constexpr std::uint32_t kTwoTagBiasedPrefixes = prefix_bits({0, 1, 14, 15, 16, 17, 30, 31});

constexpr Word64 one_tag_bias(Tag tag) {
    return static_cast<Word64>(1 + 2 * tag.value()) << kPrefixShift;
}

constexpr Word64 two_tag_bias(Tag tag) {
    return static_cast<Word64>(2 * tag.value()) << kPrefixShift;
}

bool has_parameter(Variant v) {
    switch (v) {
    case Variant::SelfTag1:
    case Variant::SelfTag2Biased:
    case Variant::SelfTag2Zeros:
    case Variant::SelfTag3:
    case Variant::SelfTag4:
        return true;
    default:
        return false;
    }
}

bool parameter_is_tag(Variant v) {
    return v == Variant::SelfTag1 || v == Variant::SelfTag2Biased;
}

struct NameEntry {
    std::string_view name;
    Variant variant;
};

constexpr std::array<NameEntry, 9> kNames{{
    {"boxed", Variant::Boxed},
    {"nanbox", Variant::NanBox},
    {"nunbox", Variant::NunBox},
    {"st1", Variant::SelfTag1},
    {"st2b", Variant::SelfTag2Biased},
    {"st2z", Variant::SelfTag2Zeros},
    {"st3", Variant::SelfTag3},
    {"st4", Variant::SelfTag4},
    {"stm", Variant::SelfTagMantissa},
}};

std::string_view short_name(Variant v) {
    for (const auto& e : kNames) {
        if (e.variant == v) {
            return e.name;
        }
    }
    return "?";
}

SchemeConfig preset_for(Variant v) {
    SchemeConfig c;
    c.variant = v;
    switch (v) {
    case Variant::Boxed:
    case Variant::NanBox:
    case Variant::NunBox:
        c.heap = HeapLayout::tagged(Tag{2});
        break;
    case Variant::SelfTag1:
        c.tag = Tag{6};
        c.heap = HeapLayout::tagged(Tag{2});
        break;
    case Variant::SelfTag2Biased:
        c.tag = Tag{7};
        c.heap = HeapLayout::tagged(Tag{2});
        break;
    case Variant::SelfTag2Zeros:
        c.heap = HeapLayout::tagged(Tag{1});
        break;
    case Variant::SelfTag3:
        c.offset = Tag{3};
        c.heap = HeapLayout::tagged(Tag{2});
        break;
    case Variant::SelfTag4:
        c.offset = Tag{3};
        c.heap = HeapLayout::generic(Tag{1});
        break;
    case Variant::SelfTagMantissa:
        c.heap = HeapLayout::tagged(Tag{2});
        break;
    }
    return c;
}

// Keeps the preset heap layout unless its tag now collides with a float tag.
HeapLayout default_heap(const SchemeConfig& config, HeapLayout preferred) {
    if (!is_self_tagging(config.variant)) {
        return preferred;
    }
    const TagSet floats = self_tag_set(config);
    if (!floats.contains(preferred.tag)) {
        return preferred;
    }
    for (unsigned t = 1; t < 8; ++t) {
        if (!floats.contains(Tag{t})) {
            return {preferred.kind, Tag{t}};
        }
    }
    return {preferred.kind, Tag{0}};
}

unsigned parse_small(std::string_view text, std::string_view whole) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value > 7) {
        throw ContractError("bad scheme parameter in '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

std::string_view variant_name(Variant v) noexcept {
    switch (v) {
    case Variant::Boxed: return "Boxed";
    case Variant::NanBox: return "NanBox";
    case Variant::NunBox: return "NunBox";
    case Variant::SelfTag1: return "SelfTag1";
    case Variant::SelfTag2Biased: return "SelfTag2Biased";
    case Variant::SelfTag2Zeros: return "SelfTag2Zeros";
    case Variant::SelfTag3: return "SelfTag3";
    case Variant::SelfTag4: return "SelfTag4";
    case Variant::SelfTagMantissa: return "SelfTagMantissa";
    }
    return "?";
}

std::string SchemeConfig::name() const {
    std::string out(short_name(variant));
    if (has_parameter(variant)) {
        out += ':';
        out += std::to_string(parameter_is_tag(variant) ? tag.value() : offset.value());
    }
    if (variant == Variant::NanBox || variant == Variant::NunBox) {
        return out;
    }
    const HeapLayout derived = default_heap(*this, preset_for(variant).heap);
    if (heap != derived) {
        out += heap.kind == HeapLayout::Kind::TaggedPtr ? "@t" : "@g";
        out += std::to_string(heap.tag.value());
    }
    return out;
}

SchemeConfig parse_scheme(std::string_view name) {
    std::string_view rest = name;
    std::optional<HeapLayout> heap;
    if (auto at = rest.find('@'); at != std::string_view::npos) {
        std::string_view h = rest.substr(at + 1);
        rest = rest.substr(0, at);
        if (h.size() != 2 || (h[0] != 't' && h[0] != 'g')) {
            throw ContractError("bad heap layout in '" + std::string(name) + "'");
        }
        Tag t{parse_small(h.substr(1), name)};
        heap = h[0] == 't' ? HeapLayout::tagged(t) : HeapLayout::generic(t);
    }
    std::optional<unsigned> param;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
        param = parse_small(rest.substr(colon + 1), name);
        rest = rest.substr(0, colon);
    }
    for (const auto& e : kNames) {
        if (e.name != rest) {
            continue;
        }
        SchemeConfig c = preset_for(e.variant);
        if (param) {
            if (!has_parameter(e.variant)) {
                throw ContractError("scheme '" + std::string(rest) + "' takes no parameter");
            }
            (parameter_is_tag(e.variant) ? c.tag : c.offset) = Tag{*param};
        }
        c.heap = heap ? *heap : default_heap(c, c.heap);
        validate(c);
        return c;
    }
    throw ContractError("unknown scheme '" + std::string(name) + "'");
}

const std::vector<SchemeConfig>& preset_schemes() {
    static const std::vector<SchemeConfig> presets = [] {
        std::vector<SchemeConfig> out;
        for (const auto& e : kNames) {
            out.push_back(preset_for(e.variant));
        }
        return out;
    }();
    return presets;
}

void validate(const SchemeConfig& config) {
    if (!is_self_tagging(config.variant)) {
        return;
    }
    if (self_tag_set(config).contains(config.heap.tag)) {
        throw ContractError("heap tag " + std::to_string(config.heap.tag.value()) +
                            " collides with the float tags of " + config.name());
    }
}

TagSet self_tag_set(const SchemeConfig& config) {
    require_self_tagging(config);
    const int off = static_cast<int>(config.offset.value());
    switch (config.variant) {
    case Variant::SelfTag1:
        return TagSet{config.tag};
    case Variant::SelfTag2Biased:
        return TagSet{config.tag, config.tag.plus(-1)};
    case Variant::SelfTag2Zeros:
        return TagSet{Tag{3}.plus(off), Tag{4}.plus(off)};
    case Variant::SelfTag3:
        return TagSet{Tag{0}.plus(off), Tag{3}.plus(off), Tag{4}.plus(off)};
    case Variant::SelfTag4:
        return TagSet{Tag{0}.plus(off), Tag{3}.plus(off), Tag{4}.plus(off), Tag{7}.plus(off)};
    case Variant::SelfTagMantissa:
        return TagSet{Tag{0}, Tag{4}};
    default:
        break;
    }
    throw ContractError("unreachable variant");
}

Word64 st_transform(FloatBits bits, const SchemeConfig& config) {
    require_self_tagging(config);
    switch (config.variant) {
    case Variant::SelfTag2Zeros:
    case Variant::SelfTag3:
    case Variant::SelfTag4:
        return rotl64(bits, kExponentRotation) + config.offset.value();
    case Variant::SelfTag1:
        return rotl64(bits + one_tag_bias(config.tag), kBiasedRotation);
    case Variant::SelfTag2Biased:
        return rotl64(bits + two_tag_bias(config.tag), kBiasedRotation);
    default:
        return bits;
    }
}

FloatBits st_untransform(Word64 w, const SchemeConfig& config) {
    require_self_tagging(config);
    switch (config.variant) {
    case Variant::SelfTag2Zeros:
    case Variant::SelfTag3:
    case Variant::SelfTag4:
        return rotr64(w - config.offset.value(), kExponentRotation);
    case Variant::SelfTag1:
        return rotr64(w, kBiasedRotation) - one_tag_bias(config.tag);
    case Variant::SelfTag2Biased:
        return rotr64(w, kBiasedRotation) - two_tag_bias(config.tag);
    default:
        return w;
    }
}

EncodeOutcome st_encode(FloatBits bits, const SchemeConfig& config) {
    require_self_tagging(config);
    if (config.variant == Variant::SelfTag2Zeros && (bits << 1) == 0) {
        return {EncodeOutcome::Kind::PreallocatedZero, 0};
    }
    const Word64 m = st_transform(bits, config);
    if (has_tag_in_set(m, self_tag_set(config))) {
        return {EncodeOutcome::Kind::Immediate, m};
    }
    return {EncodeOutcome::Kind::NeedsHeap, 0};
}

std::uint32_t covered_prefix_mask(const SchemeConfig& config) {
    require_self_tagging(config);
    switch (config.variant) {
    case Variant::SelfTag1:
        return kOneTagPrefixes;
    case Variant::SelfTag2Biased:
        return kTwoTagBiasedPrefixes;
    case Variant::SelfTag2Zeros:
        return kTop3Three | kTop3Four;
    case Variant::SelfTag3:
        return kTop3Zero | kTop3Three | kTop3Four;
    case Variant::SelfTag4:
        return kTop3Zero | kTop3Three | kTop3Four | kTop3Seven;
    default:
        throw UnsupportedError("mantissa self-tagging is not prefix-determined");
    }
}

bool covers(const SchemeConfig& config, FloatBits bits) {
    require_self_tagging(config);
    if (config.variant == Variant::SelfTagMantissa) {
        return (bits & 0x3) == 0;
    }
    const unsigned prefix = static_cast<unsigned>(bits >> kPrefixShift) & 31u;
    return (covered_prefix_mask(config) >> prefix) & 1u;
}

std::vector<CoverageInterval> coverage_intervals(const SchemeConfig& config) {
    const std::uint32_t mask = covered_prefix_mask(config);
    std::vector<CoverageInterval> out;
    int p = 0;
    while (p < 32) {
        if (!((mask >> p) & 1u)) {
            ++p;
            continue;
        }
        int last = p;
        while (last + 1 < 32 && ((mask >> (last + 1)) & 1u)) {
            ++last;
        }
        CoverageInterval iv;
        iv.first_prefix = p;
        iv.last_prefix = last;
        iv.lo = p == 0 ? 0.0 : std::ldexp(1.0, 64 * p - 1023);
        iv.hi = last == 31 ? std::numeric_limits<double>::infinity()
                           : std::ldexp(1.0, 64 * (last + 1) - 1023);
        iv.includes_zero = p == 0;
        iv.includes_inf_nan = last == 31;
        out.push_back(iv);
        p = last + 1;
    }
    return out;
}

Word64 nan_box_nonfloat(Tag tag, std::uint64_t payload) {
    if (payload > kPayloadMask) {
        throw RangeError("NaN-box payload wider than 48 bits");
    }
    if (tag.value() == 0 && payload == 0) {
        throw EncodingCollisionError("tag 0 with payload 0 is the canonical NaN");
    }
    return kCanonicalNaN | (static_cast<Word64>(tag.value()) << 48) | payload;
}

NanBoxedNonFloat nan_unbox_nonfloat(Word64 w) {
    if (nan_is_float(w)) {
        throw TypeError("NaN-boxed word holds a float");
    }
    return {Tag{static_cast<unsigned>((w >> 48) & 7)}, w & kPayloadMask};
}

FloatBits nun_unbox_float(Word64 w) {
    if (!nun_is_float(w)) {
        throw TypeError("NuN-boxed word is not a float");
    }
    return w - kNunBias;
}

} // namespace selftag
