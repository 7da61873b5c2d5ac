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

#include "selftag/fuzz.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace selftag {
namespace {

struct Checker {
    const SchemeConfig& config;
    FuzzReport& report;

    void check(FloatBits b) const {
        report.samples += 1;
        switch (config.variant) {
        case Variant::NanBox: {
            const Word64 w = nan_box_float(b);
            const bool ok = b < kCanonicalNaN ? w == b : w == kCanonicalNaN;
            report.mismatches += !ok || !nan_is_float(w);
            return;
        }
        case Variant::NunBox: {
            const Word64 w = nun_box_float(b);
            bool ok = nun_is_float(w);
            if (b < kNunReservedNaN) {
                ok = ok && nun_unbox_float(w) == b;
            }
            report.mismatches += !ok;
            return;
        }
        case Variant::Boxed:
            return;
        default:
            break;
        }
        const Word64 w = st_transform(b, config);
        report.mismatches += st_untransform(w, config) != b;
        const EncodeOutcome e = st_encode(b, config);
        report.predicate_mismatches += covers(config, b) != e.immediate();
    }
};

} // namespace

std::vector<FloatBits> structured_patterns64() {
    std::vector<FloatBits> out;
    const FloatBits mantissas[] = {0, 1, (FloatBits{1} << 52) - 1};
    for (int p = 0; p < 32; ++p) {
        for (int edge : {0, 63}) {
            const FloatBits exponent = static_cast<FloatBits>(64 * p + edge);
            for (FloatBits sign : {FloatBits{0}, FloatBits{1}}) {
                for (FloatBits m : mantissas) {
                    out.push_back((sign << 63) | (exponent << 52) | m);
                }
            }
        }
    }
    const FloatBits extras[] = {
        0x0ULL, 0x8000000000000000ULL, 0x7FF0000000000000ULL, 0xFFF0000000000000ULL,
        0x7FF8000000000000ULL, 0xFFF8000000000000ULL, 0xFFF7FFFFFFFFFFFFULL, 0xFFF8000000000001ULL,
        0xFFFDFFFFFFFFFFFFULL, 0xFFFE000000000000ULL, 0xFFFFFFFFFFFFFFFFULL, 0x7FFFFFFFFFFFFFFFULL,
    };
    out.insert(out.end(), std::begin(extras), std::end(extras));
    return out;
}

FuzzReport fuzz_scheme(const SchemeConfig& config, std::uint64_t n, std::uint64_t seed) {
    FuzzReport report;
    report.scheme = config.name();
    Checker checker{config, report};
    for (FloatBits b : structured_patterns64()) {
        checker.check(b);
    }
    const bool self_tagging = is_self_tagging(config.variant);
    const TagSet tags = self_tagging ? self_tag_set(config) : TagSet{};
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < n; ++i) {
        const FloatBits b = rng();
        checker.check(b);
        if (self_tagging) {
            report.self_tagged += has_tag_in_set(st_transform(b, config), tags);
        }
    }
    report.random_samples = n;
    return report;
}

namespace {

void check32(st32::Variant32 v, st32::Word32 b, FuzzReport& report) {
    const st32::Word32 w = st32::st32_transform(b, v);
    report.mismatches += st32::st32_untransform(w, v) != b;
    report.predicate_mismatches += st32::covers32(v, b) != st32::is_self_tagged(w, v);
}

} // namespace

FuzzReport fuzz_st32(st32::Variant32 v, std::uint64_t n, std::uint64_t seed) {
    FuzzReport report;
    report.scheme = v.name() + "/32";
    for (std::uint32_t p = 0; p < 16; ++p) {
        for (std::uint32_t edge : {0u, 15u}) {
            for (std::uint32_t sign : {0u, 1u}) {
                for (std::uint32_t m : {0u, 1u, (1u << 23) - 1}) {
                    check32(v, (sign << 31) | ((16 * p + edge) << 23) | m, report);
                    report.samples += 1;
                }
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto b = static_cast<st32::Word32>(rng());
        check32(v, b, report);
        report.self_tagged += st32::is_self_tagged(st32::st32_transform(b, v), v);
        report.samples += 1;
    }
    report.random_samples = n;
    return report;
}

FuzzReport exhaustive_st32(st32::Variant32 v, unsigned threads) {
    threads = std::max(1u, threads);
    std::vector<FuzzReport> parts(threads);
    std::vector<std::thread> workers;
    const std::uint64_t total = std::uint64_t{1} << 32;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            const std::uint64_t begin = total * t / threads;
            const std::uint64_t end = total * (t + 1) / threads;
            const std::uint16_t mask = st32::covered_prefix_mask(v);
            std::uint64_t mismatches = 0;
            std::uint64_t predicate = 0;
            std::uint64_t tagged_count = 0;
            for (std::uint64_t x = begin; x < end; ++x) {
                const auto b = static_cast<st32::Word32>(x);
                const st32::Word32 w = st32::st32_transform(b, v);
                mismatches += st32::st32_untransform(w, v) != b;
                const bool tagged = st32::is_self_tagged(w, v);
                const bool covered = (mask >> ((b >> st32::kPrefixShift) & 15u)) & 1u;
                predicate += covered != tagged;
                tagged_count += tagged;
            }
            FuzzReport& r = parts[t];
            r.mismatches = mismatches;
            r.predicate_mismatches = predicate;
            r.self_tagged = tagged_count;
            r.samples = end - begin;
            r.random_samples = end - begin;
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    FuzzReport report;
    report.scheme = v.name() + "/32";
    for (const auto& p : parts) {
        report.samples += p.samples;
        report.mismatches += p.mismatches;
        report.predicate_mismatches += p.predicate_mismatches;
        report.self_tagged += p.self_tagged;
        report.random_samples += p.random_samples;
    }
    return report;
}

double class_fraction(const SchemeConfig& config) {
    const TagSet tags = self_tag_set(config);
    if (config.variant == Variant::SelfTagMantissa) {
        // The tag is the low 3 mantissa bits.
        int hits = 0;
        for (FloatBits low = 0; low < 8; ++low) {
            hits += has_tag_in_set(st_transform(low, config), tags);
        }
        return hits / 8.0;
    }
    // Exponent variants: the tag depends only on bits 62..58.
    int hits = 0;
    for (FloatBits prefix = 0; prefix < 32; ++prefix) {
        hits += has_tag_in_set(st_transform(prefix << 58, config), tags);
    }
    return hits / 32.0;
}

double class_fraction32(st32::Variant32 v) {
    int hits = 0;
    for (std::uint32_t prefix = 0; prefix < 16; ++prefix) {
        hits += st32::is_self_tagged(st32::st32_transform(prefix << st32::kPrefixShift, v), v);
    }
    return hits / 16.0;
}

} // namespace selftag
