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

#include "selftag/st32.hpp"

#include <cmath>
#include <limits>

namespace selftag::st32 {

std::string Variant32::name() const {
    return std::string(kind == Kind::OneTag ? "st1" : "st2b") + ":" + std::to_string(tag.value());
}

std::uint16_t covered_prefix_mask(Variant32 v) noexcept {
    // The bias adds k to the 4-bit prefix; the middle two bits of the biased
    // prefix become the tag.
    const unsigned k = v.kind == Variant32::Kind::OneTag ? 1 + 2 * v.tag.value() : 2 * v.tag.value();
    const std::uint8_t tags = tag_set_mask(v);
    std::uint16_t mask = 0;
    for (unsigned p = 0; p < 16; ++p) {
        const unsigned middle = (((p + k) & 15u) >> 1) & 3u;
        if ((tags >> middle) & 1u) {
            mask = static_cast<std::uint16_t>(mask | (1u << p));
        }
    }
    return mask;
}

bool covers32(Variant32 v, Word32 bits) noexcept {
    return (covered_prefix_mask(v) >> ((bits >> kPrefixShift) & 15u)) & 1u;
}

std::vector<CoverageInterval> st32_coverage(Variant32 v) {
    const std::uint16_t mask = covered_prefix_mask(v);
    std::vector<CoverageInterval> out;
    int p = 0;
    while (p < 16) {
        if (!((mask >> p) & 1u)) {
            ++p;
            continue;
        }
        int last = p;
        while (last + 1 < 16 && ((mask >> (last + 1)) & 1u)) {
            ++last;
        }
        CoverageInterval iv;
        iv.first_prefix = p;
        iv.last_prefix = last;
        iv.lo = p == 0 ? 0.0 : std::ldexp(1.0, 16 * p - 127);
        iv.hi = last == 15 ? std::numeric_limits<double>::infinity()
                           : std::ldexp(1.0, 16 * (last + 1) - 127);
        iv.includes_zero = p == 0;
        iv.includes_inf_nan = last == 15;
        out.push_back(iv);
        p = last + 1;
    }
    return out;
}

} // namespace selftag::st32
