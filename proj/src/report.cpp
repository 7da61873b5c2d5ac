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

#include "selftag/report.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "selftag/profiler.hpp"

namespace selftag {
namespace {

std::string tags_label(TagSet set) {
    std::string out = "{";
    bool first = true;
    for (unsigned t = 0; t < 8; ++t) {
        if (set.contains(Tag{t})) {
            out += first ? "" : ",";
            out += std::to_string((t >> 2) & 1) + std::to_string((t >> 1) & 1) + std::to_string(t & 1);
            first = false;
        }
    }
    return out + "}";
}

std::string binary_label(int value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        s[static_cast<std::size_t>(width - 1 - i)] = ((value >> i) & 1) ? '1' : '0';
    }
    return s;
}

void write_intervals(std::ostringstream& out, const std::vector<CoverageInterval>& intervals) {
    for (const auto& iv : intervals) {
        const std::string lo = iv.includes_zero ? "0.0" : format_magnitude(iv.lo);
        const std::string hi = iv.includes_inf_nan ? "Infinity/NaN" : format_magnitude(iv.hi);
        std::string line = lo + " .. " + hi;
        line.resize(std::max<std::size_t>(line.size() + 2, 28), ' ');
        out << line << '[' << power_of_two_label(iv.lo) << ", "
            << (iv.includes_inf_nan ? std::string("inf]") : power_of_two_label(iv.hi) + ")") << '\n';
    }
}

} // namespace

std::string power_of_two_label(double x) {
    if (x == 0.0) {
        return "0";
    }
    if (std::isinf(x)) {
        return "inf";
    }
    int exp = 0;
    const double m = std::frexp(x, &exp);
    if (m == 0.5) {
        return "2^" + std::to_string(exp - 1);
    }
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

std::string coverage_report(const SchemeConfig& config) {
    std::ostringstream out;
    out << "scheme " << config.name() << " (" << variant_name(config.variant) << ") 64-bit\n";
    switch (config.variant) {
    case Variant::Boxed:
        out << "no float is immediate; every float is heap allocated\n";
        return out.str();
    case Variant::NanBox:
        out << "every float is immediate; patterns >= 0xfff8000000000000 collapse to the canonical NaN\n";
        return out.str();
    case Variant::NunBox:
        out << "every float is immediate (biased by 2^48); patterns >= 0xfffe000000000000 collapse to "
               "the canonical NaN\n";
        return out.str();
    default:
        break;
    }
    out << "tags " << tags_label(self_tag_set(config)) << '\n';
    if (config.variant == Variant::SelfTagMantissa) {
        out << "floats whose two low mantissa bits are 00 (1/4 of every exponent class)\n";
        return out.str();
    }
    const std::uint32_t mask = covered_prefix_mask(config);
    out << "prefixes";
    for (int p = 0; p < 32; ++p) {
        if ((mask >> p) & 1u) {
            out << ' ' << binary_label(p, 5);
        }
    }
    out << '\n';
    write_intervals(out, coverage_intervals(config));
    if (config.variant == Variant::SelfTag2Zeros) {
        out << "+0.0 and -0.0 use preallocated heap cells\n";
    }
    return out.str();
}

std::string coverage_report32(st32::Variant32 v) {
    std::ostringstream out;
    out << "scheme " << v.name() << " 32-bit\n";
    out << "tags {";
    bool first = true;
    for (unsigned t = 0; t < 4; ++t) {
        if ((st32::tag_set_mask(v) >> t) & 1u) {
            out << (first ? "" : ",") << binary_label(static_cast<int>(t), 2);
            first = false;
        }
    }
    out << "}\nprefixes";
    const std::uint16_t mask = st32::covered_prefix_mask(v);
    for (int p = 0; p < 16; ++p) {
        if ((mask >> p) & 1u) {
            out << ' ' << binary_label(p, 4);
        }
    }
    out << '\n';
    write_intervals(out, st32::st32_coverage(v));
    return out.str();
}

std::string coverage_table_csv(const std::vector<SchemeConfig>& schemes) {
    std::ostringstream out;
    out << "prefix,range_lo,range_hi";
    for (const auto& s : schemes) {
        out << ',' << s.name();
    }
    out << '\n';
    for (int p = 0; p < 32; ++p) {
        const double lo = p == 0 ? DBL_TRUE_MIN : prefix_class_lo(p, 32, 1023, 64);
        const double hi = p == 31 ? DBL_MAX : prefix_class_lo(p + 1, 32, 1023, 64);
        out << binary_label(p, 5) << ',' << format_magnitude(lo) << ',' << format_magnitude(hi);
        for (const auto& s : schemes) {
            out << ',' << (((covered_prefix_mask(s) >> p) & 1u) ? 1 : 0);
        }
        out << '\n';
    }
    return out.str();
}

std::string coverage_table_csv32(const std::vector<st32::Variant32>& variants) {
    std::ostringstream out;
    out << "prefix,range_lo,range_hi";
    for (const auto& v : variants) {
        out << ',' << v.name();
    }
    out << '\n';
    for (int p = 0; p < 16; ++p) {
        const double lo = p == 0 ? FLT_TRUE_MIN : prefix_class_lo(p, 16, 127, 16);
        const double hi = p == 15 ? FLT_MAX : prefix_class_lo(p + 1, 16, 127, 16);
        out << binary_label(p, 4) << ',' << format_magnitude(lo) << ',' << format_magnitude(hi);
        for (const auto& v : variants) {
            out << ',' << (((st32::covered_prefix_mask(v) >> p) & 1u) ? 1 : 0);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace selftag
