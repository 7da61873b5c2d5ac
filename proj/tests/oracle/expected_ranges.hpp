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

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

namespace oracle {

struct RangeLabel {
    const char* lo;
    const char* hi;
};

// Exponent-prefix rows of the 64-bit table, prefix 00000 first.
inline constexpr std::array<RangeLabel, 32> kPrefixRows64{{
    {"5e-324", "2.1e-289"},   {"2.1e-289", "3.8e-270"}, {"3.8e-270", "7e-251"},
    {"7e-251", "1.3e-231"},   {"1.3e-231", "2.4e-212"}, {"2.4e-212", "4.4e-193"},
    {"4.4e-193", "8.1e-174"}, {"8.1e-174", "1.5e-154"}, {"1.5e-154", "2.8e-135"},
    {"2.8e-135", "5.1e-116"}, {"5.1e-116", "9.4e-97"},  {"9.4e-97", "1.7e-77"},
    {"1.7e-77", "3.2e-58"},   {"3.2e-58", "5.9e-39"},   {"5.9e-39", "1.1e-19"},
    {"1.1e-19", "2"},         {"2", "3.7e19"},          {"3.7e19", "6.8e38"},
    {"6.8e38", "1.3e58"},     {"1.3e58", "2.3e77"},     {"2.3e77", "4.3e96"},
    {"4.3e96", "7.9e115"},    {"7.9e115", "1.5e135"},   {"1.5e135", "2.7e154"},
    {"2.7e154", "4.9e173"},   {"4.9e173", "9.1e192"},   {"9.1e192", "1.7e212"},
    {"1.7e212", "3.1e231"},   {"3.1e231", "5.7e250"},   {"5.7e250", "1.1e270"},
    {"1.1e270", "1.9e289"},   {"1.9e289", "1.8e308"},
}};

// Same for binary32, prefix 0000 first.
inline constexpr std::array<RangeLabel, 16> kPrefixRows32{{
    {"1.4e-45", "3.9e-34"}, {"3.9e-34", "2.5e-29"}, {"2.5e-29", "1.7e-24"}, {"1.7e-24", "1.1e-19"},
    {"1.1e-19", "7.1e-15"}, {"7.1e-15", "4.7e-10"}, {"4.7e-10", "3.1e-5"},  {"3.1e-5", "2"},
    {"2", "1.3e5"},         {"1.3e5", "8.6e9"},     {"8.6e9", "5.6e14"},    {"5.6e14", "3.7e19"},
    {"3.7e19", "2.4e24"},   {"2.4e24", "1.6e29"},   {"1.6e29", "1.0e34"},   {"1.0e34", "3.4e38"},
}};

// Covered intervals; "0" opens at zero and "inf" closes at Infinity/NaN.
struct Coverage {
    const char* scheme;
    int bits;
    std::array<RangeLabel, 3> ranges;
    int count;
};

inline constexpr std::array<Coverage, 5> kCoverage{{
    {"st3", 64, {{{"0", "1.3e-231"}, {"1.7e-77", "2.3e77"}, {"", ""}}}, 2},
    {"st1:0", 64, {{{"0", "2.1e-289"}, {"1.1e-19", "3.7e19"}, {"1.9e289", "inf"}}}, 3},
    {"st2b:0", 64, {{{"0", "3.8e-270"}, {"5.9e-39", "6.8e38"}, {"1.1e270", "inf"}}}, 3},
    {"st1:0", 32, {{{"0", "3.9e-34"}, {"3.1e-5", "1.3e5"}, {"1.0e34", "inf"}}}, 3},
    {"st2b:0", 32, {{{"0", "2.5e-29"}, {"4.7e-10", "8.6e9"}, {"1.6e29", "inf"}}}, 3},
}};

/// Significant digits written in a decimal label such as "1.3e-231" or "2".
inline int significant_digits(std::string_view label) {
    int digits = 0;
    bool leading = true;
    for (char c : label) {
        if (c == 'e' || c == 'E') {
            break;
        }
        if (c < '0' || c > '9') {
            continue;
        }
        if (leading && c == '0') {
            continue;
        }
        leading = false;
        ++digits;
    }
    return digits == 0 ? 1 : digits;
}

/// Whether x rounds to the label at the label's own precision.
inline bool matches_label(double x, std::string_view label) {
    if (label == "inf") {
        return std::isinf(x);
    }
    const std::string text(label);
    const double want = std::strtod(text.c_str(), nullptr);
    if (want == 0.0) {
        return x == 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", significant_digits(label) - 1, x);
    return std::strtod(buf, nullptr) == want;
}

} // namespace oracle
