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

// Float-distribution profiling keyed by the 5 most significant exponent bits.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "selftag/float_schemes.hpp"

namespace selftag {

inline constexpr int kPrefixClasses = 32;

struct ProfileRow {
    int prefix = 0;
    bool zero = false;
    bool inf_nan = false;

    friend bool operator==(const ProfileRow&, const ProfileRow&) = default;
};

/// Sign is ignored; zero and Inf/NaN are flagged as sub-rows of prefixes
/// 00000 and 11111.
constexpr ProfileRow classify(FloatBits bits) noexcept {
    ProfileRow row;
    row.prefix = static_cast<int>((bits >> 58) & 31);
    row.zero = (bits << 1) == 0;
    row.inf_nan = ((bits >> 52) & 0x7FF) == 0x7FF;
    return row;
}

class FloatProfile {
public:
    void add(FloatBits bits) noexcept {
        const ProfileRow row = classify(bits);
        prefix_counts_[row.prefix] += 1;
        zero_count_ += row.zero;
        inf_nan_count_ += row.inf_nan;
        total_ += 1;
    }

    /// Associative and commutative.
    void merge(const FloatProfile& other) noexcept;

    std::uint64_t prefix_count(int prefix) const { return prefix_counts_.at(prefix); }
    std::uint64_t zero_count() const noexcept { return zero_count_; }
    std::uint64_t inf_nan_count() const noexcept { return inf_nan_count_; }
    std::uint64_t total() const noexcept { return total_; }

    friend bool operator==(const FloatProfile&, const FloatProfile&) = default;

private:
    std::array<std::uint64_t, kPrefixClasses> prefix_counts_{};
    std::uint64_t zero_count_ = 0;
    std::uint64_t inf_nan_count_ = 0;
    std::uint64_t total_ = 0;
};

/// Fraction of profiled floats the variant keeps out of the heap. Zeros
/// count as hits under SelfTag2Zeros (they resolve to preallocated cells).
/// An empty profile gives 1.0. SelfTagMantissa is unsupported.
double hit_ratio(const FloatProfile& profile, const SchemeConfig& config);

/// Two significant digits in the "3.7e19" / "1.1e-19" / "2" style.
std::string format_magnitude(double x);

/// Lower bound of a prefix class for an IEEE754 format with the given
/// exponent bias and class width in exponent steps.
double prefix_class_lo(int prefix, int classes, int exponent_bias, int exponents_per_class);

/// One row of the 34-row table: prefix rows plus the zero and Inf/NaN sub-rows.
struct TableRow {
    std::string id;
    std::string range_lo;
    std::string range_hi;
    int prefix = 0;
    enum class Part { Zero, NonZero, Whole, Finite, InfNaN } part = Part::Whole;
};

const std::vector<TableRow>& table_rows();

std::uint64_t row_count(const FloatProfile& profile, const TableRow& row);

/// Integer percent; "-" when nothing landed in the row, "0%" below 0.5%.
std::string percent_cell(std::uint64_t count, std::uint64_t total);

enum class TableFormat { Text, Csv };

using NamedProfile = std::pair<std::string, FloatProfile>;

std::string render_table(const std::vector<NamedProfile>& profiles, TableFormat format);

} // namespace selftag
