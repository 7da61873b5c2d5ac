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

#include "selftag/profiler.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace selftag {

void FloatProfile::merge(const FloatProfile& other) noexcept {
    for (int p = 0; p < kPrefixClasses; ++p) {
        prefix_counts_[p] += other.prefix_counts_[p];
    }
    zero_count_ += other.zero_count_;
    inf_nan_count_ += other.inf_nan_count_;
    total_ += other.total_;
}

double hit_ratio(const FloatProfile& profile, const SchemeConfig& config) {
    if (!is_self_tagging(config.variant)) {
        throw ContractError("hit_ratio needs a self-tagging variant");
    }
    const std::uint32_t mask = covered_prefix_mask(config);
    if (profile.total() == 0) {
        return 1.0;
    }
    std::uint64_t hits = 0;
    for (int p = 0; p < kPrefixClasses; ++p) {
        if ((mask >> p) & 1u) {
            hits += profile.prefix_count(p);
        }
    }
    if (config.variant == Variant::SelfTag2Zeros && !(mask & 1u)) {
        hits += profile.zero_count();
    }
    return static_cast<double>(hits) / static_cast<double>(profile.total());
}

std::string format_magnitude(double x) {
    if (x == 0.0) {
        return "0.0";
    }
    if (std::isinf(x)) {
        return "Infinity";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2g", x);
    std::string s(buf);
    const auto e = s.find('e');
    if (e == std::string::npos) {
        return s;
    }
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    const bool negative = exponent.front() == '-';
    exponent.erase(0, 1);
    exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size() - 1));
    return mantissa + "e" + (negative ? "-" : "") + exponent;
}

double prefix_class_lo(int prefix, int classes, int exponent_bias, int exponents_per_class) {
    if (prefix <= 0) {
        return 0.0;
    }
    if (prefix >= classes) {
        return INFINITY;
    }
    return std::ldexp(1.0, prefix * exponents_per_class - exponent_bias);
}

const std::vector<TableRow>& table_rows() {
    static const std::vector<TableRow> rows = [] {
        std::vector<TableRow> out;
        auto bits_of = [](int p) {
            std::string s(5, '0');
            for (int i = 0; i < 5; ++i) {
                s[4 - i] = ((p >> i) & 1) ? '1' : '0';
            }
            return s;
        };
        auto lo = [](int p) { return prefix_class_lo(p, 32, 1023, 64); };
        out.push_back({bits_of(0) + ":zero", "0.0", "0.0", 0, TableRow::Part::Zero});
        out.push_back({bits_of(0), format_magnitude(DBL_TRUE_MIN), format_magnitude(lo(1)), 0,
                       TableRow::Part::NonZero});
        for (int p = 1; p < 31; ++p) {
            out.push_back({bits_of(p), format_magnitude(lo(p)), format_magnitude(lo(p + 1)), p,
                           TableRow::Part::Whole});
        }
        out.push_back({bits_of(31), format_magnitude(lo(31)), format_magnitude(DBL_MAX), 31,
                       TableRow::Part::Finite});
        out.push_back({bits_of(31) + ":infnan", "Infinity/NaN", "Infinity/NaN", 31,
                       TableRow::Part::InfNaN});
        return out;
    }();
    return rows;
}

std::uint64_t row_count(const FloatProfile& profile, const TableRow& row) {
    switch (row.part) {
    case TableRow::Part::Zero:
        return profile.zero_count();
    case TableRow::Part::NonZero:
        return profile.prefix_count(0) - profile.zero_count();
    case TableRow::Part::Finite:
        return profile.prefix_count(31) - profile.inf_nan_count();
    case TableRow::Part::InfNaN:
        return profile.inf_nan_count();
    case TableRow::Part::Whole:
        break;
    }
    return profile.prefix_count(row.prefix);
}

std::string percent_cell(std::uint64_t count, std::uint64_t total) {
    if (count == 0 || total == 0) {
        return "-";
    }
    const double pct = 100.0 * static_cast<double>(count) / static_cast<double>(total);
    if (pct < 0.5) {
        return "0%";
    }
    return std::to_string(static_cast<long long>(std::lround(pct))) + "%";
}

std::string render_table(const std::vector<NamedProfile>& profiles, TableFormat format) {
    std::ostringstream out;
    const auto& rows = table_rows();
    if (format == TableFormat::Csv) {
        out << "prefix,range_lo,range_hi";
        for (const auto& [name, _] : profiles) {
            out << ',' << name;
        }
        out << '\n';
        for (const auto& row : rows) {
            out << row.id << ',' << row.range_lo << ',' << row.range_hi;
            for (const auto& [_, profile] : profiles) {
                out << ',' << percent_cell(row_count(profile, row), profile.total());
            }
            out << '\n';
        }
        return out.str();
    }

    auto label = [](const TableRow& row) {
        if (row.part == TableRow::Part::Zero) {
            return std::string("0.0");
        }
        if (row.part == TableRow::Part::InfNaN) {
            return std::string("Infinity/NaN");
        }
        return row.range_lo + " .. " + row.range_hi;
    };
    std::size_t label_width = 5;
    for (const auto& row : rows) {
        label_width = std::max(label_width, label(row).size());
    }
    std::vector<std::size_t> widths;
    for (const auto& [name, _] : profiles) {
        widths.push_back(std::max<std::size_t>(name.size(), 4));
    }
    auto pad_left = [](const std::string& s, std::size_t w) {
        return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
    };
    auto pad_right = [](const std::string& s, std::size_t w) {
        return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
    };
    out << pad_right("expo", 13) << "  " << pad_right("range", label_width);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        out << "  " << pad_left(profiles[i].first, widths[i]);
    }
    out << '\n';
    for (const auto& row : rows) {
        out << pad_right(row.id, 13) << "  " << pad_right(label(row), label_width);
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            const auto& profile = profiles[i].second;
            out << "  " << pad_left(percent_cell(row_count(profile, row), profile.total()), widths[i]);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace selftag
