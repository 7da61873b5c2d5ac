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

#include <bit>
#include <cstdint>

#include "selftag/float_schemes.hpp"
#include "selftag/profiler.hpp"
#include "selftag/sim_heap.hpp"
#include "selftag/word.hpp"

namespace selftag {

/// A hybrid value runtime for one scheme: floats are immediate when the
/// scheme allows it and heap boxed otherwise; fixnums are always immediate.
/// Words are only meaningful to the runtime that produced them.
class Runtime {
public:
    explicit Runtime(SchemeConfig scheme, std::size_t heap_capacity = SimHeap::kDefaultCapacity);

    Runtime(const Runtime&) = delete;
    Runtime& operator=(const Runtime&) = delete;
    Runtime(Runtime&&) = default;
    Runtime& operator=(Runtime&&) = default;

    const SchemeConfig& scheme() const noexcept { return scheme_; }
    SimHeap& heap() noexcept { return heap_; }
    const SimHeap& heap() const noexcept { return heap_; }

    /// Every boxed float is also added to the sink. Pass nullptr to detach.
    void set_profile_sink(FloatProfile* sink) noexcept { profile_ = sink; }

    Word64 box_float(FloatBits bits);
    FloatBits unbox_float(Word64 w) const;
    bool is_float_value(Word64 w) const;

    Word64 box(double d) { return box_float(std::bit_cast<FloatBits>(d)); }
    double unbox(Word64 w) const { return std::bit_cast<double>(unbox_float(w)); }

    bool is_fixnum(Word64 w) const noexcept;
    Word64 make_fixnum(std::int64_t v) const;
    std::int64_t fixnum_value(Word64 w) const;
    std::int64_t fixnum_min() const noexcept { return fixnum_min_; }
    std::int64_t fixnum_max() const noexcept { return fixnum_max_; }
    /// Low tag of fixnums for the tag-based schemes.
    Tag fixnum_tag() const noexcept { return fixnum_tag_; }

    // Generic arithmetic: both operands fixnums or both floats.
    Word64 add(Word64 a, Word64 b);
    Word64 sub(Word64 a, Word64 b);
    Word64 mul(Word64 a, Word64 b);
    /// Fixnums divide with truncation; a zero fixnum divisor is a RangeError.
    Word64 div(Word64 a, Word64 b);
    bool less(Word64 a, Word64 b) const;

    std::uint64_t boxes() const noexcept { return boxes_; }
    std::uint64_t heap_free_boxes() const noexcept { return heap_free_boxes_; }
    /// Fraction of boxings that avoided a heap allocation; 1.0 before any.
    double hit_ratio() const noexcept;

    /// Clears kernel counters on the runtime and its heap; ballast stays.
    void reset_counters() noexcept;

private:
    enum class Op { Add, Sub, Mul, Div };

    Word64 arith(Op op, Word64 a, Word64 b);
    Word64 fixnum_arith(Op op, Word64 a, Word64 b) const;
    Word64 record(BoxPath path, Word64 w);

    SchemeConfig scheme_;
    SimHeap heap_;
    TagSet float_tags_;
    Tag fixnum_tag_;
    std::int64_t fixnum_min_ = kFixnumMin;
    std::int64_t fixnum_max_ = kFixnumMax;
    FloatProfile* profile_ = nullptr;
    std::uint64_t boxes_ = 0;
    std::uint64_t heap_free_boxes_ = 0;
};

} // namespace selftag
