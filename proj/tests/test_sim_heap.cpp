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

#include <bit>

#include "doctest.h"
#include "selftag/runtime.hpp"
#include "selftag/sim_heap.hpp"

using namespace selftag;

namespace {
FloatBits bits_of(double d) { return std::bit_cast<FloatBits>(d); }
} // namespace

TEST_CASE("alloc_float returns a tagged handle and counts it") {
    SimHeap heap;
    const Word64 h = heap.alloc_float(bits_of(1e-100), HeapLayout::tagged(Tag{2}));
    CHECK(tag_of(h).value() == 2);
    CHECK(heap.stats().float_allocs == 1);
    CHECK(heap.stats().float_bytes == 8);
    CHECK(heap.read_float(h) == bits_of(1e-100));
    CHECK(heap.is_float_handle(h));
}

TEST_CASE("generic layout adds a header word") {
    SimHeap heap;
    const Word64 h = heap.alloc_float(bits_of(3.5), HeapLayout::generic(Tag{1}));
    CHECK(heap.stats().float_bytes == 16);
    CHECK(heap.read_float(h) == bits_of(3.5));
    CHECK(heap.cell(HeapHandle{h >> 3}).header == HeaderType::Float);
}

TEST_CASE("read_float rejects non-handles") {
    SimHeap heap;
    const Word64 h = heap.alloc_float(bits_of(2.0), HeapLayout::tagged(Tag{2}));
    CHECK_THROWS_AS(heap.read_float(encode_fixnum(5)), TypeError);
    CHECK_THROWS_AS(heap.read_float((h & ~Word64{7}) | 5), TypeError);
    CHECK_THROWS_AS(heap.read_float(h + 8), TypeError);
    heap.preload(64);
    const Word64 ballast = (Word64{3} << 3) | 2;
    CHECK_FALSE(heap.is_float_handle(ballast));
}

TEST_CASE("store and load are the identity") {
    SimHeap heap;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const FloatBits b = i * 0x9E3779B97F4A7C15ULL;
        const Word64 h = heap.alloc_float(b, HeapLayout::tagged(Tag{static_cast<unsigned>(i % 7) + 1}));
        REQUIRE(heap.read_float(h) == b);
    }
    CHECK(heap.stats().float_allocs == 1000);
}

TEST_CASE("preallocated zeros are static") {
    SimHeap heap;
    const auto [pos, neg] = heap.preallocate_zeros(HeapLayout::tagged(Tag{1}));
    CHECK(heap.read_float(pos) == 0);
    CHECK(heap.read_float(neg) == 0x8000000000000000ULL);
    CHECK(heap.stats().float_allocs == 0);
    CHECK_THROWS_AS(heap.preallocate_zeros(HeapLayout::tagged(Tag{1})), ContractError);

    Runtime rt(parse_scheme("st2z"));
    const auto before = rt.heap().stats().float_allocs;
    for (int i = 0; i < 1000; ++i) {
        rt.box(0.0);
        rt.box(-0.0);
    }
    CHECK(rt.heap().stats().float_allocs == before);
    CHECK(rt.unbox_float(rt.box(-0.0)) == 0x8000000000000000ULL);
}

TEST_CASE("preload adds ballast under the other counters") {
    SimHeap heap;
    heap.preload(80'000);
    CHECK(heap.stats().other_bytes >= 80'000);
    CHECK(heap.stats().other_allocs == 10'000);
    CHECK(heap.stats().float_allocs == 0);

    SimHeap empty;
    empty.preload(0);
    CHECK(empty.stats() == HeapStats{});
    CHECK(empty.size() == 0);

    SimHeap odd;
    odd.preload(9);
    CHECK(odd.stats().other_bytes == 16);
}

TEST_CASE("reset keeps ballast and clears float counters") {
    SimHeap heap;
    heap.preload(80'000);
    heap.alloc_float(1, HeapLayout::tagged(Tag{2}));
    heap.note_box(BoxPath::Heap);
    heap.note_box(BoxPath::Immediate);
    heap.reset_kernel_counters();
    CHECK(heap.stats().float_allocs == 0);
    CHECK(heap.stats().float_bytes == 0);
    CHECK(heap.stats().slow_path_encodes == 0);
    CHECK(heap.stats().representation_flips == 0);
    CHECK(heap.stats().other_bytes == 80'000);
}

TEST_CASE("capacity is enforced") {
    SimHeap heap(4);
    for (int i = 0; i < 4; ++i) {
        heap.alloc_float(0, HeapLayout::tagged(Tag{2}));
    }
    CHECK_THROWS_AS(heap.alloc_float(0, HeapLayout::tagged(Tag{2})), OutOfMemoryError);

    SimHeap small(10);
    CHECK_THROWS_AS(small.preload(88), OutOfMemoryError);
    CHECK_NOTHROW(small.preload(80));
}

TEST_CASE("flip and slow-path counters") {
    SimHeap heap;
    heap.note_box(BoxPath::Immediate);
    heap.note_box(BoxPath::Immediate);
    heap.note_box(BoxPath::Heap);
    heap.note_box(BoxPath::Heap);
    heap.note_box(BoxPath::Immediate);
    CHECK(heap.stats().slow_path_encodes == 2);
    CHECK(heap.stats().representation_flips == 2);
}

TEST_CASE("stats record keys follow column order") {
    HeapStats s;
    s.float_allocs = 1;
    s.representation_flips = 6;
    const auto rec = s.to_record();
    REQUIRE(rec.size() == 6);
    CHECK(rec[0].first == "float_allocs");
    CHECK(rec[0].second == 1);
    CHECK(rec[5].first == "representation_flips");
    CHECK(rec[5].second == 6);
}
