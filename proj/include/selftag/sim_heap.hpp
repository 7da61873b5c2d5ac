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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selftag/float_schemes.hpp"
#include "selftag/word.hpp"

namespace selftag {

/// Index of a cell in the arena. Handles are never reused.
struct HeapHandle {
    std::size_t index = 0;
};

/// Type code stored in the header word of generic-pointer cells.
enum class HeaderType : std::uint8_t { None = 0, Float = 1, Ballast = 2 };

struct HeapCell {
    enum class Kind : std::uint8_t { FloatCell, GenericCell, Ballast };

    Kind kind = Kind::FloatCell;
    HeaderType header = HeaderType::None;
    /// Tag of the handle word that references the cell.
    Tag tag;
    Word64 payload = 0;
};

struct HeapStats {
    std::uint64_t float_allocs = 0;
    std::uint64_t float_bytes = 0;
    std::uint64_t other_allocs = 0;
    std::uint64_t other_bytes = 0;
    std::uint64_t slow_path_encodes = 0;
    std::uint64_t representation_flips = 0;

    /// Flat key -> count record, keys in CSV column order.
    std::vector<std::pair<std::string, std::uint64_t>> to_record() const;

    friend bool operator==(const HeapStats&, const HeapStats&) = default;
};

/// Which way a float boxing went; consecutive differing outcomes count as a
/// representation flip.
enum class BoxPath : std::uint8_t { Immediate, Heap, PreallocatedZero };

/// Arena of 8-byte cells standing in for a garbage-collected heap. Nothing is
/// ever freed; running past capacity is an error.
class SimHeap {
public:
    static constexpr std::size_t kDefaultCapacity = std::size_t{1} << 24;
    static constexpr std::uint64_t kWordBytes = 8;

    explicit SimHeap(std::size_t capacity_cells = kDefaultCapacity);

    Word64 alloc_float(FloatBits bits, HeapLayout layout);
    FloatBits read_float(Word64 handle) const;

    /// Whether a word references a live float cell (tag and header checked).
    bool is_float_handle(Word64 w) const noexcept;

    /// Handles for +0.0 and -0.0. These static cells are not counted as
    /// allocations. May be called once per heap.
    std::pair<Word64, Word64> preallocate_zeros(HeapLayout layout);
    std::optional<std::pair<Word64, Word64>> zero_handles() const noexcept { return zeros_; }

    /// Allocates inert ballast cells totalling at least the given bytes.
    void preload(std::uint64_t bytes);

    /// Records the outcome of one float boxing.
    void note_box(BoxPath path) noexcept;

    /// Zeroes float and encode counters; ballast and other counters remain.
    void reset_kernel_counters() noexcept;

    const HeapStats& stats() const noexcept { return stats_; }
    std::size_t size() const noexcept { return cells_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    const HeapCell& cell(HeapHandle h) const { return cells_.at(h.index); }

private:
    HeapHandle push(const HeapCell& cell);
    static Word64 handle_word(HeapHandle h, Tag tag);
    const HeapCell* lookup(Word64 w) const noexcept;

    std::size_t capacity_;
    std::vector<HeapCell> cells_;
    HeapStats stats_;
    std::optional<std::pair<Word64, Word64>> zeros_;
    std::optional<BoxPath> last_path_;
};

} // namespace selftag
