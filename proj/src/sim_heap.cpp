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

#include "selftag/sim_heap.hpp"

namespace selftag {

std::vector<std::pair<std::string, std::uint64_t>> HeapStats::to_record() const {
    return {
        {"float_allocs", float_allocs},
        {"float_bytes", float_bytes},
        {"other_allocs", other_allocs},
        {"other_bytes", other_bytes},
        {"slow_path_encodes", slow_path_encodes},
        {"representation_flips", representation_flips},
    };
}

SimHeap::SimHeap(std::size_t capacity_cells) : capacity_(capacity_cells) {
    // Handles are index * 8 | tag, so the index must leave room for the shift.
    if (capacity_cells > (std::size_t{1} << 60)) {
        throw RangeError("heap capacity too large");
    }
}

HeapHandle SimHeap::push(const HeapCell& cell) {
    if (cells_.size() >= capacity_) {
        throw OutOfMemoryError("simulated heap exhausted at " + std::to_string(capacity_) +
                               " cells");
    }
    cells_.push_back(cell);
    return HeapHandle{cells_.size() - 1};
}

Word64 SimHeap::handle_word(HeapHandle h, Tag tag) {
    return (static_cast<Word64>(h.index) << kTagBits) | tag.value();
}

Word64 SimHeap::alloc_float(FloatBits bits, HeapLayout layout) {
    HeapCell cell;
    cell.tag = layout.tag;
    cell.payload = bits;
    std::uint64_t bytes = kWordBytes;
    if (layout.kind == HeapLayout::Kind::GenericPtr) {
        cell.kind = HeapCell::Kind::GenericCell;
        cell.header = HeaderType::Float;
        bytes += kWordBytes;
    }
    const HeapHandle h = push(cell);
    stats_.float_allocs += 1;
    stats_.float_bytes += bytes;
    return handle_word(h, layout.tag);
}

const HeapCell* SimHeap::lookup(Word64 w) const noexcept {
    const Word64 index = w >> kTagBits;
    if (index >= cells_.size()) {
        return nullptr;
    }
    const HeapCell& c = cells_[index];
    if (c.tag != tag_of(w)) {
        return nullptr;
    }
    const bool is_float = c.kind == HeapCell::Kind::FloatCell ||
                          (c.kind == HeapCell::Kind::GenericCell && c.header == HeaderType::Float);
    return is_float ? &c : nullptr;
}

bool SimHeap::is_float_handle(Word64 w) const noexcept { return lookup(w) != nullptr; }

FloatBits SimHeap::read_float(Word64 handle) const {
    const HeapCell* c = lookup(handle);
    if (c == nullptr) {
        throw TypeError("word is not a heap float handle");
    }
    return c->payload;
}

std::pair<Word64, Word64> SimHeap::preallocate_zeros(HeapLayout layout) {
    if (zeros_) {
        throw ContractError("zeros already preallocated on this heap");
    }
    HeapCell cell;
    cell.tag = layout.tag;
    if (layout.kind == HeapLayout::Kind::GenericPtr) {
        cell.kind = HeapCell::Kind::GenericCell;
        cell.header = HeaderType::Float;
    }
    cell.payload = 0x0;
    const Word64 pos = handle_word(push(cell), layout.tag);
    cell.payload = 0x8000000000000000ULL;
    const Word64 neg = handle_word(push(cell), layout.tag);
    zeros_ = std::pair{pos, neg};
    return *zeros_;
}

void SimHeap::preload(std::uint64_t bytes) {
    const std::uint64_t cells = (bytes + kWordBytes - 1) / kWordBytes;
    if (cells > capacity_ - cells_.size()) {
        throw OutOfMemoryError("preload of " + std::to_string(bytes) +
                               " bytes exceeds heap capacity");
    }
    HeapCell ballast;
    ballast.kind = HeapCell::Kind::Ballast;
    ballast.header = HeaderType::Ballast;
    cells_.insert(cells_.end(), cells, ballast);
    stats_.other_allocs += cells;
    stats_.other_bytes += cells * kWordBytes;
}

void SimHeap::note_box(BoxPath path) noexcept {
    if (path == BoxPath::Heap) {
        stats_.slow_path_encodes += 1;
    }
    if (last_path_ && *last_path_ != path) {
        stats_.representation_flips += 1;
    }
    last_path_ = path;
}

void SimHeap::reset_kernel_counters() noexcept {
    stats_.float_allocs = 0;
    stats_.float_bytes = 0;
    stats_.slow_path_encodes = 0;
    stats_.representation_flips = 0;
    last_path_.reset();
}

} // namespace selftag
