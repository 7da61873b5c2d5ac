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

#include "selftag/runtime.hpp"

#include <string>

namespace selftag {
namespace {

constexpr Tag kNanBoxFixnumTag{1};
constexpr std::int64_t kNanBoxFixnumBits = 48;
// NuN-box fixnums must keep their top 16 bits at 0x0000 or 0xFFFF.
constexpr std::int64_t kNunBoxFixnumBits = 45;

} // namespace

Runtime::Runtime(SchemeConfig scheme, std::size_t heap_capacity)
    : scheme_(scheme), heap_(heap_capacity) {
    validate(scheme_);
    switch (scheme_.variant) {
    case Variant::NanBox:
        fixnum_min_ = -(std::int64_t{1} << (kNanBoxFixnumBits - 1));
        fixnum_max_ = (std::int64_t{1} << (kNanBoxFixnumBits - 1)) - 1;
        return;
    case Variant::NunBox:
        fixnum_min_ = -(std::int64_t{1} << (kNunBoxFixnumBits - 1));
        fixnum_max_ = (std::int64_t{1} << (kNunBoxFixnumBits - 1)) - 1;
        return;
    default:
        break;
    }
    if (is_self_tagging(scheme_.variant)) {
        float_tags_ = self_tag_set(scheme_);
    }
    const TagSet taken = float_tags_.with(scheme_.heap.tag);
    unsigned t = 0;
    while (t < 8 && taken.contains(Tag{t})) {
        ++t;
    }
    if (t == 8) {
        throw ContractError("no tag left for fixnums under " + scheme_.name());
    }
    fixnum_tag_ = Tag{t};
    if (scheme_.variant == Variant::SelfTag2Zeros) {
        heap_.preallocate_zeros(scheme_.heap);
    }
}

Word64 Runtime::record(BoxPath path, Word64 w) {
    heap_.note_box(path);
    boxes_ += 1;
    heap_free_boxes_ += path != BoxPath::Heap;
    return w;
}

Word64 Runtime::box_float(FloatBits bits) {
    if (profile_ != nullptr) {
        profile_->add(bits);
    }
    switch (scheme_.variant) {
    case Variant::NanBox:
        return record(BoxPath::Immediate, nan_box_float(bits));
    case Variant::NunBox:
        return record(BoxPath::Immediate, nun_box_float(bits));
    case Variant::Boxed:
        return record(BoxPath::Heap, heap_.alloc_float(bits, scheme_.heap));
    default:
        break;
    }
    const EncodeOutcome outcome = st_encode(bits, scheme_);
    switch (outcome.kind) {
    case EncodeOutcome::Kind::Immediate:
        return record(BoxPath::Immediate, outcome.word);
    case EncodeOutcome::Kind::PreallocatedZero: {
        const auto [pos, neg] = *heap_.zero_handles();
        return record(BoxPath::PreallocatedZero, (bits >> 63) ? neg : pos);
    }
    case EncodeOutcome::Kind::NeedsHeap:
        break;
    }
    return record(BoxPath::Heap, heap_.alloc_float(bits, scheme_.heap));
}

FloatBits Runtime::unbox_float(Word64 w) const {
    switch (scheme_.variant) {
    case Variant::NanBox:
        if (!nan_is_float(w)) {
            throw TypeError("NaN-boxed word is not a float");
        }
        return w;
    case Variant::NunBox:
        return nun_unbox_float(w);
    case Variant::Boxed:
        return heap_.read_float(w);
    default:
        break;
    }
    if (has_tag_in_set(w, float_tags_)) {
        return st_untransform(w, scheme_);
    }
    if (tag_of(w) == scheme_.heap.tag) {
        return heap_.read_float(w);
    }
    throw TypeError("word is not a float under " + scheme_.name());
}

bool Runtime::is_float_value(Word64 w) const {
    switch (scheme_.variant) {
    case Variant::NanBox:
        return nan_is_float(w);
    case Variant::NunBox:
        return nun_is_float(w);
    default:
        break;
    }
    if (has_tag_in_set(w, float_tags_)) {
        return true;
    }
    if (tag_of(w) != scheme_.heap.tag) {
        return false;
    }
    return scheme_.heap.kind == HeapLayout::Kind::TaggedPtr || heap_.is_float_handle(w);
}

bool Runtime::is_fixnum(Word64 w) const noexcept {
    switch (scheme_.variant) {
    case Variant::NanBox:
        return !nan_is_float(w) && ((w >> 48) & 7) == kNanBoxFixnumTag.value();
    case Variant::NunBox:
        return !nun_is_float(w) && (w & kTagMask) == 0;
    default:
        return tag_of(w) == fixnum_tag_;
    }
}

Word64 Runtime::make_fixnum(std::int64_t v) const {
    if (v < fixnum_min_ || v > fixnum_max_) {
        throw RangeError("fixnum out of range for " + scheme_.name() + ": " + std::to_string(v));
    }
    switch (scheme_.variant) {
    case Variant::NanBox:
        return nan_box_nonfloat(kNanBoxFixnumTag, static_cast<std::uint64_t>(v) & kPayloadMask);
    case Variant::NunBox:
        return encode_fixnum(v);
    default:
        return encode_fixnum(v) | fixnum_tag_.value();
    }
}

std::int64_t Runtime::fixnum_value(Word64 w) const {
    if (!is_fixnum(w)) {
        throw TypeError("word is not a fixnum under " + scheme_.name());
    }
    switch (scheme_.variant) {
    case Variant::NanBox: {
        // Sign-extend the 48-bit payload.
        const auto shifted = static_cast<std::int64_t>((w & kPayloadMask) << 16);
        return shifted >> 16;
    }
    case Variant::NunBox:
        return decode_fixnum(w);
    default:
        return decode_fixnum(w & ~kTagMask);
    }
}

Word64 Runtime::fixnum_arith(Op op, Word64 a, Word64 b) const {
    if (fixnum_tag_.value() == 0 && scheme_.variant != Variant::NanBox) {
        // Tag 000 fixnums add and subtract on the encoded words.
        if (op == Op::Add || op == Op::Sub) {
            const Word64 r = op == Op::Add ? fixnum_add(a, b) : fixnum_sub(a, b);
            const auto v = static_cast<std::int64_t>(r) >> kTagBits;
            if (v < fixnum_min_ || v > fixnum_max_) {
                throw OverflowError("fixnum overflow under " + scheme_.name());
            }
            return r;
        }
    }
    const std::int64_t x = fixnum_value(a);
    const std::int64_t y = fixnum_value(b);
    std::int64_t r = 0;
    bool overflow = false;
    switch (op) {
    case Op::Add:
        overflow = __builtin_add_overflow(x, y, &r);
        break;
    case Op::Sub:
        overflow = __builtin_sub_overflow(x, y, &r);
        break;
    case Op::Mul:
        overflow = __builtin_mul_overflow(x, y, &r);
        break;
    case Op::Div:
        if (y == 0) {
            throw RangeError("fixnum division by zero");
        }
        overflow = x == INT64_MIN && y == -1;
        r = overflow ? 0 : x / y;
        break;
    }
    if (overflow || r < fixnum_min_ || r > fixnum_max_) {
        throw OverflowError("fixnum overflow under " + scheme_.name());
    }
    return make_fixnum(r);
}

Word64 Runtime::arith(Op op, Word64 a, Word64 b) {
    if (is_fixnum(a) && is_fixnum(b)) {
        return fixnum_arith(op, a, b);
    }
    if (!is_float_value(a) || !is_float_value(b)) {
        throw TypeError("generic arithmetic needs two fixnums or two floats");
    }
    const double x = unbox(a);
    const double y = unbox(b);
    switch (op) {
    case Op::Add: return box(x + y);
    case Op::Sub: return box(x - y);
    case Op::Mul: return box(x * y);
    case Op::Div: return box(x / y);
    }
    return 0;
}

Word64 Runtime::add(Word64 a, Word64 b) { return arith(Op::Add, a, b); }
Word64 Runtime::sub(Word64 a, Word64 b) { return arith(Op::Sub, a, b); }
Word64 Runtime::mul(Word64 a, Word64 b) { return arith(Op::Mul, a, b); }
Word64 Runtime::div(Word64 a, Word64 b) { return arith(Op::Div, a, b); }

bool Runtime::less(Word64 a, Word64 b) const {
    if (is_fixnum(a) && is_fixnum(b)) {
        return fixnum_value(a) < fixnum_value(b);
    }
    if (!is_float_value(a) || !is_float_value(b)) {
        throw TypeError("generic comparison needs two fixnums or two floats");
    }
    return unbox(a) < unbox(b);
}

double Runtime::hit_ratio() const noexcept {
    if (boxes_ == 0) {
        return 1.0;
    }
    return static_cast<double>(heap_free_boxes_) / static_cast<double>(boxes_);
}

void Runtime::reset_counters() noexcept {
    heap_.reset_kernel_counters();
    boxes_ = 0;
    heap_free_boxes_ = 0;
}

} // namespace selftag
