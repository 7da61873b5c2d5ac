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

// Test-only oracles that never touch the library's word primitives.

#pragma once

#include <cstdint>
#include <string>

namespace oracle {

/// Rotation on a 64-character bit string, most significant bit first.
inline std::uint64_t rotl_bits(std::uint64_t w, unsigned s) {
    std::string bits(64, '0');
    for (int i = 0; i < 64; ++i) {
        bits[static_cast<std::size_t>(63 - i)] = ((w >> i) & 1) ? '1' : '0';
    }
    const std::string rotated = bits.substr(s) + bits.substr(0, s);
    std::uint64_t out = 0;
    for (char c : rotated) {
        out = (out << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return out;
}

inline std::uint64_t rotr_bits(std::uint64_t w, unsigned s) { return rotl_bits(w, (64 - s) % 64); }

inline std::uint32_t rotl_bits32(std::uint32_t w, unsigned s) {
    std::string bits(32, '0');
    for (int i = 0; i < 32; ++i) {
        bits[static_cast<std::size_t>(31 - i)] = ((w >> i) & 1) ? '1' : '0';
    }
    const std::string rotated = bits.substr(s) + bits.substr(0, s);
    std::uint32_t out = 0;
    for (char c : rotated) {
        out = (out << 1) | static_cast<std::uint32_t>(c == '1');
    }
    return out;
}

/// Fixnum encoding by multiplication in 128-bit arithmetic, truncated.
inline std::uint64_t fixnum_by_multiplication(std::int64_t v) {
    return static_cast<std::uint64_t>(static_cast<__int128>(v) * 8);
}

} // namespace oracle
