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

// Desk-scale float benchmark kernels. Every float they compute is boxed and
// unboxed through a Runtime, so allocation behaviour reflects the scheme.

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "selftag/runtime.hpp"

namespace selftag {

enum class Kernel { SumFp, FibFp, Mbrot, Pnpoly, Fft, Sum1 };

std::string_view kernel_name(Kernel k) noexcept;
Kernel parse_kernel(std::string_view name);
const std::vector<Kernel>& all_kernels();

struct KernelSpec {
    Kernel kernel = Kernel::SumFp;
    /// sumfp: upper bound n; fibfp: argument; mbrot: grid side; pnpoly:
    /// number of points; fft: number of points (power of two); sum1: lines
    /// generated when no input file is given.
    std::uint64_t size = 0;
    std::uint64_t seed = 1;
    /// sum1 only; generated from the seed when empty.
    std::filesystem::path input_path;

    static KernelSpec defaults(Kernel k, std::uint64_t seed = 1);
};

inline constexpr int kMbrotMaxIterations = 64;
inline constexpr int kPnpolyVertices = 20;

/// Final value of a kernel run. The word is the binary64 pattern for float
/// results and the two's-complement integer for counts.
struct Checksum {
    bool is_count = false;
    std::uint64_t word = 0;

    friend bool operator==(const Checksum&, const Checksum&) = default;
};

Checksum execute_kernel(const KernelSpec& spec, Runtime& rt);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Vertices of the fixed 20-sided star polygon used by pnpoly.
void pnpoly_polygon(std::vector<double>& xs, std::vector<double>& ys);

/// Writes the sum1 input: one decimal float per line, log-uniform over
/// [1e-3, 1e3], LF-terminated.
void write_sum1_input(const std::filesystem::path& path, std::uint64_t seed, std::uint64_t lines);

/// Reads a sum1 input file. Throws std::runtime_error on I/O or parse errors.
std::vector<double> read_sum1_input(const std::filesystem::path& path);

/// Default location of the generated sum1 input for a seed.
std::filesystem::path default_sum1_path(std::uint64_t seed, std::uint64_t lines);

} // namespace selftag
