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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "selftag/float_schemes.hpp"
#include "selftag/kernels.hpp"
#include "selftag/runtime.hpp"
#include "selftag/sim_heap.hpp"

namespace selftag {

struct RunRecord {
    std::string kernel;
    std::string scheme;
    int rep = 0;
    double seconds = 0.0;
    HeapStats stats;
    double hit_ratio = 1.0;
    std::uint64_t checksum = 0;
    /// Empty when the run succeeded.
    std::string error;

    bool ok() const noexcept { return error.empty(); }
};

/// Runs one repetition on a runtime whose counters were reset by the caller.
RunRecord run_kernel(const KernelSpec& spec, Runtime& rt, int rep = 0);

struct MatrixOptions {
    std::vector<Kernel> kernels;
    std::vector<SchemeConfig> schemes;
    int reps = 1;
    std::vector<std::uint64_t> preload_bytes{0};
    std::uint64_t seed = 1;
    /// Optional sum1 input file shared by every cell.
    std::string sum1_input;
    unsigned jobs = 1;
    /// Per-kernel size overrides; kernels not listed use their defaults.
    std::vector<std::pair<Kernel, std::uint64_t>> sizes;
};

/// Kernels x schemes x preload points x reps, in that nesting order. Each
/// repetition gets a fresh Runtime. A failing cell is recorded with its
/// error and does not stop the matrix.
std::vector<RunRecord> run_matrix(const MatrixOptions& options);

enum class OutputFormat { Csv, Json };

inline constexpr const char* kCsvHeader =
    "kernel,scheme,rep,seconds,float_allocs,float_bytes,other_allocs,other_bytes,"
    "slow_path_encodes,representation_flips,hit_ratio,checksum_hex";

/// 16 lowercase hex digits; "error" for failed runs.
std::string checksum_hex(const RunRecord& r);

void emit(const std::vector<RunRecord>& records, OutputFormat format, std::ostream& out);

/// Writes to a file, or to standard output when path is empty or "-".
void emit(const std::vector<RunRecord>& records, OutputFormat format, const std::string& path);

std::vector<RunRecord> parse_records_json(const std::string& text);

/// Geometric-mean seconds per kernel and scheme, and the mean of per-rep
/// time ratios against the baseline scheme paired in execution order.
/// Timings are informational only.
std::string timing_summary(const std::vector<RunRecord>& records, const std::string& baseline);

} // namespace selftag
