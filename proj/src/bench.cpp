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

#include "selftag/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace selftag {

RunRecord run_kernel(const KernelSpec& spec, Runtime& rt, int rep) {
    RunRecord r;
    r.kernel = std::string(kernel_name(spec.kernel));
    r.scheme = rt.scheme().name();
    r.rep = rep;
    const auto start = std::chrono::steady_clock::now();
    const Checksum sum = execute_kernel(spec, rt);
    const auto stop = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(stop - start).count();
    r.stats = rt.heap().stats();
    r.hit_ratio = rt.hit_ratio();
    r.checksum = sum.word;
    return r;
}

namespace {

struct Cell {
    Kernel kernel;
    SchemeConfig scheme;
    std::uint64_t preload;
    int rep;
};

RunRecord run_cell(const Cell& cell, const MatrixOptions& options) {
    KernelSpec spec = KernelSpec::defaults(cell.kernel, options.seed);
    if (cell.kernel == Kernel::Sum1 && !options.sum1_input.empty()) {
        spec.input_path = options.sum1_input;
    }
    for (const auto& [k, size] : options.sizes) {
        if (k == cell.kernel) {
            spec.size = size;
        }
    }
    try {
        Runtime rt(cell.scheme);
        rt.heap().preload(cell.preload);
        rt.reset_counters();
        return run_kernel(spec, rt, cell.rep);
    } catch (const std::exception& e) {
        RunRecord r;
        r.kernel = std::string(kernel_name(cell.kernel));
        r.scheme = cell.scheme.name();
        r.rep = cell.rep;
        r.error = e.what();
        return r;
    }
}

} // namespace

std::vector<RunRecord> run_matrix(const MatrixOptions& options) {
    std::vector<Cell> cells;
    for (Kernel k : options.kernels) {
        for (const auto& s : options.schemes) {
            for (std::uint64_t preload : options.preload_bytes) {
                for (int rep = 0; rep < options.reps; ++rep) {
                    cells.push_back({k, s, preload, rep});
                }
            }
        }
    }
    std::vector<RunRecord> records(cells.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, cells.size()));
    if (jobs == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            records[i] = run_cell(cells[i], options);
        }
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) {
                records[i] = run_cell(cells[i], options);
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
    return records;
}

std::string checksum_hex(const RunRecord& r) {
    if (!r.ok()) {
        return "error";
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(r.checksum));
    return buf;
}

namespace {

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["kernel"] = r.kernel;
    j["scheme"] = r.scheme;
    j["rep"] = r.rep;
    j["seconds"] = r.seconds;
    for (const auto& [key, value] : r.stats.to_record()) {
        j[key] = value;
    }
    j["hit_ratio"] = r.hit_ratio;
    j["checksum_hex"] = checksum_hex(r);
    if (!r.ok()) {
        j["error"] = r.error;
    }
    return j;
}

} // namespace

void emit(const std::vector<RunRecord>& records, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            arr.push_back(to_json(r));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.kernel << ',' << r.scheme << ',' << r.rep << ',' << fixed6(r.seconds);
        for (const auto& [_, value] : r.stats.to_record()) {
            out << ',' << value;
        }
        out << ',' << fixed6(r.hit_ratio) << ',' << checksum_hex(r) << '\n';
    }
}

void emit(const std::vector<RunRecord>& records, OutputFormat format, const std::string& path) {
    if (path.empty() || path == "-") {
        emit(records, format, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    emit(records, format, out);
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

std::vector<RunRecord> parse_records_json(const std::string& text) {
    const auto arr = nlohmann::json::parse(text);
    std::vector<RunRecord> out;
    for (const auto& j : arr) {
        RunRecord r;
        r.kernel = j.at("kernel").get<std::string>();
        r.scheme = j.at("scheme").get<std::string>();
        r.rep = j.at("rep").get<int>();
        r.seconds = j.at("seconds").get<double>();
        r.stats.float_allocs = j.at("float_allocs").get<std::uint64_t>();
        r.stats.float_bytes = j.at("float_bytes").get<std::uint64_t>();
        r.stats.other_allocs = j.at("other_allocs").get<std::uint64_t>();
        r.stats.other_bytes = j.at("other_bytes").get<std::uint64_t>();
        r.stats.slow_path_encodes = j.at("slow_path_encodes").get<std::uint64_t>();
        r.stats.representation_flips = j.at("representation_flips").get<std::uint64_t>();
        r.hit_ratio = j.at("hit_ratio").get<double>();
        const auto hex = j.at("checksum_hex").get<std::string>();
        if (hex == "error") {
            r.error = j.value("error", std::string("error"));
        } else {
            r.checksum = std::stoull(hex, nullptr, 16);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string timing_summary(const std::vector<RunRecord>& records, const std::string& baseline) {
    // (kernel, scheme) -> seconds per rep, in execution order.
    std::map<std::pair<std::string, std::string>, std::vector<double>> times;
    for (const auto& r : records) {
        if (r.ok() && r.seconds > 0.0) {
            times[{r.kernel, r.scheme}].push_back(r.seconds);
        }
    }
    std::ostringstream out;
    out << "kernel,scheme,reps,geomean_seconds,log_sigma,ratio_vs_" << baseline << '\n';
    for (const auto& [key, secs] : times) {
        double log_sum = 0.0;
        for (double s : secs) {
            log_sum += std::log(s);
        }
        const double log_mean = log_sum / static_cast<double>(secs.size());
        double var = 0.0;
        for (double s : secs) {
            var += (std::log(s) - log_mean) * (std::log(s) - log_mean);
        }
        const double sigma = secs.size() > 1 ? std::sqrt(var / static_cast<double>(secs.size() - 1)) : 0.0;
        std::string ratio = "-";
        const auto base = times.find({key.first, baseline});
        if (base != times.end()) {
            const std::size_t n = std::min(secs.size(), base->second.size());
            double log_ratio = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                log_ratio += std::log(secs[i] / base->second[i]);
            }
            if (n > 0) {
                ratio = fixed6(std::exp(log_ratio / static_cast<double>(n)));
            }
        }
        out << key.first << ',' << key.second << ',' << secs.size() << ',' << fixed6(std::exp(log_mean))
            << ',' << fixed6(sigma) << ',' << ratio << '\n';
    }
    return out.str();
}

} // namespace selftag
