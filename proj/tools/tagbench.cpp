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

// tagbench: benchmark, profile, coverage and fuzzing front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "selftag/bench.hpp"
#include "selftag/float_schemes.hpp"
#include "selftag/fuzz.hpp"
#include "selftag/kernels.hpp"
#include "selftag/profiler.hpp"
#include "selftag/report.hpp"
#include "selftag/runtime.hpp"
#include "selftag/st32.hpp"

namespace {

using namespace selftag;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<Kernel> parse_kernels(const std::string& text) {
    if (text == "all") {
        return all_kernels();
    }
    std::vector<Kernel> out;
    for (const auto& name : split_list(text)) {
        out.push_back(parse_kernel(name));
    }
    return out;
}

std::vector<SchemeConfig> parse_schemes(const std::string& text) {
    if (text == "all") {
        return preset_schemes();
    }
    std::vector<SchemeConfig> out;
    for (const auto& name : split_list(text)) {
        out.push_back(parse_scheme(name));
    }
    return out;
}

std::vector<st32::Variant32> parse_schemes32(const std::string& text) {
    if (text == "all") {
        return {st32::Variant32::one_tag(st32::Tag2{0}), st32::Variant32::two_tag(st32::Tag2{0})};
    }
    std::vector<st32::Variant32> out;
    for (const auto& name : split_list(text)) {
        const auto colon = name.find(':');
        const std::string base = name.substr(0, colon);
        const unsigned tag = colon == std::string::npos ? 0 : static_cast<unsigned>(std::stoul(name.substr(colon + 1)));
        if (base == "st1") {
            out.push_back(st32::Variant32::one_tag(st32::Tag2{tag}));
        } else if (base == "st2b") {
            out.push_back(st32::Variant32::two_tag(st32::Tag2{tag}));
        } else {
            throw ContractError("32-bit words support st1[:tag] and st2b[:tag], not '" + name + "'");
        }
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

int run_bench(const std::string& kernels, const std::string& schemes, int reps,
              const std::string& preload, std::uint64_t seed, const std::string& format,
              const std::string& out, unsigned jobs, const std::string& sum1_input,
              bool summary) {
    MatrixOptions options;
    options.kernels = parse_kernels(kernels);
    options.schemes = parse_schemes(schemes);
    options.reps = reps;
    options.preload_bytes.clear();
    for (const auto& b : split_list(preload)) {
        options.preload_bytes.push_back(std::stoull(b));
    }
    if (options.preload_bytes.empty()) {
        options.preload_bytes.push_back(0);
    }
    options.seed = seed;
    options.jobs = jobs;
    options.sum1_input = sum1_input;
    const auto records = run_matrix(options);
    emit(records, format == "json" ? OutputFormat::Json : OutputFormat::Csv, out);
    int failed = 0;
    for (const auto& r : records) {
        if (!r.ok()) {
            std::cerr << "tagbench: " << r.kernel << " under " << r.scheme << " failed: " << r.error << '\n';
            ++failed;
        }
    }
    if (summary) {
        std::cerr << timing_summary(records, "nunbox");
    }
    return failed == 0 ? 0 : 1;
}

int run_profile(const std::string& kernels, std::uint64_t seed, const std::string& format,
                const std::string& out) {
    std::vector<NamedProfile> profiles;
    for (Kernel k : parse_kernels(kernels)) {
        Runtime rt(parse_scheme("nunbox"));
        FloatProfile profile;
        rt.set_profile_sink(&profile);
        execute_kernel(KernelSpec::defaults(k, seed), rt);
        profiles.emplace_back(std::string(kernel_name(k)), profile);
    }
    write_output(render_table(profiles, format == "csv" ? TableFormat::Csv : TableFormat::Text), out);
    return 0;
}

int run_coverage(const std::string& schemes, int bits, const std::string& format) {
    if (bits == 32) {
        const auto variants = parse_schemes32(schemes);
        if (format == "csv") {
            std::cout << coverage_table_csv32(variants);
            return 0;
        }
        for (const auto& v : variants) {
            std::cout << coverage_report32(v) << '\n';
        }
        return 0;
    }
    const auto configs = parse_schemes(schemes);
    if (format == "csv") {
        std::vector<SchemeConfig> tables;
        for (const auto& c : configs) {
            if (is_self_tagging(c.variant) && c.variant != Variant::SelfTagMantissa) {
                tables.push_back(c);
            }
        }
        std::cout << coverage_table_csv(tables);
        return 0;
    }
    for (const auto& c : configs) {
        std::cout << coverage_report(c) << '\n';
    }
    return 0;
}

void print_report(const FuzzReport& r) {
    std::printf("%-12s samples=%llu mismatches=%llu predicate_mismatches=%llu self_tagged_fraction=%.6f\n",
                r.scheme.c_str(), static_cast<unsigned long long>(r.samples),
                static_cast<unsigned long long>(r.mismatches),
                static_cast<unsigned long long>(r.predicate_mismatches), r.self_tagged_fraction());
}

int run_fuzz(const std::string& schemes, std::uint64_t n, std::uint64_t seed, int bits, bool exhaustive) {
    bool ok = true;
    if (bits == 32) {
        for (const auto& v : parse_schemes32(schemes)) {
            const FuzzReport r = exhaustive ? exhaustive_st32(v, std::max(1u, std::thread::hardware_concurrency()))
                                            : fuzz_st32(v, n, seed);
            print_report(r);
            ok = ok && r.passed();
        }
        return ok ? 0 : 1;
    }
    if (exhaustive) {
        throw ContractError("--exhaustive is only available with --bits 32");
    }
    for (const auto& c : parse_schemes(schemes)) {
        if (c.variant == Variant::Boxed) {
            continue;
        }
        const FuzzReport r = fuzz_scheme(c, n, seed);
        print_report(r);
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tagbench: float value-representation laboratory"};
    app.require_subcommand(1);

    std::string kernels = "all";
    std::string schemes = "all";
    int reps = 1;
    std::string preload = "0";
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out = "-";
    unsigned jobs = 1;
    std::string sum1_input;
    bool summary = false;
    auto* bench = app.add_subcommand("bench", "run kernels under schemes and report allocations");
    bench->add_option("--kernel", kernels, "kernel name, comma list, or all");
    bench->add_option("--scheme", schemes, "scheme name, comma list, or all");
    bench->add_option("--reps", reps, "repetitions per cell")->check(CLI::PositiveNumber);
    bench->add_option("--preload-bytes", preload, "ballast bytes, or a comma list to sweep");
    bench->add_option("--seed", seed, "seed for generated inputs");
    bench->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--out", out, "output path, - for stdout");
    bench->add_option("--jobs", jobs, "cells run in parallel")->check(CLI::PositiveNumber);
    bench->add_option("--sum1-input", sum1_input, "sum1 input file (generated when omitted)");
    bench->add_flag("--summary", summary, "print geometric-mean timings to stderr");

    std::string profile_format = "text";
    auto* profile = app.add_subcommand("profile", "exponent-prefix float profile of kernels");
    profile->add_option("--kernel", kernels, "kernel name, comma list, or all");
    profile->add_option("--seed", seed);
    profile->add_option("--format", profile_format)->check(CLI::IsMember({"text", "csv"}));
    profile->add_option("--out", out, "output path, - for stdout");

    int bits = 64;
    std::string coverage_format = "text";
    auto* coverage = app.add_subcommand("coverage", "report the float ranges a scheme self-tags");
    coverage->add_option("--scheme", schemes, "scheme name, comma list, or all");
    coverage->add_option("--bits", bits)->check(CLI::IsMember({32, 64}));
    coverage->add_option("--format", coverage_format)->check(CLI::IsMember({"text", "csv"}));

    std::uint64_t n = 10'000'000;
    bool exhaustive = false;
    auto* fuzz = app.add_subcommand("fuzz", "roundtrip fuzzing of encodings; exit 0 on zero mismatches");
    fuzz->add_option("--scheme", schemes, "scheme name, comma list, or all");
    fuzz->add_option("--n", n, "random patterns per scheme");
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--bits", bits)->check(CLI::IsMember({32, 64}));
    fuzz->add_flag("--exhaustive", exhaustive, "all 2^32 patterns (32-bit only)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            return run_bench(kernels, schemes, reps, preload, seed, format, out, jobs, sum1_input, summary);
        }
        if (profile->parsed()) {
            return run_profile(kernels, seed, profile_format, out);
        }
        if (coverage->parsed()) {
            return run_coverage(schemes, bits, coverage_format);
        }
        if (fuzz->parsed()) {
            return run_fuzz(schemes, n, seed, bits, exhaustive);
        }
    } catch (const std::exception& e) {
        std::cerr << "tagbench: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
