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
#include <sstream>

#include "doctest.h"
#include "selftag/bench.hpp"
#include "selftag/fuzz.hpp"
#include "selftag/report.hpp"

using namespace selftag;

namespace {

MatrixOptions small_matrix() {
    MatrixOptions o;
    o.kernels = all_kernels();
    o.sizes = {{Kernel::SumFp, 2000}, {Kernel::FibFp, 12}, {Kernel::Mbrot, 12},
               {Kernel::Pnpoly, 500}, {Kernel::Fft, 32},   {Kernel::Sum1, 200}};
    return o;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST_CASE("matrix cardinality and order") {
    MatrixOptions o = small_matrix();
    for (const char* s : {"boxed", "nunbox", "st3", "st1"}) {
        o.schemes.push_back(parse_scheme(s));
    }
    o.reps = 3;
    const auto records = run_matrix(o);
    REQUIRE(records.size() == 72);
    CHECK(records[0].kernel == "sumfp");
    CHECK(records[0].scheme == "boxed");
    CHECK(records[2].rep == 2);
    CHECK(records[3].scheme == "nunbox");
    CHECK(records.back().kernel == "sum1");
    for (const auto& r : records) {
        CHECK(r.ok());
    }

    o.jobs = 4;
    const auto parallel = run_matrix(o);
    REQUIRE(parallel.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parallel[i].kernel == records[i].kernel);
        CHECK(parallel[i].scheme == records[i].scheme);
        CHECK(parallel[i].checksum == records[i].checksum);
        CHECK(parallel[i].stats == records[i].stats);
    }
}

TEST_CASE("checksums agree across every preset") {
    MatrixOptions o = small_matrix();
    o.schemes = preset_schemes();
    const auto records = run_matrix(o);
    for (const auto& r : records) {
        REQUIRE(r.ok());
        for (const auto& other : records) {
            if (other.kernel == r.kernel) {
                REQUIRE(other.checksum == r.checksum);
            }
        }
    }
}

TEST_CASE("preload sweep keeps ballast out of float counters") {
    MatrixOptions o = small_matrix();
    o.kernels = {Kernel::SumFp};
    o.schemes = {parse_scheme("boxed")};
    o.preload_bytes = {0, 80'000};
    const auto records = run_matrix(o);
    REQUIRE(records.size() == 2);
    CHECK(records[0].stats.other_bytes == 0);
    CHECK(records[1].stats.other_bytes >= 80'000);
    CHECK(records[0].stats.float_bytes == records[1].stats.float_bytes);
}

TEST_CASE("failed cells are flagged without aborting") {
    MatrixOptions o = small_matrix();
    o.kernels = {Kernel::SumFp, Kernel::FibFp};
    o.schemes = {parse_scheme("st3")};
    o.preload_bytes = {std::uint64_t{1} << 40, 0};
    const auto records = run_matrix(o);
    REQUIRE(records.size() == 4);
    CHECK_FALSE(records[0].ok());
    CHECK(records[1].ok());
    CHECK(checksum_hex(records[0]) == "error");

    std::ostringstream json;
    emit(records, OutputFormat::Json, json);
    const auto back = parse_records_json(json.str());
    REQUIRE(back.size() == 4);
    CHECK_FALSE(back[0].ok());
    CHECK(back[1].checksum == records[1].checksum);
}

TEST_CASE("CSV output") {
    RunRecord r;
    r.kernel = "sumfp";
    r.scheme = "st1:6";
    r.checksum = std::bit_cast<std::uint64_t>(500000500000.0);
    r.stats.float_allocs = 3;
    r.seconds = 0.25;
    std::ostringstream out;
    emit({r}, OutputFormat::Csv, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "kernel,scheme,rep,seconds,float_allocs,float_bytes,other_allocs,other_bytes,"
                      "slow_path_encodes,representation_flips,hit_ratio,checksum_hex");
    CHECK(lines[1] == "sumfp,st1:6,0,0.250000,3,0,0,0,0,0,1.000000,425d1a968a480000");
}

TEST_CASE("JSON roundtrip") {
    MatrixOptions o = small_matrix();
    o.kernels = {Kernel::Mbrot, Kernel::Fft};
    o.schemes = {parse_scheme("boxed"), parse_scheme("st4")};
    o.reps = 2;
    const auto records = run_matrix(o);
    std::ostringstream out;
    emit(records, OutputFormat::Json, out);
    const auto back = parse_records_json(out.str());
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].kernel == records[i].kernel);
        CHECK(back[i].scheme == records[i].scheme);
        CHECK(back[i].rep == records[i].rep);
        CHECK(back[i].stats == records[i].stats);
        CHECK(back[i].checksum == records[i].checksum);
        CHECK(back[i].hit_ratio == records[i].hit_ratio);
    }
    CHECK(back[0].stats.float_bytes > 0);
}

TEST_CASE("emit rejects an unwritable path") {
    CHECK_THROWS(emit({}, OutputFormat::Csv, std::string("/nonexistent-dir/out.csv")));
}

TEST_CASE("timing summary") {
    std::vector<RunRecord> records;
    for (int rep = 0; rep < 2; ++rep) {
        RunRecord a;
        a.kernel = "sumfp";
        a.scheme = "nunbox";
        a.rep = rep;
        a.seconds = 1.0;
        RunRecord b = a;
        b.scheme = "st3";
        b.seconds = 0.5;
        records.push_back(a);
        records.push_back(b);
    }
    const auto lines = lines_of(timing_summary(records, "nunbox"));
    REQUIRE(lines.size() == 3);
    CHECK(lines[1] == "sumfp,nunbox,2,1.000000,0.000000,1.000000");
    CHECK(lines[2] == "sumfp,st3,2,0.500000,0.000000,0.500000");
}

TEST_CASE("fuzz reports") {
    for (const auto& c : preset_schemes()) {
        if (c.variant == Variant::Boxed) {
            continue;
        }
        const auto r = fuzz_scheme(c, 100000, 3);
        CAPTURE(c.name());
        CHECK(r.passed());
        CHECK(r.samples >= 100000);
    }
    const auto st3 = fuzz_scheme(parse_scheme("st3"), 200000, 4);
    CHECK(st3.self_tagged_fraction() == doctest::Approx(3.0 / 8.0).epsilon(0.01));
    CHECK(class_fraction(parse_scheme("st3")) == 12.0 / 32.0);
    CHECK(class_fraction(parse_scheme("st4")) == 0.5);
    CHECK(class_fraction(parse_scheme("st1:3")) == 1.0 / 8.0);
    CHECK(class_fraction(parse_scheme("st2b:5")) == 2.0 / 8.0);
    CHECK(class_fraction(parse_scheme("st2z")) == 2.0 / 8.0);
    CHECK(class_fraction(parse_scheme("stm")) == 2.0 / 8.0);
}

TEST_CASE("coverage report text") {
    const auto text = coverage_report(parse_scheme("st1:0"));
    CHECK(text.find("1.1e-19 .. 3.7e19") != std::string::npos);
    CHECK(text.find("1.9e289 .. Infinity/NaN") != std::string::npos);
    CHECK(text.find("0.0 .. 2.1e-289") != std::string::npos);
    CHECK(power_of_two_label(std::ldexp(1.0, -63)) == "2^-63");
    const auto csv = lines_of(coverage_table_csv({parse_scheme("st3"), parse_scheme("st1")}));
    CHECK(csv.size() == 33);
}
