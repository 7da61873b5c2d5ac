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
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "selftag/runtime.hpp"

using namespace selftag;

namespace {

FloatBits bits_of(double d) { return std::bit_cast<FloatBits>(d); }

std::vector<std::string> scheme_names() {
    std::vector<std::string> out;
    for (const auto& c : preset_schemes()) {
        out.push_back(c.name());
    }
    for (const char* extra : {"st1:0", "st2b:0", "st3:0", "st4:0", "st2z:3", "st3:0@g2"}) {
        out.emplace_back(extra);
    }
    return out;
}

} // namespace

TEST_CASE("boxing examples") {
    Runtime st3(parse_scheme("st3:0"));
    CHECK(st3.box(1.0) == 0xFF00000000000003ULL);
    CHECK(st3.heap().stats().float_allocs == 0);
    const Word64 h = st3.box(1e-100);
    CHECK(tag_of(h) == st3.scheme().heap.tag);
    CHECK(st3.heap().stats().float_allocs == 1);
    CHECK(st3.heap().stats().slow_path_encodes == 1);
    CHECK(st3.unbox_float(0xFF00000000000003ULL) == 0x3FF0000000000000ULL);
    CHECK(st3.unbox_float(h) == bits_of(1e-100));

    Runtime boxed(parse_scheme("boxed"));
    boxed.box(1.0);
    CHECK(boxed.heap().stats().float_allocs == 1);

    Runtime nun(parse_scheme("nunbox"));
    CHECK(nun.unbox_float(0x3FF1000000000000ULL) == 0x3FF0000000000000ULL);
}

TEST_CASE("unbox(box(x)) is the identity under every scheme") {
    std::mt19937_64 rng(21);
    for (const auto& name : scheme_names()) {
        CAPTURE(name);
        Runtime rt(parse_scheme(name));
        for (int i = 0; i < 20000; ++i) {
            const FloatBits b = rng();
            const Word64 w = rt.box_float(b);
            REQUIRE(rt.is_float_value(w));
            REQUIRE_FALSE(rt.is_fixnum(w));
            const bool reserved = (rt.scheme().variant == Variant::NanBox && b >= kCanonicalNaN) ||
                                  (rt.scheme().variant == Variant::NunBox && b >= kNunReservedNaN);
            REQUIRE(rt.unbox_float(w) == (reserved ? kCanonicalNaN : b));
        }
    }
}

TEST_CASE("is_float_value examples") {
    Runtime st3(parse_scheme("st3:0"));
    CHECK(st3.is_float_value((Word64{5} << 3) | 2));
    Runtime st1(parse_scheme("st1:6"));
    CHECK_FALSE(st1.is_float_value(st1.make_fixnum(12)));
    Runtime nun(parse_scheme("nunbox"));
    CHECK_FALSE(nun.is_float_value(0x28));
    Runtime st4(parse_scheme("st4"));
    CHECK_FALSE(st4.is_float_value((Word64{1000} << 3) | st4.scheme().heap.tag.value()));
}

TEST_CASE("fixnums are disjoint from floats") {
    std::mt19937_64 rng(22);
    for (const auto& name : scheme_names()) {
        CAPTURE(name);
        Runtime rt(parse_scheme(name));
        std::uniform_int_distribution<std::int64_t> dist(rt.fixnum_min(), rt.fixnum_max());
        for (std::int64_t v : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, rt.fixnum_min(), rt.fixnum_max()}) {
            const Word64 w = rt.make_fixnum(v);
            CHECK(rt.is_fixnum(w));
            CHECK_FALSE(rt.is_float_value(w));
            CHECK(rt.fixnum_value(w) == v);
        }
        for (int i = 0; i < 5000; ++i) {
            const std::int64_t v = dist(rng);
            const Word64 w = rt.make_fixnum(v);
            REQUIRE(rt.is_fixnum(w));
            REQUIRE_FALSE(rt.is_float_value(w));
            REQUIRE(rt.fixnum_value(w) == v);
        }
        CHECK_THROWS_AS(rt.make_fixnum(rt.fixnum_max() + 1), RangeError);
        CHECK_THROWS_AS(rt.make_fixnum(rt.fixnum_min() - 1), RangeError);
    }
}

TEST_CASE("generic arithmetic examples") {
    for (const auto& name : scheme_names()) {
        CAPTURE(name);
        Runtime rt(parse_scheme(name));
        CHECK(rt.unbox(rt.add(rt.box(1.5), rt.box(2.25))) == 3.75);
        CHECK(rt.unbox(rt.sub(rt.box(1.5), rt.box(2.25))) == -0.75);
        CHECK(rt.unbox(rt.mul(rt.box(1.5), rt.box(2.0))) == 3.0);
        CHECK(rt.unbox(rt.div(rt.box(1.0), rt.box(0.0))) == std::numeric_limits<double>::infinity());
        CHECK(std::isnan(rt.unbox(rt.div(rt.box(0.0), rt.box(0.0)))));

        rt.reset_counters();
        CHECK(rt.add(rt.make_fixnum(5), rt.make_fixnum(7)) == rt.make_fixnum(12));
        CHECK(rt.fixnum_value(rt.mul(rt.make_fixnum(-6), rt.make_fixnum(7))) == -42);
        CHECK(rt.fixnum_value(rt.div(rt.make_fixnum(-7), rt.make_fixnum(2))) == -3);
        CHECK(rt.heap().stats().float_allocs == 0);
        CHECK(rt.boxes() == 0);

        CHECK_THROWS_AS(rt.add(rt.make_fixnum(1), rt.box(1.0)), TypeError);
        CHECK_THROWS_AS(rt.div(rt.make_fixnum(1), rt.make_fixnum(0)), RangeError);
        CHECK_THROWS_AS(rt.add(rt.make_fixnum(rt.fixnum_max()), rt.make_fixnum(1)), OverflowError);
        CHECK_THROWS_AS(rt.sub(rt.make_fixnum(rt.fixnum_min()), rt.make_fixnum(1)), OverflowError);
        CHECK_THROWS_AS(rt.mul(rt.make_fixnum(rt.fixnum_max()), rt.make_fixnum(2)), OverflowError);

        CHECK(rt.less(rt.box(1.0), rt.box(2.0)));
        CHECK_FALSE(rt.less(rt.box(2.0), rt.box(2.0)));
        CHECK(rt.less(rt.make_fixnum(-3), rt.make_fixnum(2)));
        CHECK_THROWS_AS(rt.less(rt.make_fixnum(1), rt.box(2.0)), TypeError);
    }
}

TEST_CASE("infinity stays immediate under the 1-tag scheme") {
    Runtime rt(parse_scheme("st1:0"));
    const Word64 inf = rt.div(rt.box(1.0), rt.box(0.0));
    CHECK(tag_of(inf).value() == 0);
    CHECK(rt.heap().stats().float_allocs == 0);
    CHECK(rt.unbox(inf) == std::numeric_limits<double>::infinity());
}

TEST_CASE("float results are scheme independent") {
    std::mt19937_64 rng(23);
    std::vector<Runtime> rts;
    for (const auto& name : scheme_names()) {
        rts.emplace_back(parse_scheme(name));
    }
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150);
        const double y = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150);
        const double want[] = {x + y, x - y, x * y, x / y};
        for (auto& rt : rts) {
            const Word64 a = rt.box(x);
            const Word64 b = rt.box(y);
            REQUIRE(rt.unbox_float(rt.add(a, b)) == bits_of(want[0]));
            REQUIRE(rt.unbox_float(rt.sub(a, b)) == bits_of(want[1]));
            REQUIRE(rt.unbox_float(rt.mul(a, b)) == bits_of(want[2]));
            REQUIRE(rt.unbox_float(rt.div(a, b)) == bits_of(want[3]));
        }
    }
}

TEST_CASE("hit ratio counts heap-free boxings") {
    Runtime rt(parse_scheme("st3:0"));
    CHECK(rt.hit_ratio() == 1.0);
    rt.box(1.0);
    rt.box(1e-100);
    rt.box(2.0);
    rt.box(1e300);
    CHECK(rt.boxes() == 4);
    CHECK(rt.heap_free_boxes() == 2);
    CHECK(rt.hit_ratio() == 0.5);
    rt.reset_counters();
    CHECK(rt.boxes() == 0);
    CHECK(rt.hit_ratio() == 1.0);

    Runtime z(parse_scheme("st2z"));
    z.box(0.0);
    CHECK(z.hit_ratio() == 1.0);
}

TEST_CASE("profile sink sees every boxed float") {
    Runtime rt(parse_scheme("nunbox"));
    FloatProfile profile;
    rt.set_profile_sink(&profile);
    rt.add(rt.box(1.0), rt.box(2.0));
    CHECK(profile.total() == 3);
    rt.set_profile_sink(nullptr);
    rt.box(1.0);
    CHECK(profile.total() == 3);
}

TEST_CASE("unbox rejects non-float words") {
    Runtime st3(parse_scheme("st3:0"));
    CHECK_THROWS_AS(st3.unbox_float(st3.make_fixnum(3)), TypeError);
    Runtime nan(parse_scheme("nanbox"));
    CHECK_THROWS_AS(nan.unbox_float(nan.make_fixnum(3)), TypeError);
    Runtime boxed(parse_scheme("boxed"));
    CHECK_THROWS_AS(boxed.unbox_float(boxed.make_fixnum(3)), TypeError);
}

TEST_CASE("fixnum tags per scheme") {
    CHECK(Runtime(parse_scheme("st3")).fixnum_tag().value() == 0);
    CHECK(Runtime(parse_scheme("st1")).fixnum_tag().value() == 0);
    CHECK(Runtime(parse_scheme("stm")).fixnum_tag().value() == 1);
    CHECK(Runtime(parse_scheme("st3:0")).fixnum_tag().value() == 1);
    CHECK(Runtime(parse_scheme("nunbox")).fixnum_max() == (std::int64_t{1} << 44) - 1);
    CHECK(Runtime(parse_scheme("nanbox")).fixnum_max() == (std::int64_t{1} << 47) - 1);
    CHECK(Runtime(parse_scheme("boxed")).fixnum_max() == kFixnumMax);
}
