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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selftag/bench.hpp"
#include "selftag/float_schemes.hpp"
#include "selftag/fuzz.hpp"
#include "selftag/kernels.hpp"
#include "selftag/profiler.hpp"
#include "selftag/report.hpp"
#include "selftag/runtime.hpp"
#include "selftag/st32.hpp"
#include "selftag/word.hpp"

namespace py = pybind11;
using namespace selftag;

namespace {

py::dict interval_dict(const CoverageInterval& iv) {
    py::dict d;
    d["lo"] = iv.lo;
    d["hi"] = iv.hi;
    d["includes_zero"] = iv.includes_zero;
    d["includes_inf_nan"] = iv.includes_inf_nan;
    d["first_prefix"] = iv.first_prefix;
    d["last_prefix"] = iv.last_prefix;
    return d;
}

py::dict record_dict(const RunRecord& r) {
    py::dict d;
    d["kernel"] = r.kernel;
    d["scheme"] = r.scheme;
    d["rep"] = r.rep;
    d["seconds"] = r.seconds;
    for (const auto& [key, value] : r.stats.to_record()) {
        d[py::str(key)] = value;
    }
    d["hit_ratio"] = r.hit_ratio;
    d["checksum_hex"] = checksum_hex(r);
    return d;
}

st32::Variant32 variant32(const std::string& kind, unsigned tag) {
    if (kind == "one") {
        return st32::Variant32::one_tag(st32::Tag2{tag});
    }
    if (kind == "two") {
        return st32::Variant32::two_tag(st32::Tag2{tag});
    }
    throw ContractError("32-bit variant must be 'one' or 'two'");
}

SchemeConfig scheme_of(const std::string& name) { return parse_scheme(name); }

} // namespace

PYBIND11_MODULE(selftag, m) {
    m.doc() = "Float value representations: NaN/NuN-boxing and self-tagging";

    static py::exception<Error> base_error(m, "SelftagError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const TypeError& e) {
            PyErr_SetString(PyExc_TypeError, e.what());
        } catch (const RangeError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const OverflowError& e) {
            PyErr_SetString(PyExc_OverflowError, e.what());
        } catch (const Error& e) {
            py::set_error(base_error, e.what());
        }
    });

    // Word primitives.
    m.def("rotl64", &rotl64, py::arg("w"), py::arg("shift"));
    m.def("rotr64", &rotr64, py::arg("w"), py::arg("shift"));
    m.def("tag_of", [](Word64 w) { return tag_of(w).value(); });
    m.def("has_tag_in_set", [](Word64 w, std::uint8_t mask) { return has_tag_in_set(w, TagSet(mask)); });
    m.def("repeat_mask", [](std::uint8_t mask) { return repeat_mask(TagSet(mask)); });
    m.def("encode_fixnum", &encode_fixnum);
    m.def("decode_fixnum", &decode_fixnum);
    m.def("fixnum_add", &fixnum_add);

    // Schemes.
    m.def("scheme_names", [] {
        std::vector<std::string> out;
        for (const auto& s : preset_schemes()) {
            out.push_back(s.name());
        }
        return out;
    });
    m.def("canonical_name", [](const std::string& name) { return scheme_of(name).name(); });
    m.def("self_tag_set", [](const std::string& scheme) { return self_tag_set(scheme_of(scheme)).mask(); });
    m.def("st_transform", [](FloatBits b, const std::string& s) { return st_transform(b, scheme_of(s)); });
    m.def("st_untransform", [](Word64 w, const std::string& s) { return st_untransform(w, scheme_of(s)); });
    m.def("st_encode", [](FloatBits b, const std::string& s) -> py::object {
        const EncodeOutcome e = st_encode(b, scheme_of(s));
        switch (e.kind) {
        case EncodeOutcome::Kind::Immediate: return py::int_(e.word);
        case EncodeOutcome::Kind::PreallocatedZero: return py::str("preallocated_zero");
        case EncodeOutcome::Kind::NeedsHeap: break;
        }
        return py::none();
    }, "Immediate word, None when the float needs the heap, or 'preallocated_zero'.");
    m.def("covers", [](const std::string& s, FloatBits b) { return covers(scheme_of(s), b); });
    m.def("coverage_intervals", [](const std::string& s) {
        py::list out;
        for (const auto& iv : coverage_intervals(scheme_of(s))) {
            out.append(interval_dict(iv));
        }
        return out;
    });
    m.def("coverage_report", [](const std::string& s) { return coverage_report(scheme_of(s)); });
    m.def("nan_box_float", &nan_box_float);
    m.def("nan_box_nonfloat", [](unsigned tag, std::uint64_t payload) { return nan_box_nonfloat(Tag{tag}, payload); });
    m.def("nun_box_float", &nun_box_float);
    m.def("nun_unbox_float", &nun_unbox_float);

    // 32-bit words.
    m.def("st32_transform", [](std::uint32_t b, const std::string& kind, unsigned tag) {
        return st32::st32_transform(b, variant32(kind, tag));
    }, py::arg("bits"), py::arg("kind"), py::arg("tag") = 0);
    m.def("st32_untransform", [](std::uint32_t w, const std::string& kind, unsigned tag) {
        return st32::st32_untransform(w, variant32(kind, tag));
    }, py::arg("w"), py::arg("kind"), py::arg("tag") = 0);
    m.def("st32_coverage", [](const std::string& kind, unsigned tag) {
        py::list out;
        for (const auto& iv : st32::st32_coverage(variant32(kind, tag))) {
            out.append(interval_dict(iv));
        }
        return out;
    }, py::arg("kind"), py::arg("tag") = 0);
    m.def("encode_fixnum32", &st32::encode_fixnum32);

    // Profiling.
    m.def("classify", [](FloatBits b) {
        const ProfileRow r = classify(b);
        return py::make_tuple(r.prefix, r.zero, r.inf_nan);
    });
    m.def("format_magnitude", &format_magnitude);

    py::class_<Runtime>(m, "Runtime")
        .def(py::init([](const std::string& scheme) { return new Runtime(scheme_of(scheme)); }),
             py::arg("scheme"))
        .def_property_readonly("scheme", [](const Runtime& rt) { return rt.scheme().name(); })
        .def("box_float", &Runtime::box_float)
        .def("unbox_float", &Runtime::unbox_float)
        .def("box", &Runtime::box)
        .def("unbox", &Runtime::unbox)
        .def("is_float_value", &Runtime::is_float_value)
        .def("is_fixnum", &Runtime::is_fixnum)
        .def("make_fixnum", &Runtime::make_fixnum)
        .def("fixnum_value", &Runtime::fixnum_value)
        .def("add", &Runtime::add)
        .def("sub", &Runtime::sub)
        .def("mul", &Runtime::mul)
        .def("div", &Runtime::div)
        .def("less", &Runtime::less)
        .def("preload", [](Runtime& rt, std::uint64_t bytes) { rt.heap().preload(bytes); })
        .def("reset_counters", &Runtime::reset_counters)
        .def_property_readonly("hit_ratio", &Runtime::hit_ratio)
        .def_property_readonly("stats", [](const Runtime& rt) {
            py::dict d;
            for (const auto& [key, value] : rt.heap().stats().to_record()) {
                d[py::str(key)] = value;
            }
            return d;
        });

    m.def("run_kernel", [](const std::string& kernel, const std::string& scheme, std::uint64_t seed,
                           std::uint64_t size) {
        KernelSpec spec = KernelSpec::defaults(parse_kernel(kernel), seed);
        if (size != 0) {
            spec.size = size;
        }
        Runtime rt(scheme_of(scheme));
        RunRecord r;
        {
            py::gil_scoped_release release;
            r = run_kernel(spec, rt);
        }
        return record_dict(r);
    }, py::arg("kernel"), py::arg("scheme"), py::arg("seed") = 1, py::arg("size") = 0);

    m.def("profile_kernel", [](const std::string& kernel, std::uint64_t seed, std::uint64_t size) {
        KernelSpec spec = KernelSpec::defaults(parse_kernel(kernel), seed);
        if (size != 0) {
            spec.size = size;
        }
        Runtime rt(scheme_of("nunbox"));
        FloatProfile profile;
        rt.set_profile_sink(&profile);
        execute_kernel(spec, rt);
        return render_table({{kernel, profile}}, TableFormat::Csv);
    }, py::arg("kernel"), py::arg("seed") = 1, py::arg("size") = 0,
       "Profile table of one kernel as CSV text.");

    m.def("fuzz", [](const std::string& scheme, std::uint64_t n, std::uint64_t seed) {
        const FuzzReport r = fuzz_scheme(scheme_of(scheme), n, seed);
        py::dict d;
        d["samples"] = r.samples;
        d["mismatches"] = r.mismatches;
        d["predicate_mismatches"] = r.predicate_mismatches;
        d["self_tagged_fraction"] = r.self_tagged_fraction();
        return d;
    }, py::arg("scheme"), py::arg("n") = 100000, py::arg("seed") = 1);
}
