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

#include "selftag/kernels.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace selftag {
namespace {

constexpr std::array<std::pair<std::string_view, Kernel>, 6> kKernelNames{{
    {"sumfp", Kernel::SumFp},
    {"fibfp", Kernel::FibFp},
    {"mbrot", Kernel::Mbrot},
    {"pnpoly", Kernel::Pnpoly},
    {"fft", Kernel::Fft},
    {"sum1", Kernel::Sum1},
}};

Checksum float_checksum(const Runtime& rt, Word64 w) {
    return {false, rt.unbox_float(w)};
}

Checksum count_checksum(const Runtime& rt, Word64 w) {
    return {true, static_cast<std::uint64_t>(rt.fixnum_value(w))};
}

Checksum sumfp(Runtime& rt, std::uint64_t n) {
    const Word64 one = rt.box(1.0);
    const Word64 limit = rt.box(static_cast<double>(n));
    Word64 i = rt.box(0.0);
    Word64 sum = rt.box(0.0);
    while (!rt.less(limit, i)) {
        sum = rt.add(sum, i);
        i = rt.add(i, one);
    }
    return float_checksum(rt, sum);
}

struct Fib {
    Runtime& rt;
    Word64 one;
    Word64 two;

    Word64 operator()(Word64 n) const {
        if (rt.less(n, two)) {
            return n;
        }
        return rt.add((*this)(rt.sub(n, one)), (*this)(rt.sub(n, two)));
    }
};

Checksum fibfp(Runtime& rt, std::uint64_t n) {
    Fib fib{rt, rt.box(1.0), rt.box(2.0)};
    return float_checksum(rt, fib(rt.box(static_cast<double>(n))));
}

Checksum mbrot(Runtime& rt, std::uint64_t side) {
    const Word64 x0 = rt.box(-2.0);
    const Word64 y0 = rt.box(-1.1);
    const Word64 step_x = rt.box(2.75 / static_cast<double>(side));
    const Word64 step_y = rt.box(2.2 / static_cast<double>(side));
    const Word64 radius2 = rt.box(4.0);
    const Word64 two = rt.box(2.0);
    const Word64 one = rt.make_fixnum(1);
    Word64 total = rt.make_fixnum(0);
    for (std::uint64_t y = 0; y < side; ++y) {
        const Word64 ci = rt.add(y0, rt.mul(rt.box(static_cast<double>(y)), step_y));
        for (std::uint64_t x = 0; x < side; ++x) {
            const Word64 cr = rt.add(x0, rt.mul(rt.box(static_cast<double>(x)), step_x));
            Word64 zr = cr;
            Word64 zi = ci;
            int count = 0;
            for (; count < kMbrotMaxIterations; ++count) {
                const Word64 zr2 = rt.mul(zr, zr);
                const Word64 zi2 = rt.mul(zi, zi);
                if (rt.less(radius2, rt.add(zr2, zi2))) {
                    break;
                }
                const Word64 new_zr = rt.add(rt.sub(zr2, zi2), cr);
                zi = rt.add(rt.mul(two, rt.mul(zr, zi)), ci);
                zr = new_zr;
                total = rt.add(total, one);
            }
        }
    }
    return count_checksum(rt, total);
}

Checksum pnpoly(Runtime& rt, std::uint64_t points, std::uint64_t seed) {
    std::vector<double> px;
    std::vector<double> py;
    pnpoly_polygon(px, py);
    std::vector<Word64> xs;
    std::vector<Word64> ys;
    for (std::size_t k = 0; k < px.size(); ++k) {
        xs.push_back(rt.box(px[k]));
        ys.push_back(rt.box(py[k]));
    }
    std::mt19937_64 rng(seed);
    const Word64 one = rt.make_fixnum(1);
    Word64 inside = rt.make_fixnum(0);
    const std::size_t nv = xs.size();
    for (std::uint64_t n = 0; n < points; ++n) {
        const double ux = uniform01(rng);
        const double uy = uniform01(rng);
        const Word64 x = rt.box(-1.2 + 2.4 * ux);
        const Word64 y = rt.box(-1.2 + 2.4 * uy);
        bool c = false;
        for (std::size_t i = 0, j = nv - 1; i < nv; j = i++) {
            const bool above_i = rt.less(y, ys[i]);
            const bool above_j = rt.less(y, ys[j]);
            if (above_i == above_j) {
                continue;
            }
            // x < (xj - xi) * (y - yi) / (yj - yi) + xi
            const Word64 cross = rt.add(
                rt.div(rt.mul(rt.sub(xs[j], xs[i]), rt.sub(y, ys[i])), rt.sub(ys[j], ys[i])),
                xs[i]);
            if (rt.less(x, cross)) {
                c = !c;
            }
        }
        if (c) {
            inside = rt.add(inside, one);
        }
    }
    return count_checksum(rt, inside);
}

Checksum fft(Runtime& rt, std::uint64_t n, std::uint64_t seed) {
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("fft size must be a power of two");
    }
    std::mt19937_64 rng(seed);
    std::vector<Word64> re(n);
    std::vector<Word64> im(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        re[k] = rt.box(2.0 * uniform01(rng) - 1.0);
        im[k] = rt.box(0.0);
    }
    for (std::uint64_t i = 1, j = 0; i < n; ++i) {
        std::uint64_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::uint64_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const Word64 wr_step = rt.box(std::cos(angle));
        const Word64 wi_step = rt.box(std::sin(angle));
        for (std::uint64_t i = 0; i < n; i += len) {
            Word64 wr = rt.box(1.0);
            Word64 wi = rt.box(0.0);
            for (std::uint64_t k = 0; k < len / 2; ++k) {
                const std::uint64_t a = i + k;
                const std::uint64_t b = a + len / 2;
                const Word64 vr = rt.sub(rt.mul(re[b], wr), rt.mul(im[b], wi));
                const Word64 vi = rt.add(rt.mul(re[b], wi), rt.mul(im[b], wr));
                re[b] = rt.sub(re[a], vr);
                im[b] = rt.sub(im[a], vi);
                re[a] = rt.add(re[a], vr);
                im[a] = rt.add(im[a], vi);
                const Word64 next_wr = rt.sub(rt.mul(wr, wr_step), rt.mul(wi, wi_step));
                wi = rt.add(rt.mul(wr, wi_step), rt.mul(wi, wr_step));
                wr = next_wr;
            }
        }
    }
    Word64 energy = rt.box(0.0);
    for (std::uint64_t k = 0; k < n; ++k) {
        energy = rt.add(energy, rt.add(rt.mul(re[k], re[k]), rt.mul(im[k], im[k])));
    }
    return float_checksum(rt, energy);
}

Checksum sum1(Runtime& rt, const KernelSpec& spec) {
    std::filesystem::path path = spec.input_path;
    if (path.empty()) {
        path = default_sum1_path(spec.seed, spec.size);
        if (!std::filesystem::exists(path)) {
            // Concurrent runs may race here; each writes its own file and the
            // rename is atomic.
            std::filesystem::path tmp = path;
            tmp += "." + std::to_string(std::random_device{}()) + ".tmp";
            write_sum1_input(tmp, spec.seed, spec.size);
            std::filesystem::rename(tmp, path);
        }
    }
    Word64 sum = rt.box(0.0);
    for (double v : read_sum1_input(path)) {
        sum = rt.add(sum, rt.box(v));
    }
    return float_checksum(rt, sum);
}

} // namespace

std::string_view kernel_name(Kernel k) noexcept {
    for (const auto& [name, kernel] : kKernelNames) {
        if (kernel == k) {
            return name;
        }
    }
    return "?";
}

Kernel parse_kernel(std::string_view name) {
    for (const auto& [n, kernel] : kKernelNames) {
        if (n == name) {
            return kernel;
        }
    }
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

const std::vector<Kernel>& all_kernels() {
    static const std::vector<Kernel> kernels = [] {
        std::vector<Kernel> out;
        for (const auto& [_, k] : kKernelNames) {
            out.push_back(k);
        }
        return out;
    }();
    return kernels;
}

KernelSpec KernelSpec::defaults(Kernel k, std::uint64_t seed) {
    KernelSpec spec;
    spec.kernel = k;
    spec.seed = seed;
    switch (k) {
    case Kernel::SumFp: spec.size = 1'000'000; break;
    case Kernel::FibFp: spec.size = 25; break;
    case Kernel::Mbrot: spec.size = 75; break;
    case Kernel::Pnpoly: spec.size = 100'000; break;
    case Kernel::Fft: spec.size = 1024; break;
    case Kernel::Sum1: spec.size = 100'000; break;
    }
    return spec;
}

void pnpoly_polygon(std::vector<double>& xs, std::vector<double>& ys) {
    xs.clear();
    ys.clear();
    for (int k = 0; k < kPnpolyVertices; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / kPnpolyVertices;
        const double r = (k % 2 == 0) ? 1.0 : 0.6;
        xs.push_back(r * std::cos(theta));
        ys.push_back(r * std::sin(theta));
    }
}

void write_sum1_input(const std::filesystem::path& path, std::uint64_t seed, std::uint64_t lines) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write sum1 input " + path.string());
    }
    std::mt19937_64 rng(seed);
    char buf[40];
    for (std::uint64_t i = 0; i < lines; ++i) {
        const double v = std::pow(10.0, 6.0 * uniform01(rng) - 3.0);
        const int len = std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out.write(buf, len);
    }
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::vector<double> read_sum1_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open sum1 input " + path.string());
    }
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc{} || ptr != line.data() + line.size()) {
            throw std::runtime_error("bad float in sum1 input: '" + line + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::filesystem::path default_sum1_path(std::uint64_t seed, std::uint64_t lines) {
    return std::filesystem::temp_directory_path() /
           ("selftag-sum1-" + std::to_string(seed) + "-" + std::to_string(lines) + ".txt");
}

Checksum execute_kernel(const KernelSpec& spec, Runtime& rt) {
    switch (spec.kernel) {
    case Kernel::SumFp: return sumfp(rt, spec.size);
    case Kernel::FibFp: return fibfp(rt, spec.size);
    case Kernel::Mbrot: return mbrot(rt, spec.size);
    case Kernel::Pnpoly: return pnpoly(rt, spec.size, spec.seed);
    case Kernel::Fft: return fft(rt, spec.size, spec.seed);
    case Kernel::Sum1: return sum1(rt, spec);
    }
    throw std::invalid_argument("unknown kernel");
}

} // namespace selftag
