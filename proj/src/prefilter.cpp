// Copyright 2026 The irf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irf/prefilter.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "irf/parallel.hpp"

namespace irf {
namespace {

// cos^n for the common integral exponents, std::pow otherwise.
double lobe_power(double c, double n, int integral) {
    if (integral <= 0) return std::pow(c, n);
    double result = 1.0, base = c;
    for (int e = integral; e > 0; e >>= 1) {
        if (e & 1) result *= base;
        base *= base;
    }
    return result;
}

struct SourceTexels {
    std::vector<double> x, y, z, solid_angle;
    std::vector<double> r, g, b;
};

SourceTexels gather(const HdrEnvironmentMap& map) {
    SourceTexels s;
    const std::size_t n = std::size_t(map.width()) * map.height();
    for (auto* v : {&s.x, &s.y, &s.z, &s.solid_angle, &s.r, &s.g, &s.b}) v->reserve(n);
    for (int y = 0; y < map.height(); ++y) {
        const double d_omega = map.texel_solid_angle(y);
        for (int x = 0; x < map.width(); ++x) {
            const Vec3 d = map.texel_direction(x, y);
            const Rgb c = map.texel(x, y);
            s.x.push_back(d.x);
            s.y.push_back(d.y);
            s.z.push_back(d.z);
            s.solid_angle.push_back(d_omega);
            s.r.push_back(c.r);
            s.g.push_back(c.g);
            s.b.push_back(c.b);
        }
    }
    return s;
}

}  // namespace

ExponentSet::ExponentSet(std::vector<double> exponents) : values_(std::move(exponents)) {
    if (values_.empty()) throw std::invalid_argument("exponent set is empty");
    if (values_.front() != 1.0) {
        throw std::invalid_argument("first exponent must be 1 (diffuse lobe), got " +
                                    std::to_string(values_.front()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 1.0) {
            throw std::invalid_argument("exponent " + std::to_string(values_[i]) + " is not >= 1");
        }
        if (i > 0 && values_[i] <= values_[i - 1]) {
            throw std::invalid_argument("exponents must be strictly increasing");
        }
    }
}

HdrEnvironmentMap preconvolve(const HdrEnvironmentMap& map, double exponent, int out_width,
                              int out_height, int threads) {
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
        throw std::invalid_argument("Phong exponent must be >= 1, got " + std::to_string(exponent));
    }
    if (out_height < 2 || out_width != 2 * out_height) {
        throw std::invalid_argument("light map must be 2:1 and at least 4x2, got " +
                                    std::to_string(out_width) + "x" + std::to_string(out_height));
    }
    const SourceTexels src = gather(map);
    const int integral =
        (exponent == std::floor(exponent) && exponent <= 4096) ? int(exponent) : 0;

    std::vector<float> out(std::size_t(out_width) * out_height * 3);
    const std::size_t texels = std::size_t(out_width) * out_height;
    parallel_for(texels, threads, [&](std::size_t i) {
        const int ox = int(i % out_width);
        const int oy = int(i / out_width);
        const Vec3 d = uv_to_direction((ox + 0.5) / out_width, (oy + 0.5) / out_height);
        double mass = 0, r = 0, g = 0, b = 0;
        for (std::size_t k = 0; k < src.x.size(); ++k) {
            const double c = src.x[k] * d.x + src.y[k] * d.y + src.z[k] * d.z;
            if (c <= 0.0) continue;
            const double w = lobe_power(c, exponent, integral) * src.solid_angle[k];
            mass += w;
            r += w * src.r[k];
            g += w * src.g[k];
            b += w * src.b[k];
        }
        float* o = &out[i * 3];
        if (mass > 0) {
            o[0] = float(r / mass);
            o[1] = float(g / mass);
            o[2] = float(b / mass);
        }
    });
    return {out_width, out_height, std::move(out)};
}

Rgb oracle_shade(const HdrEnvironmentMap& map, const Vec3& d, double exponent) {
    double mass = 0;
    Rgb sum;
    for (int y = 0; y < map.height(); ++y) {
        const double v = (y + 0.5) / map.height();
        const double theta = v * kPi;
        const double d_omega = std::sin(theta) * (kPi / map.height()) * (2 * kPi / map.width());
        for (int x = 0; x < map.width(); ++x) {
            const Vec3 w = uv_to_direction((x + 0.5) / map.width(), v);
            const double c = dot(w, d);
            if (c <= 0.0) continue;
            const double lobe = std::pow(c, exponent) * d_omega;
            mass += lobe;
            sum += map.texel(x, y) * lobe;
        }
    }
    return mass > 0 ? sum * (1.0 / mass) : Rgb{};
}

LightMapStack::LightMapStack(ExponentSet exponents, std::vector<HdrEnvironmentMap> maps)
    : exponents_(std::move(exponents)), maps_(std::move(maps)) {
    if (maps_.size() != exponents_.size()) {
        throw std::invalid_argument("light map count " + std::to_string(maps_.size()) +
                                    " does not match exponent count " +
                                    std::to_string(exponents_.size()));
    }
}

Rgb LightMapStack::specular(const Vec3& reflected, std::span<const double> weights) const {
    Rgb s;
    const std::size_t n = std::min(weights.size(), maps_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (weights[k] != 0.0) s += maps_[k].sample_bilinear(reflected) * weights[k];
    }
    return s;
}

LightMapStack LightMapStack::rotate_yaw(double angle) const {
    std::vector<HdrEnvironmentMap> rotated;
    rotated.reserve(maps_.size());
    for (const auto& m : maps_) rotated.push_back(m.rotate_yaw(angle));
    return {exponents_, std::move(rotated)};
}

LightMapStack build_stack(const HdrEnvironmentMap& map, const ExponentSet& exponents,
                          int out_width, int out_height, int threads) {
    std::vector<HdrEnvironmentMap> maps;
    maps.reserve(exponents.size());
    for (double n : exponents.values()) {
        maps.push_back(preconvolve(map, n, out_width, out_height, threads));
    }
    return {exponents, std::move(maps)};
}

}  // namespace irf
