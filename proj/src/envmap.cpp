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

#include "irf/envmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace irf {

TexCoord direction_to_uv(const Vec3& d) {
    double u = (std::atan2(d.x, -d.z) + kPi) / (2 * kPi);
    if (u >= 1.0) u -= 1.0;
    const double v = std::acos(std::clamp(d.y, -1.0, 1.0)) / kPi;
    return {u, v};
}

Vec3 uv_to_direction(double u, double v) {
    const double phi = u * 2 * kPi - kPi;
    const double theta = v * kPi;
    const double s = std::sin(theta);
    return {s * std::sin(phi), std::cos(theta), -s * std::cos(phi)};
}

HdrEnvironmentMap::HdrEnvironmentMap(int width, int height, std::vector<float> rgb)
    : width_(width), height_(height), rgb_(std::move(rgb)) {
    if (height <= 0 || width != 2 * height) {
        throw std::invalid_argument("environment map must be 2:1, got " + std::to_string(width) +
                                    "x" + std::to_string(height));
    }
    if (rgb_.size() != std::size_t(width) * height * 3) {
        throw std::invalid_argument("environment map buffer size does not match dimensions");
    }
    for (std::size_t i = 0; i < rgb_.size(); ++i) {
        if (!std::isfinite(rgb_[i]) || rgb_[i] < 0.0f) {
            const std::size_t px = i / 3;
            throw std::invalid_argument("environment map value at texel (" +
                                        std::to_string(px % width) + ", " +
                                        std::to_string(px / width) +
                                        ") is not finite and non-negative");
        }
    }
}

HdrEnvironmentMap HdrEnvironmentMap::constant(int width, int height, const Rgb& value) {
    std::vector<float> rgb(std::size_t(width) * height * 3);
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = float(value.r);
        rgb[i + 1] = float(value.g);
        rgb[i + 2] = float(value.b);
    }
    return {width, height, std::move(rgb)};
}

HdrEnvironmentMap HdrEnvironmentMap::from_function(
    int width, int height, const std::function<Rgb(const Vec3&)>& radiance) {
    std::vector<float> rgb(std::size_t(width) * height * 3);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Rgb c = radiance(
                uv_to_direction((x + 0.5) / width, (y + 0.5) / height));
            float* p = &rgb[(std::size_t(y) * width + x) * 3];
            p[0] = float(c.r);
            p[1] = float(c.g);
            p[2] = float(c.b);
        }
    }
    return {width, height, std::move(rgb)};
}

HdrEnvironmentMap HdrEnvironmentMap::from_pfm(const PfmImage& image) {
    return {image.width, image.height, image.rgb};
}

PfmImage HdrEnvironmentMap::to_pfm() const { return {width_, height_, rgb_}; }

Vec3 HdrEnvironmentMap::texel_direction(int x, int y) const {
    return uv_to_direction((x + 0.5) / width_, (y + 0.5) / height_);
}

double HdrEnvironmentMap::texel_solid_angle(int y) const {
    const double dtheta = kPi / height_;
    const double dphi = 2 * kPi / width_;
    return std::sin((y + 0.5) * dtheta) * dtheta * dphi;
}

Rgb HdrEnvironmentMap::sample_bilinear(const Vec3& d) const {
    const TexCoord uv = direction_to_uv(d);
    return sample_uv(uv.u, uv.v);
}

Rgb HdrEnvironmentMap::sample_uv(double u, double v) const {
    const double fx = u * width_ - 0.5;
    const double fy = std::clamp(v * height_ - 0.5, 0.0, double(height_ - 1));
    const double x0f = std::floor(fx);
    const double y0f = std::floor(fy);
    const double tx = fx - x0f;
    const double ty = fy - y0f;

    auto wrap = [w = width_](long x) { return int(((x % w) + w) % w); };
    const int x0 = wrap(long(x0f));
    const int x1 = wrap(long(x0f) + 1);
    const int y0 = int(y0f);
    const int y1 = std::min(y0 + 1, height_ - 1);

    if (tx == 0.0 && ty == 0.0) return texel(x0, y0);
    const Rgb top = texel(x0, y0) * (1 - tx) + texel(x1, y0) * tx;
    if (ty == 0.0) return top;
    const Rgb bottom = texel(x0, y1) * (1 - tx) + texel(x1, y1) * tx;
    return top * (1 - ty) + bottom * ty;
}

HdrEnvironmentMap HdrEnvironmentMap::rotate_yaw(double angle) const {
    if (angle == 0.0) return *this;
    // R_y(-angle) advances azimuth by +angle, i.e. u by angle / 2pi.
    double shift = angle / (2 * kPi) * width_;
    shift -= std::floor(shift / width_) * width_;
    const double base = std::floor(shift);
    const double t = shift - base;

    std::vector<float> out(rgb_.size());
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const int x0 = int((x + long(base)) % width_);
            const int x1 = (x0 + 1) % width_;
            const float* a = &rgb_[(std::size_t(y) * width_ + x0) * 3];
            const float* b = &rgb_[(std::size_t(y) * width_ + x1) * 3];
            float* o = &out[(std::size_t(y) * width_ + x) * 3];
            for (int c = 0; c < 3; ++c) {
                o[c] = t == 0.0 ? a[c] : float(a[c] * (1 - t) + b[c] * t);
            }
        }
    }
    return {width_, height_, std::move(out)};
}

}  // namespace irf
