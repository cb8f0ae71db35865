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

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "irf/pfm.hpp"
#include "irf/vec.hpp"

namespace irf {

struct TexCoord {
    double u = 0;  // azimuth in [0, 1), 0.5 faces -z
    double v = 0;  // polar angle in [0, 1], 0 is +y
};

TexCoord direction_to_uv(const Vec3& d);
Vec3 uv_to_direction(double u, double v);

// Equirectangular RGB radiance map. Row 0 is the +y pole row, column 0
// starts at u = 0. Values are linear, finite and non-negative; the map is
// immutable after construction.
class HdrEnvironmentMap {
  public:
    HdrEnvironmentMap() = default;
    // Throws std::invalid_argument unless width == 2 * height and every value
    // is finite and >= 0.
    HdrEnvironmentMap(int width, int height, std::vector<float> rgb);

    static HdrEnvironmentMap constant(int width, int height, const Rgb& value);
    static HdrEnvironmentMap from_function(int width, int height,
                                           const std::function<Rgb(const Vec3&)>& radiance);
    static HdrEnvironmentMap from_pfm(const PfmImage& image);
    PfmImage to_pfm() const;

    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<float>& data() const { return rgb_; }

    Rgb texel(int x, int y) const {
        const float* p = &rgb_[(std::size_t(y) * width_ + x) * 3];
        return {p[0], p[1], p[2]};
    }
    Vec3 texel_direction(int x, int y) const;
    // sin(theta) * dtheta * dphi at the texel center.
    double texel_solid_angle(int y) const;

    // Bilinear in (u, v): wraps horizontally, clamps vertically.
    Rgb sample_bilinear(const Vec3& d) const;
    Rgb sample_uv(double u, double v) const;

    // output(d) = input(R_y(-angle) d). Yaw is a pure horizontal texel shift,
    // so only horizontal interpolation is involved; angle 0 is an exact copy.
    HdrEnvironmentMap rotate_yaw(double angle) const;

  private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> rgb_;
};

}  // namespace irf
