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

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irf/envmap.hpp"

namespace irf {

// Phong exponents of the preconvolved lobes. The first entry is always 1 and
// doubles as the diffuse (cosine) lobe.
class ExponentSet {
  public:
    // Throws std::invalid_argument unless non-empty, starts at 1, finite and
    // strictly increasing.
    explicit ExponentSet(std::vector<double> exponents);
    static ExponentSet defaults() { return ExponentSet({1, 8, 32, 128}); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const& { return values_; }
    std::vector<double> values() && { return std::move(values_); }

  private:
    std::vector<double> values_;
};

inline constexpr int kDefaultLightMapWidth = 64;
inline constexpr int kDefaultLightMapHeight = 32;

// Convolves `map` with the normalized lobe max(0, w.d)^n, evaluated at the
// texel centers of an out_width x out_height equirectangular grid. Each
// output texel divides by the discrete lobe mass so a constant map is an
// exact fixed point; the mass converges to 2pi / (n + 1).
HdrEnvironmentMap preconvolve(const HdrEnvironmentMap& map, double exponent, int out_width,
                              int out_height, int threads = 1);

// Reference lobe integral at an arbitrary direction, summed over every
// source texel. Used to validate preconvolve.
Rgb oracle_shade(const HdrEnvironmentMap& map, const Vec3& d, double exponent);

class LightMapStack {
  public:
    LightMapStack(ExponentSet exponents, std::vector<HdrEnvironmentMap> maps);

    const ExponentSet& exponents() const { return exponents_; }
    std::size_t size() const { return maps_.size(); }
    const HdrEnvironmentMap& map(std::size_t i) const { return maps_[i]; }

    // First light map indexed by the surface normal.
    Rgb diffuse(const Vec3& normal) const { return maps_[0].sample_bilinear(normal); }
    // Blend of every light map at the reflection direction.
    Rgb specular(const Vec3& reflected, std::span<const double> weights) const;

    // Yaw-rotates every map; equivalent to prefiltering a rotated source
    // because the lobes are isotropic.
    LightMapStack rotate_yaw(double angle) const;

  private:
    ExponentSet exponents_;
    std::vector<HdrEnvironmentMap> maps_;
};

LightMapStack build_stack(const HdrEnvironmentMap& map, const ExponentSet& exponents,
                          int out_width = kDefaultLightMapWidth,
                          int out_height = kDefaultLightMapHeight, int threads = 1);

// One PFM per exponent plus manifest.json. Returns the written paths
// (manifest last).
std::vector<std::filesystem::path> write_stack(const std::filesystem::path& dir,
                                               const LightMapStack& stack,
                                               const std::string& source);
LightMapStack read_stack(const std::filesystem::path& manifest);

}  // namespace irf
