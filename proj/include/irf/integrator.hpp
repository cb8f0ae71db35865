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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "irf/field.hpp"
#include "irf/prefilter.hpp"

namespace irf {

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length

    Vec3 at(double t) const { return origin + direction * t; }
};

struct IntegratorConfig {
    double t_near = 0.0;
    double t_far = 1.0;
    int n_samples = 64;
    bool jitter = false;
    std::uint64_t seed = 0;
    double normal_step = kDefaultNormalStep;

    void validate() const;
};

struct QuadratureNode {
    double t;
    double delta;
};

// Independent generator for one ray, keyed by (seed, stream index), so that
// results do not depend on evaluation order.
std::mt19937_64 ray_stream(std::uint64_t seed, std::uint64_t index);

// Stratified depths over [t_near, t_far]: bin midpoints, or one uniform draw
// per bin with jitter. delta_i = t_{i+1} - t_i, last delta = bin width.
std::vector<QuadratureNode> sample_ts(const IntegratorConfig& cfg, std::mt19937_64& rng);

struct Transmittance {
    std::vector<double> weights;        // w_i = T_i (1 - exp(-sigma_i delta_i))
    std::vector<double> transmittance;  // T_i, before sample i
    double alpha = 0;                   // sum of w_i
};

// Throws std::invalid_argument on mismatched lengths, negative sigma or
// non-positive delta.
Transmittance transmittance_weights(std::span<const double> sigmas,
                                    std::span<const double> deltas);

struct RaySample {
    double t;
    double delta;
    Vec3 point;
    IntrinsicSample intrinsic;
    std::optional<Vec3> normal;
};

std::vector<RaySample> march_ray(const IntrinsicField& field, const Ray& ray,
                                 const IntegratorConfig& cfg, std::uint64_t stream = 0);

struct RayResult {
    Rgb albedo;
    Rgb diffuse;
    Rgb specular;
    std::vector<double> feature;
    Vec3 normal;  // unit, or zero when no sample had a normal
    double alpha = 0;
    double depth = 0;  // expected termination depth, 0 on empty rays
};

// Transmittance-weighted accumulation of albedo, diffuse light (first light
// map at the sample normal), specular light (blend of all light maps at the
// reflection of the view vector -d about the normal), features, normals and
// depth. Samples without a normal add nothing to diffuse and specular.
RayResult integrate_ray(const IntrinsicField& field, const LightMapStack& stack, const Ray& ray,
                        const IntegratorConfig& cfg, std::uint64_t stream = 0);

}  // namespace irf
