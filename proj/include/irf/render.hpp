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
#include <vector>

#include "irf/integrator.hpp"
#include "irf/pfm.hpp"

namespace irf {

// Float raster, row 0 at the top, interleaved channels.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c) : width(w), height(h), channels(c), data(std::size_t(w) * h * c) {}

    float& at(int x, int y, int c) { return data[(std::size_t(y) * width + x) * channels + c]; }
    float at(int x, int y, int c) const {
        return data[(std::size_t(y) * width + x) * channels + c];
    }
};

// Pinhole camera; pixel (0, 0) is the top-left corner.
struct Camera {
    Vec3 position{0, 0, 2.5};
    Vec3 look_at{0, 0, 0};
    Vec3 up{0, 1, 0};
    double vertical_fov_deg = 40.0;
    int width = 64;
    int height = 64;

    void validate() const;
};

// Ray through the pixel center shifted by `offset` pixels (each component
// typically in [-0.5, 0.5]). Throws std::out_of_range for pixels outside
// the image.
Ray generate_ray(const Camera& cam, int px, int py, double offset_x = 0, double offset_y = 0);

// Camera revolved about its look_at point by `angle` radians around +y.
Camera orbit_camera(const Camera& cam, double angle);
// Camera rigidly rotated about the world origin by `angle` around +y.
Camera yaw_camera(const Camera& cam, double angle);

struct RenderTargets {
    Image albedo;    // 3
    Image diffuse;   // 3
    Image specular;  // 3
    Image normal;    // 3, components in [-1, 1]
    Image depth;     // 1
    Image alpha;     // 1
    Image feature;   // feature_dim
};

// Integrates one ray per pixel (stream index py * width + px). Output is
// independent of `threads`.
RenderTargets render(const IntrinsicField& field, const LightMapStack& stack, const Camera& cam,
                     const IntegratorConfig& cfg, int threads = 1);

// relit = albedo * diffuse + specular, per channel.
Image phong_composite(const RenderTargets& targets);

// Averages factor x factor blocks.
Image box_downsample(const Image& image, int factor);

// Mean absolute per-channel difference between box-downsampled `hi` and
// `lo`. Throws std::invalid_argument unless hi's size is an integer
// multiple (same in x and y) of lo's.
double path_consistency(const Image& hi, const Image& lo);

// clamp(exposure * v, 0, 1)^(1 / gamma), rounded to 8 bits. One-channel
// images are replicated to gray; extra channels beyond three are dropped.
std::vector<std::uint8_t> tonemap_rgb8(const Image& hdr, double gamma = 2.2, double exposure = 1.0);
std::vector<std::uint8_t> tonemap_png(const Image& hdr, double gamma = 2.2, double exposure = 1.0);

// PFM payload for an image: 1-channel images are replicated to RGB.
PfmImage to_pfm(const Image& image);
// Normals stored as (n + 1) / 2.
Image encode_normals(const Image& normals);

}  // namespace irf
