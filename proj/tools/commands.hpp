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
#include <filesystem>
#include <optional>
#include <vector>

#include "irf/mlp.hpp"
#include "irf/render.hpp"
#include "irf/scene.hpp"

namespace irf::cli {

struct PrefilterOptions {
    std::filesystem::path envmap;
    std::vector<double> exponents{1, 8, 32, 128};
    std::filesystem::path out_dir;
    int width = kDefaultLightMapWidth;
    int height = kDefaultLightMapHeight;
    int threads = 1;
};

struct RenderOptions {
    std::filesystem::path scene;
    std::filesystem::path out_dir;
    int threads = 1;
    bool png = false;
    std::optional<std::uint64_t> seed;
};

enum class TurntableMode { camera_orbit, light_rotation };

struct TurntableOptions {
    std::filesystem::path scene;
    std::filesystem::path out_dir;
    TurntableMode mode = TurntableMode::camera_orbit;
    int frames = 8;
    double sweep_deg = 90.0;
    bool rotate_lightmaps = false;
    int threads = 1;
    std::optional<std::uint64_t> seed;

    void validate() const;
};

struct GenWeightsOptions {
    WeightGenOptions gen;
    std::filesystem::path out;
};

// Each command throws on failure after removing whatever it had written.
void cmd_prefilter(const PrefilterOptions& options);
void cmd_render(const RenderOptions& options);
void cmd_turntable(const TurntableOptions& options);
void cmd_gen_weights(const GenWeightsOptions& options);

// Frame k covers k * sweep / frames degrees.
double turntable_angle_deg(const TurntableOptions& options, int frame);
Image render_turntable_frame(const Scene& scene, const IntrinsicField& field,
                             const TurntableOptions& options, int frame);

}  // namespace irf::cli
