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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "irf/field.hpp"
#include "irf/mlp.hpp"
#include "irf/integrator.hpp"
#include "irf/prefilter.hpp"
#include "irf/render.hpp"

namespace irf {

// Raised for scene-description problems; the message names the offending
// key (for example "camera.fov_deg").
class SceneError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FieldSpec {
    std::string variant = "sphere";  // sphere | blend | mlp | uniform
    std::vector<SphereParams> spheres;  // one for sphere, several for blend
    std::filesystem::path weights_path;  // mlp
    int levels = kDefaultEncodingLevels;  // mlp
    double uniform_sigma = 0;
    Rgb uniform_albedo{0.5, 0.5, 0.5};
    std::vector<double> uniform_weights;
};

struct LightingSpec {
    std::optional<std::filesystem::path> envmap_path;
    std::optional<Rgb> envmap_constant;
    int constant_width = 64;  // resolution used for envmap_constant
    std::optional<std::filesystem::path> lightmap_manifest;
    std::vector<double> exponents{1, 8, 32, 128};
    int lightmap_width = kDefaultLightMapWidth;
    int lightmap_height = kDefaultLightMapHeight;
    double rotation_deg = 0;
};

struct Scene {
    Camera camera;
    IntegratorConfig integrator;
    FieldSpec field;
    LightingSpec lighting;
};

// Relative paths inside the document resolve against `base_dir`.
Scene parse_scene(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Scene load_scene(const std::filesystem::path& path);

std::shared_ptr<const IntrinsicField> build_field(const FieldSpec& spec);

// Source map with lighting.rotation_deg applied. Throws SceneError when the
// scene references a prefiltered manifest instead of a source map.
HdrEnvironmentMap load_environment(const LightingSpec& lighting);

// Stack for the scene lighting, yawed by rotation_deg + extra_rotation_deg.
// With `rotate_lightmaps` the stack is prefiltered once and the light maps
// are rotated; otherwise the source map is rotated and prefiltered.
LightMapStack build_scene_stack(const LightingSpec& lighting, int threads = 1,
                                double extra_rotation_deg = 0, bool rotate_lightmaps = false);

}  // namespace irf
