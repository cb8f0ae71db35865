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

#include "irf/scene.hpp"

#include <cmath>
#include <fstream>

namespace irf {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!obj.is_object() || !obj.contains(key)) {
        throw SceneError("scene: missing required key \"" + full + "\"");
    }
    return obj.at(key);
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SceneError("scene: \"" + path + "\" must be a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SceneError("scene: \"" + path + "\" must be an integer");
    return v.get<int>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
    if (!v.is_array()) throw SceneError("scene: \"" + path + "\" must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Vec3 vec3(const json& v, const std::string& path) {
    const auto n = numbers(v, path);
    if (n.size() != 3) throw SceneError("scene: \"" + path + "\" must have 3 components");
    return {n[0], n[1], n[2]};
}

Rgb rgb(const json& v, const std::string& path) {
    const Vec3 c = vec3(v, path);
    return {c.x, c.y, c.z};
}

template <typename T, typename Parse>
void optional_key(const json& obj, const std::string& key, const std::string& path, T& out,
                  Parse parse) {
    if (obj.contains(key)) out = parse(obj.at(key), path + "." + key);
}

std::filesystem::path resolve(const std::filesystem::path& base, const json& v,
                              const std::string& path) {
    if (!v.is_string()) throw SceneError("scene: \"" + path + "\" must be a string");
    const std::filesystem::path p = v.get<std::string>();
    return p.is_absolute() ? p : base / p;
}

SphereParams parse_sphere(const json& obj, const std::string& path, std::size_t exponents,
                          std::size_t feature_dim) {
    if (!obj.is_object()) throw SceneError("scene: \"" + path + "\" must be an object");
    SphereParams p;
    p.feature_dim = feature_dim;
    p.weights.assign(exponents, 0.5 / double(exponents));
    optional_key(obj, "center", path, p.center, vec3);
    optional_key(obj, "radius", path, p.radius, number);
    optional_key(obj, "sharpness", path, p.sharpness, number);
    optional_key(obj, "density_scale", path, p.density_scale, number);
    optional_key(obj, "albedo", path, p.albedo, rgb);
    optional_key(obj, "weights", path, p.weights, numbers);
    if (obj.contains("albedo_gradient")) {
        const json& g = obj.at("albedo_gradient");
        const std::string gp = path + ".albedo_gradient";
        if (!g.is_array() || g.size() != 3) {
            throw SceneError("scene: \"" + gp + "\" must hold three 3-vectors");
        }
        for (std::size_t c = 0; c < 3; ++c) {
            p.albedo_gradient[c] = vec3(g[c], gp + "[" + std::to_string(c) + "]");
        }
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw SceneError("scene: \"" + path + "\": " + e.what());
    }
    return p;
}

FieldSpec parse_field(const json& obj, const std::filesystem::path& base, std::size_t exponents) {
    const std::string path = "field";
    if (!obj.is_object()) throw SceneError("scene: \"field\" must be an object");
    const json& variant = require(obj, "variant", path);
    if (!variant.is_string()) throw SceneError("scene: \"field.variant\" must be a string");

    FieldSpec spec;
    spec.variant = variant.get<std::string>();
    int feature_dim = int(kDefaultFeatureDim);
    optional_key(obj, "feature_dim", path, feature_dim, integer);
    if (feature_dim < 1 || feature_dim > 256) {
        throw SceneError("scene: \"field.feature_dim\" must lie in [1, 256]");
    }

    if (spec.variant == "sphere") {
        spec.spheres.push_back(parse_sphere(obj, path, exponents, std::size_t(feature_dim)));
    } else if (spec.variant == "blend") {
        const json& comps = require(obj, "components", path);
        if (!comps.is_array() || comps.empty()) {
            throw SceneError("scene: \"field.components\" must be a non-empty array");
        }
        for (std::size_t i = 0; i < comps.size(); ++i) {
            spec.spheres.push_back(parse_sphere(comps[i], path + ".components[" +
                                                              std::to_string(i) + "]",
                                                exponents, std::size_t(feature_dim)));
        }
    } else if (spec.variant == "mlp") {
        spec.weights_path = resolve(base, require(obj, "weights_path", path), path + ".weights_path");
        optional_key(obj, "levels", path, spec.levels, integer);
        if (spec.levels < 1) throw SceneError("scene: \"field.levels\" must be >= 1");
    } else if (spec.variant == "uniform") {
        spec.uniform_sigma = number(require(obj, "sigma", path), path + ".sigma");
        optional_key(obj, "albedo", path, spec.uniform_albedo, rgb);
        spec.uniform_weights.assign(exponents, 0.5 / double(exponents));
        optional_key(obj, "weights", path, spec.uniform_weights, numbers);
    } else {
        throw SceneError("scene: \"field.variant\" must be sphere, blend, mlp or uniform, got \"" +
                         spec.variant + "\"");
    }
    return spec;
}

}  // namespace

Scene parse_scene(const json& doc, const std::filesystem::path& base) {
    if (!doc.is_object()) throw SceneError("scene: document must be a JSON object");
    Scene s;

    const json& cam = require(doc, "camera", "");
    s.camera.position = vec3(require(cam, "position", "camera"), "camera.position");
    s.camera.look_at = vec3(require(cam, "look_at", "camera"), "camera.look_at");
    optional_key(cam, "up", "camera", s.camera.up, vec3);
    s.camera.vertical_fov_deg = number(require(cam, "fov_deg", "camera"), "camera.fov_deg");
    s.camera.width = integer(require(cam, "width", "camera"), "camera.width");
    s.camera.height = integer(require(cam, "height", "camera"), "camera.height");
    try {
        s.camera.validate();
    } catch (const std::invalid_argument& e) {
        throw SceneError(std::string("scene: \"camera\": ") + e.what());
    }

    const json& integ = require(doc, "integrator", "");
    s.integrator.t_near = number(require(integ, "t_near", "integrator"), "integrator.t_near");
    s.integrator.t_far = number(require(integ, "t_far", "integrator"), "integrator.t_far");
    s.integrator.n_samples =
        integer(require(integ, "n_samples", "integrator"), "integrator.n_samples");
    if (integ.contains("jitter")) {
        if (!integ.at("jitter").is_boolean()) {
            throw SceneError("scene: \"integrator.jitter\" must be a boolean");
        }
        s.integrator.jitter = integ.at("jitter").get<bool>();
    }
    if (integ.contains("seed")) {
        if (!integ.at("seed").is_number_unsigned()) {
            throw SceneError("scene: \"integrator.seed\" must be a non-negative integer");
        }
        s.integrator.seed = integ.at("seed").get<std::uint64_t>();
    }
    optional_key(integ, "normal_step", "integrator", s.integrator.normal_step, number);
    try {
        s.integrator.validate();
    } catch (const std::invalid_argument& e) {
        throw SceneError(std::string("scene: \"integrator\": ") + e.what());
    }

    const json& light = require(doc, "lighting", "");
    LightingSpec& l = s.lighting;
    if (light.contains("envmap_path")) {
        l.envmap_path = resolve(base, light.at("envmap_path"), "lighting.envmap_path");
    }
    if (light.contains("envmap_constant")) {
        l.envmap_constant = rgb(light.at("envmap_constant"), "lighting.envmap_constant");
    }
    if (light.contains("lightmap_manifest")) {
        l.lightmap_manifest =
            resolve(base, light.at("lightmap_manifest"), "lighting.lightmap_manifest");
    }
    if (int(l.envmap_path.has_value()) + int(l.envmap_constant.has_value()) +
            int(l.lightmap_manifest.has_value()) != 1) {
        throw SceneError(
            "scene: \"lighting\" needs exactly one of envmap_path, envmap_constant, "
            "lightmap_manifest");
    }
    optional_key(light, "exponents", "lighting", l.exponents, numbers);
    optional_key(light, "lightmap_width", "lighting", l.lightmap_width, integer);
    optional_key(light, "lightmap_height", "lighting", l.lightmap_height, integer);
    optional_key(light, "rotation_deg", "lighting", l.rotation_deg, number);
    try {
        ExponentSet check(l.exponents);
    } catch (const std::invalid_argument& e) {
        throw SceneError(std::string("scene: \"lighting.exponents\": ") + e.what());
    }

    s.field = parse_field(require(doc, "field", ""), base, l.exponents.size());
    return s;
}

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("scene: cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw SceneError("scene: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_scene(doc, path.parent_path());
}

std::shared_ptr<const IntrinsicField> build_field(const FieldSpec& spec) {
    if (spec.variant == "sphere") return std::make_shared<SphereField>(spec.spheres.at(0));
    if (spec.variant == "blend") return std::make_shared<BlendField>(spec.spheres);
    if (spec.variant == "uniform") {
        return std::make_shared<UniformField>(spec.uniform_sigma, spec.uniform_albedo,
                                              spec.uniform_weights);
    }
    if (spec.variant == "mlp") {
        return std::make_shared<MlpField>(read_vxw_file(spec.weights_path), spec.levels);
    }
    throw SceneError("scene: unknown field variant \"" + spec.variant + "\"");
}

HdrEnvironmentMap load_environment(const LightingSpec& l) {
    HdrEnvironmentMap map;
    if (l.envmap_path) {
        map = HdrEnvironmentMap::from_pfm(read_pfm_file(*l.envmap_path));
    } else if (l.envmap_constant) {
        map = HdrEnvironmentMap::constant(l.constant_width, l.constant_width / 2,
                                          *l.envmap_constant);
    } else {
        throw SceneError("scene: lighting uses a prefiltered manifest, no source map available");
    }
    return map.rotate_yaw(l.rotation_deg * kPi / 180.0);
}

LightMapStack build_scene_stack(const LightingSpec& l, int threads, double extra_rotation_deg,
                                bool rotate_lightmaps) {
    const double total = (l.rotation_deg + extra_rotation_deg) * kPi / 180.0;
    if (l.lightmap_manifest) {
        LightMapStack stack = read_stack(*l.lightmap_manifest);
        if (stack.exponents().values() != l.exponents) {
            throw SceneError("scene: \"lighting.exponents\" disagree with the manifest");
        }
        return stack.rotate_yaw(total);
    }
    const ExponentSet exps(l.exponents);
    if (rotate_lightmaps) {
        LightingSpec unrotated = l;
        unrotated.rotation_deg = 0;
        return build_stack(load_environment(unrotated), exps, l.lightmap_width, l.lightmap_height,
                           threads)
            .rotate_yaw(total);
    }
    LightingSpec rotated = l;
    rotated.rotation_deg = l.rotation_deg + extra_rotation_deg;
    return build_stack(load_environment(rotated), exps, l.lightmap_width, l.lightmap_height,
                       threads);
}

}  // namespace irf
