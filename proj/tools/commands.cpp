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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace irf::cli {
namespace {

namespace fs = std::filesystem;

// Tracks files written by a command. Unless commit() is reached the files
// are deleted again, together with the output directory if the command
// created it.
class OutputGuard {
  public:
    explicit OutputGuard(fs::path dir) : dir_(std::move(dir)), created_(!fs::exists(dir_)) {
        fs::create_directories(dir_);
    }
    OutputGuard(const OutputGuard&) = delete;
    OutputGuard& operator=(const OutputGuard&) = delete;
    ~OutputGuard() {
        if (committed_) return;
        std::error_code ec;
        if (created_) {
            fs::remove_all(dir_, ec);
        } else {
            for (const auto& f : files_) fs::remove(f, ec);
        }
    }

    fs::path file(const std::string& name) {
        files_.push_back(dir_ / name);
        return files_.back();
    }
    void track(const fs::path& p) { files_.push_back(p); }
    void commit() { committed_ = true; }

  private:
    fs::path dir_;
    bool created_;
    bool committed_ = false;
    std::vector<fs::path> files_;
};

void write_channel(OutputGuard& out, const std::string& stem, const Image& image, bool png,
                   double gamma = 2.2, double exposure = 1.0) {
    write_pfm_file(out.file(stem + ".pfm"), to_pfm(image));
    if (png) write_file_bytes(out.file(stem + ".png"), tonemap_png(image, gamma, exposure));
}

Scene load_with_seed(const fs::path& path, const std::optional<std::uint64_t>& seed) {
    Scene scene = load_scene(path);
    if (seed) scene.integrator.seed = *seed;
    return scene;
}

}  // namespace

void TurntableOptions::validate() const {
    if (frames < 1) throw std::invalid_argument("turntable needs frames >= 1");
    if (!(sweep_deg > 0 && sweep_deg <= 360)) {
        throw std::invalid_argument("turntable sweep must lie in (0, 360] degrees");
    }
}

void cmd_prefilter(const PrefilterOptions& o) {
    const auto map = HdrEnvironmentMap::from_pfm(read_pfm_file(o.envmap));
    const ExponentSet exps(o.exponents);
    const LightMapStack stack = build_stack(map, exps, o.width, o.height, o.threads);
    OutputGuard out(o.out_dir);
    for (const auto& p : write_stack(o.out_dir, stack, o.envmap.filename().string())) out.track(p);
    out.commit();
}

void cmd_render(const RenderOptions& o) {
    const Scene scene = load_with_seed(o.scene, o.seed);
    const auto field = build_field(scene.field);
    const LightMapStack stack = build_scene_stack(scene.lighting, o.threads);
    const RenderTargets t = render(*field, stack, scene.camera, scene.integrator, o.threads);

    float max_depth = 0;
    for (float d : t.depth.data) max_depth = std::max(max_depth, d);

    OutputGuard out(o.out_dir);
    write_channel(out, "albedo", t.albedo, o.png);
    write_channel(out, "diffuse", t.diffuse, o.png);
    write_channel(out, "specular", t.specular, o.png);
    write_channel(out, "relit", phong_composite(t), o.png);
    write_channel(out, "normal", encode_normals(t.normal), o.png, 1.0);
    write_channel(out, "alpha", t.alpha, o.png, 1.0);
    write_channel(out, "depth", t.depth, o.png, 1.0, max_depth > 0 ? 1.0 / max_depth : 1.0);
    out.commit();
}

double turntable_angle_deg(const TurntableOptions& o, int frame) {
    return frame * o.sweep_deg / o.frames;
}

Image render_turntable_frame(const Scene& scene, const IntrinsicField& field,
                             const TurntableOptions& o, int frame) {
    const double angle = turntable_angle_deg(o, frame);
    if (o.mode == TurntableMode::camera_orbit) {
        const LightMapStack stack = build_scene_stack(scene.lighting, o.threads, 0.0);
        return phong_composite(render(field, stack, orbit_camera(scene.camera, angle * kPi / 180.0),
                                      scene.integrator, o.threads));
    }
    const LightMapStack stack =
        build_scene_stack(scene.lighting, o.threads, angle, o.rotate_lightmaps);
    return phong_composite(render(field, stack, scene.camera, scene.integrator, o.threads));
}

void cmd_turntable(const TurntableOptions& o) {
    o.validate();
    const Scene scene = load_with_seed(o.scene, o.seed);
    const auto field = build_field(scene.field);

    // Camera orbits share one light stack.
    std::optional<LightMapStack> shared;
    if (o.mode == TurntableMode::camera_orbit) {
        shared = build_scene_stack(scene.lighting, o.threads);
    }

    OutputGuard out(o.out_dir);
    for (int k = 0; k < o.frames; ++k) {
        Image relit;
        if (shared) {
            const double angle = turntable_angle_deg(o, k) * kPi / 180.0;
            relit = phong_composite(render(*field, *shared, orbit_camera(scene.camera, angle),
                                           scene.integrator, o.threads));
        } else {
            relit = render_turntable_frame(scene, *field, o, k);
        }
        char stem[32];
        std::snprintf(stem, sizeof stem, "frame_%04d", k);
        write_channel(out, stem, relit, true);
    }
    out.commit();
}

void cmd_gen_weights(const GenWeightsOptions& o) {
    const MlpWeights w = generate_weights(o.gen);
    const auto bytes = write_vxw(w);
    const bool existed = fs::exists(o.out);
    try {
        if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
        write_file_bytes(o.out, bytes);
    } catch (...) {
        std::error_code ec;
        if (!existed) fs::remove(o.out, ec);
        throw;
    }
}

}  // namespace irf::cli
