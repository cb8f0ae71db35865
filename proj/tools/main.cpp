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

#include <cstdint>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace irf::cli;

    CLI::App app{"Volumetric intrinsic-field relighting engine"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 1;
    std::uint64_t seed = 0;
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Override the scene / generator seed");

    PrefilterOptions pre;
    auto* prefilter = app.add_subcommand("prefilter", "Preconvolve an environment map into light maps");
    prefilter->add_option("envmap", pre.envmap, "Input PFM")->required()->check(CLI::ExistingFile);
    prefilter->add_option("--out,-o", pre.out_dir, "Output directory")->required();
    prefilter->add_option("--exponents", pre.exponents, "Phong exponents, first must be 1")
        ->delimiter(',');
    prefilter->add_option("--width", pre.width, "Light map width");
    prefilter->add_option("--height", pre.height, "Light map height");

    RenderOptions ren;
    auto* render = app.add_subcommand("render", "Render a scene to intrinsic channel images");
    render->add_option("scene", ren.scene, "Scene JSON")->required();
    render->add_option("--out,-o", ren.out_dir, "Output directory")->required();
    render->add_flag("--png", ren.png, "Also write tone-mapped PNG previews");

    TurntableOptions turn;
    const std::map<std::string, TurntableMode> modes{
        {"camera-orbit", TurntableMode::camera_orbit},
        {"light-rotation", TurntableMode::light_rotation}};
    auto* turntable = app.add_subcommand("turntable", "Render an orbit or light-rotation sequence");
    turntable->add_option("scene", turn.scene, "Base scene JSON")->required();
    turntable->add_option("--out,-o", turn.out_dir, "Output directory")->required();
    turntable->add_option("--mode", turn.mode, "camera-orbit | light-rotation")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    turntable->add_option("--frames", turn.frames, "Frame count");
    turntable->add_option("--sweep", turn.sweep_deg, "Sweep in degrees");
    turntable->add_flag("--rotate-lightmaps", turn.rotate_lightmaps,
                        "Rotate prefiltered light maps instead of re-prefiltering");

    GenWeightsOptions gen;
    auto* gen_weights = app.add_subcommand("gen-weights", "Write a seeded VXW1 network");
    gen_weights->add_option("--out,-o", gen.out, "Output .vxw file")->required();
    gen_weights->add_option("--width", gen.gen.width, "Hidden width");
    gen_weights->add_option("--layers", gen.gen.layers, "Trunk layers");
    gen_weights->add_option("--feature-dim", gen.gen.feature_dim, "Feature vector length");
    gen_weights->add_option("--exponents", gen.gen.exponents, "Number of blend weights");
    gen_weights->add_option("--levels", gen.gen.levels, "Positional encoding levels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prefilter) {
            pre.threads = threads;
            cmd_prefilter(pre);
        } else if (*render) {
            ren.threads = threads;
            if (*seed_opt) ren.seed = seed;
            cmd_render(ren);
        } else if (*turntable) {
            turn.threads = threads;
            if (*seed_opt) turn.seed = seed;
            cmd_turntable(turn);
        } else if (*gen_weights) {
            gen.gen.seed = seed;
            cmd_gen_weights(gen);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
