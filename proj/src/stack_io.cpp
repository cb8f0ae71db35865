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

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "irf/prefilter.hpp"

namespace irf {

std::vector<std::filesystem::path> write_stack(const std::filesystem::path& dir,
                                               const LightMapStack& stack,
                                               const std::string& source) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    nlohmann::json files = nlohmann::json::array();
    for (std::size_t i = 0; i < stack.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "lightmap_%02zu_n%g.pfm", i, stack.exponents()[i]);
        write_pfm_file(dir / name, stack.map(i).to_pfm());
        written.push_back(dir / name);
        files.push_back(name);
    }
    const nlohmann::json manifest = {
        {"exponents", stack.exponents().values()},
        {"files", files},
        {"source", source},
        {"resolution", {stack.map(0).width(), stack.map(0).height()}},
    };
    const auto manifest_path = dir / "manifest.json";
    std::ofstream out(manifest_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + manifest_path.string() + "'");
    out << manifest.dump(2) << '\n';
    written.push_back(manifest_path);
    return written;
}

LightMapStack read_stack(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open '" + manifest_path.string() + "'");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("manifest '" + manifest_path.string() + "': " + e.what());
    }
    if (!manifest.contains("exponents") || !manifest.contains("files")) {
        throw std::runtime_error("manifest '" + manifest_path.string() +
                                 "' needs \"exponents\" and \"files\"");
    }
    ExponentSet exponents(manifest.at("exponents").get<std::vector<double>>());
    std::vector<HdrEnvironmentMap> maps;
    for (const auto& f : manifest.at("files")) {
        maps.push_back(HdrEnvironmentMap::from_pfm(
            read_pfm_file(manifest_path.parent_path() / f.get<std::string>())));
    }
    return {std::move(exponents), std::move(maps)};
}

}  // namespace irf
