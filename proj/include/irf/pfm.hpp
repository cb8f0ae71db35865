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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace irf {

class PfmError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Three-channel float raster, row 0 at the top.
struct PfmImage {
    int width = 0;
    int height = 0;
    std::vector<float> rgb;  // width * height * 3, row-major
};

// Parses a color ("PF") portable float map. Either byte order is accepted;
// |scale| multiplies the payload. Rejects grayscale maps, malformed headers,
// short or oversized payloads and NaN samples.
PfmImage read_pfm(std::span<const std::uint8_t> bytes);

// Emits "PF\n<w> <h>\n-1.0\n" followed by little-endian float32 rows,
// bottom row first.
std::vector<std::uint8_t> write_pfm(const PfmImage& image);

PfmImage read_pfm_file(const std::filesystem::path& path);
void write_pfm_file(const std::filesystem::path& path, const PfmImage& image);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace irf
