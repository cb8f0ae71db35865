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

#include "irf/pfm.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace irf {
namespace {

struct HeaderCursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    }

    std::string token(const char* what) {
        skip_space();
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
        if (start == pos) {
            throw PfmError("PFM header: missing " + std::string(what) + " at byte " +
                           std::to_string(start));
        }
        return {reinterpret_cast<const char*>(bytes.data()) + start, pos - start};
    }
};

long parse_dimension(const std::string& tok, const char* what, std::size_t pos) {
    char* end = nullptr;
    const long value = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || value <= 0 || value > (1 << 20)) {
        throw PfmError("PFM header: invalid " + std::string(what) + " '" + tok + "' near byte " +
                       std::to_string(pos));
    }
    return value;
}

float decode_float(const std::uint8_t* p, bool little_endian) {
    std::uint32_t bits;
    if (little_endian) {
        bits = std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
               std::uint32_t(p[3]) << 24;
    } else {
        bits = std::uint32_t(p[3]) | std::uint32_t(p[2]) << 8 | std::uint32_t(p[1]) << 16 |
               std::uint32_t(p[0]) << 24;
    }
    return std::bit_cast<float>(bits);
}

}  // namespace

PfmImage read_pfm(std::span<const std::uint8_t> bytes) {
    HeaderCursor cur{bytes};
    const std::string magic = cur.token("magic");
    if (magic == "Pf") throw PfmError("unsupported grayscale PFM");
    if (magic != "PF") throw PfmError("PFM header: bad magic '" + magic + "' at byte 0");

    PfmImage img;
    img.width = int(parse_dimension(cur.token("width"), "width", cur.pos));
    img.height = int(parse_dimension(cur.token("height"), "height", cur.pos));
    const std::string scale_tok = cur.token("scale");
    char* end = nullptr;
    const double scale = std::strtod(scale_tok.c_str(), &end);
    if (end != scale_tok.c_str() + scale_tok.size() || scale == 0.0 || !std::isfinite(scale)) {
        throw PfmError("PFM header: invalid scale '" + scale_tok + "' near byte " +
                       std::to_string(cur.pos));
    }
    // Exactly one whitespace byte separates the header from the payload.
    if (cur.pos >= bytes.size() || !std::isspace(bytes[cur.pos])) {
        throw PfmError("PFM header: missing terminator after scale at byte " +
                       std::to_string(cur.pos));
    }
    const std::size_t data_start = cur.pos + 1;

    const std::size_t count = std::size_t(img.width) * img.height * 3;
    const std::size_t expected = count * 4;
    const std::size_t actual = bytes.size() - data_start;
    if (actual != expected) {
        throw PfmError("PFM payload size mismatch: expected " + std::to_string(expected) +
                       " bytes for " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                       ", got " + std::to_string(actual));
    }

    const bool little = scale < 0;
    const float mag = float(std::fabs(scale));
    img.rgb.resize(count);
    const std::size_t row_floats = std::size_t(img.width) * 3;
    for (int file_row = 0; file_row < img.height; ++file_row) {
        const int y = img.height - 1 - file_row;
        for (std::size_t k = 0; k < row_floats; ++k) {
            const std::size_t offset = data_start + (file_row * row_floats + k) * 4;
            float v = decode_float(bytes.data() + offset, little);
            if (std::isnan(v)) {
                throw PfmError("PFM payload: NaN at pixel (" + std::to_string(k / 3) + ", " +
                               std::to_string(y) + ") channel " + std::to_string(k % 3) +
                               ", byte " + std::to_string(offset));
            }
            if (mag != 1.0f) v *= mag;
            img.rgb[y * row_floats + k] = v;
        }
    }
    return img;
}

std::vector<std::uint8_t> write_pfm(const PfmImage& image) {
    if (image.width <= 0 || image.height <= 0 ||
        image.rgb.size() != std::size_t(image.width) * image.height * 3) {
        throw PfmError("write_pfm: pixel buffer does not match dimensions");
    }
    std::ostringstream header;
    header << "PF\n" << image.width << ' ' << image.height << "\n-1.0\n";
    const std::string h = header.str();

    std::vector<std::uint8_t> out(h.begin(), h.end());
    out.reserve(h.size() + image.rgb.size() * 4);
    const std::size_t row_floats = std::size_t(image.width) * 3;
    for (int y = image.height - 1; y >= 0; --y) {
        for (std::size_t k = 0; k < row_floats; ++k) {
            const auto bits = std::bit_cast<std::uint32_t>(image.rgb[y * row_floats + k]);
            out.push_back(std::uint8_t(bits));
            out.push_back(std::uint8_t(bits >> 8));
            out.push_back(std::uint8_t(bits >> 16));
            out.push_back(std::uint8_t(bits >> 24));
        }
    }
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

PfmImage read_pfm_file(const std::filesystem::path& path) {
    try {
        return read_pfm(read_file_bytes(path));
    } catch (const PfmError& e) {
        throw PfmError(std::string(e.what()) + " in '" + path.string() + "'");
    }
}

void write_pfm_file(const std::filesystem::path& path, const PfmImage& image) {
    write_file_bytes(path, write_pfm(image));
}

}  // namespace irf
