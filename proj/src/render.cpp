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

#include "irf/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <png.h>

#include "irf/parallel.hpp"

namespace irf {

void Camera::validate() const {
    if (!(vertical_fov_deg > 0 && vertical_fov_deg < 180)) {
        throw std::invalid_argument("camera fov must lie in (0, 180) degrees");
    }
    if (width < 1 || height < 1) throw std::invalid_argument("camera needs a non-empty image");
    const Vec3 axis = look_at - position;
    if (length(axis) == 0) throw std::invalid_argument("camera look_at equals position");
    if (length(cross(normalize(axis), up)) < 1e-9) {
        throw std::invalid_argument("camera up is parallel to the view axis");
    }
}

Ray generate_ray(const Camera& cam, int px, int py, double offset_x, double offset_y) {
    if (px < 0 || px >= cam.width || py < 0 || py >= cam.height) {
        throw std::out_of_range("pixel (" + std::to_string(px) + ", " + std::to_string(py) +
                                ") outside " + std::to_string(cam.width) + "x" +
                                std::to_string(cam.height) + " image");
    }
    const Vec3 forward = normalize(cam.look_at - cam.position);
    const Vec3 right = normalize(cross(forward, cam.up));
    const Vec3 up = cross(right, forward);
    const double half = std::tan(cam.vertical_fov_deg * kPi / 360.0);
    const double aspect = double(cam.width) / cam.height;
    // Pixel center relative to the image center, in pixels.
    const double sx = px + 0.5 + offset_x - 0.5 * cam.width;
    const double sy = 0.5 * cam.height - (py + 0.5 + offset_y);
    const double x = sx / (0.5 * cam.width) * half * aspect;
    const double y = sy / (0.5 * cam.height) * half;
    return {cam.position, normalize(forward + right * x + up * y)};
}

Camera orbit_camera(const Camera& cam, double angle) {
    if (angle == 0.0) return cam;
    Camera out = cam;
    out.position = cam.look_at + rotate_y(cam.position - cam.look_at, angle);
    out.up = rotate_y(cam.up, angle);
    return out;
}

Camera yaw_camera(const Camera& cam, double angle) {
    if (angle == 0.0) return cam;
    Camera out = cam;
    out.position = rotate_y(cam.position, angle);
    out.look_at = rotate_y(cam.look_at, angle);
    out.up = rotate_y(cam.up, angle);
    return out;
}

RenderTargets render(const IntrinsicField& field, const LightMapStack& stack, const Camera& cam,
                     const IntegratorConfig& cfg, int threads) {
    cam.validate();
    cfg.validate();
    const int w = cam.width, h = cam.height;
    RenderTargets t{Image(w, h, 3), Image(w, h, 3), Image(w, h, 3), Image(w, h, 3),
                    Image(w, h, 1), Image(w, h, 1), Image(w, h, int(field.feature_dim()))};
    parallel_for(std::size_t(w) * h, threads, [&](std::size_t index) {
        const int px = int(index % std::size_t(w));
        const int py = int(index / std::size_t(w));
        const RayResult r = integrate_ray(field, stack, generate_ray(cam, px, py), cfg, index);
        for (int c = 0; c < 3; ++c) {
            t.albedo.at(px, py, c) = float(r.albedo[c]);
            t.diffuse.at(px, py, c) = float(r.diffuse[c]);
            t.specular.at(px, py, c) = float(r.specular[c]);
        }
        t.normal.at(px, py, 0) = float(r.normal.x);
        t.normal.at(px, py, 1) = float(r.normal.y);
        t.normal.at(px, py, 2) = float(r.normal.z);
        t.depth.at(px, py, 0) = float(r.depth);
        t.alpha.at(px, py, 0) = float(r.alpha);
        for (std::size_t k = 0; k < r.feature.size(); ++k) {
            t.feature.at(px, py, int(k)) = float(r.feature[k]);
        }
    }, 8);
    return t;
}

Image phong_composite(const RenderTargets& t) {
    Image out(t.albedo.width, t.albedo.height, 3);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = t.albedo.data[i] * t.diffuse.data[i] + t.specular.data[i];
    }
    return out;
}

Image box_downsample(const Image& image, int factor) {
    if (factor < 1 || image.width % factor != 0 || image.height % factor != 0) {
        throw std::invalid_argument("downsample factor " + std::to_string(factor) +
                                    " does not divide " + std::to_string(image.width) + "x" +
                                    std::to_string(image.height));
    }
    Image out(image.width / factor, image.height / factor, image.channels);
    const double norm = 1.0 / (double(factor) * factor);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            for (int c = 0; c < image.channels; ++c) {
                double sum = 0;
                for (int dy = 0; dy < factor; ++dy) {
                    for (int dx = 0; dx < factor; ++dx) {
                        sum += image.at(x * factor + dx, y * factor + dy, c);
                    }
                }
                out.at(x, y, c) = float(sum * norm);
            }
        }
    }
    return out;
}

double path_consistency(const Image& hi, const Image& lo) {
    if (lo.width < 1 || lo.height < 1 || hi.channels != lo.channels ||
        hi.width % lo.width != 0 || hi.height % lo.height != 0 ||
        hi.width / lo.width != hi.height / lo.height) {
        throw std::invalid_argument("high-resolution image " + std::to_string(hi.width) + "x" +
                                    std::to_string(hi.height) +
                                    " is not an integer multiple of " + std::to_string(lo.width) +
                                    "x" + std::to_string(lo.height));
    }
    const Image down = box_downsample(hi, hi.width / lo.width);
    double sum = 0;
    for (std::size_t i = 0; i < lo.data.size(); ++i) {
        sum += std::abs(double(down.data[i]) - lo.data[i]);
    }
    return sum / double(lo.data.size());
}

std::vector<std::uint8_t> tonemap_rgb8(const Image& hdr, double gamma, double exposure) {
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be > 0");
    std::vector<std::uint8_t> out(std::size_t(hdr.width) * hdr.height * 3);
    for (int y = 0; y < hdr.height; ++y) {
        for (int x = 0; x < hdr.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                const double v = hdr.at(x, y, std::min(c, hdr.channels - 1));
                const double clamped = std::clamp(std::isnan(v) ? 0.0 : exposure * v, 0.0, 1.0);
                const double mapped = gamma == 1.0 ? clamped : std::pow(clamped, 1.0 / gamma);
                out[(std::size_t(y) * hdr.width + x) * 3 + c] =
                    std::uint8_t(std::lround(mapped * 255.0));
            }
        }
    }
    return out;
}

std::vector<std::uint8_t> tonemap_png(const Image& hdr, double gamma, double exposure) {
    const auto pixels = tonemap_rgb8(hdr, gamma, exposure);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    std::vector<std::uint8_t> bytes;
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("PNG encoding failed");
    }
    png_set_write_fn(
        png, &bytes,
        [](png_structp p, png_bytep data, png_size_t n) {
            auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
            out->insert(out->end(), data, data + n);
        },
        nullptr);
    png_set_IHDR(png, info, png_uint_32(hdr.width), png_uint_32(hdr.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < hdr.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(&pixels[std::size_t(y) * hdr.width * 3]));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return bytes;
}

PfmImage to_pfm(const Image& image) {
    PfmImage out{image.width, image.height, std::vector<float>(std::size_t(image.width) * image.height * 3)};
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                out.rgb[(std::size_t(y) * image.width + x) * 3 + c] =
                    image.at(x, y, std::min(c, image.channels - 1));
            }
        }
    }
    return out;
}

Image encode_normals(const Image& normals) {
    Image out = normals;
    for (float& v : out.data) v = (v + 1.0f) * 0.5f;
    return out;
}

}  // namespace irf
