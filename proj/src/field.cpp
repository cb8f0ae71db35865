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

#include "irf/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace irf {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_point(const Vec3& x) {
    if (!is_finite(x)) throw std::invalid_argument("field query at non-finite point");
}

void check_weights(const std::vector<double>& w) {
    if (w.empty()) throw std::invalid_argument("field needs at least one blend weight");
    double sum = 0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("blend weights must be finite and >= 0");
        }
        sum += v;
    }
    if (sum > 1.0 + 1e-12) {
        throw std::invalid_argument("blend weights sum to " + std::to_string(sum) + " > 1");
    }
}

}  // namespace

IntrinsicSample IntrinsicField::sample(const Vec3& x) const {
    check_point(x);
    return do_sample(x);
}

double IntrinsicField::density(const Vec3& x) const {
    check_point(x);
    return do_density(x);
}

Vec3 IntrinsicField::density_gradient(const Vec3& x, double h) const {
    return finite_difference_gradient(*this, x, h);
}

std::optional<Vec3> IntrinsicField::normal_at(const Vec3& x, double h) const {
    if (!(h > 0)) throw std::invalid_argument("normal step must be > 0");
    check_point(x);
    return normal_from_gradient(density_gradient(x, h));
}

void IntrinsicField::sample_batch(std::span<const Vec3> points,
                                  std::span<IntrinsicSample> out) const {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = sample(points[i]);
}

void IntrinsicField::gradient_batch(std::span<const Vec3> points, double h,
                                    std::span<Vec3> out) const {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = density_gradient(points[i], h);
}

Vec3 finite_difference_gradient(const IntrinsicField& field, const Vec3& x, double h) {
    const double inv = 1.0 / (2 * h);
    return {(field.density(x + Vec3{h, 0, 0}) - field.density(x - Vec3{h, 0, 0})) * inv,
            (field.density(x + Vec3{0, h, 0}) - field.density(x - Vec3{0, h, 0})) * inv,
            (field.density(x + Vec3{0, 0, h}) - field.density(x - Vec3{0, 0, h})) * inv};
}

std::optional<Vec3> normal_from_gradient(const Vec3& g) {
    const double len = length(g);
    if (!(len >= kGradientFloor)) return std::nullopt;
    return g * (-1.0 / len);
}

// --- sphere -----------------------------------------------------------------

void SphereParams::validate() const {
    if (!(radius > 0)) throw std::invalid_argument("sphere radius must be > 0");
    if (!(sharpness > 0)) throw std::invalid_argument("sphere sharpness must be > 0");
    if (!(density_scale > 0)) throw std::invalid_argument("sphere density_scale must be > 0");
    if (!is_finite(center)) throw std::invalid_argument("sphere center must be finite");
    for (int c = 0; c < 3; ++c) {
        if (!(albedo[c] >= 0 && albedo[c] <= 1)) {
            throw std::invalid_argument("sphere albedo must lie in [0, 1]");
        }
    }
    check_weights(weights);
    if (feature_dim == 0) throw std::invalid_argument("feature_dim must be >= 1");
}

SphereField::SphereField(SphereParams params) : p_(std::move(params)) { p_.validate(); }

double SphereField::do_density(const Vec3& x) const {
    return p_.density_scale * sigmoid(p_.sharpness * (p_.radius - length(x - p_.center)));
}

Vec3 SphereField::density_gradient(const Vec3& x, double) const {
    const Vec3 off = x - p_.center;
    const double r = length(off);
    if (r == 0.0) return {};
    const double s = sigmoid(p_.sharpness * (p_.radius - r));
    return off * (-p_.density_scale * p_.sharpness * s * (1 - s) / r);
}

Rgb SphereField::albedo_at(const Vec3& x) const {
    const Vec3 off = (x - p_.center) * (1.0 / p_.radius);
    auto channel = [&](int c, double base) {
        return std::clamp(base + dot(p_.albedo_gradient[c], off), 0.0, 1.0);
    };
    return {channel(0, p_.albedo.r), channel(1, p_.albedo.g), channel(2, p_.albedo.b)};
}

IntrinsicSample SphereField::do_sample(const Vec3& x) const {
    IntrinsicSample s;
    s.sigma = do_density(x);
    s.albedo = albedo_at(x);
    s.weights = p_.weights;
    s.feature.assign(p_.feature_dim, 0.0f);
    for (std::size_t c = 0; c < std::min<std::size_t>(3, p_.feature_dim); ++c) {
        s.feature[c] = float(s.albedo[int(c)]);
    }
    return s;
}

// --- blend ------------------------------------------------------------------

BlendField::BlendField(std::vector<SphereParams> components) {
    if (components.empty()) throw std::invalid_argument("blend field needs a component");
    for (auto& c : components) parts_.emplace_back(std::move(c));
    for (const auto& p : parts_) {
        if (p.exponent_count() != parts_.front().exponent_count() ||
            p.feature_dim() != parts_.front().feature_dim()) {
            throw std::invalid_argument(
                "blend components must share weight count and feature_dim");
        }
    }
}

double BlendField::do_density(const Vec3& x) const {
    double sigma = 0;
    for (const auto& p : parts_) sigma += p.density(x);
    return sigma;
}

Vec3 BlendField::density_gradient(const Vec3& x, double h) const {
    Vec3 g;
    for (const auto& p : parts_) g += p.density_gradient(x, h);
    return g;
}

IntrinsicSample BlendField::do_sample(const Vec3& x) const {
    std::vector<IntrinsicSample> samples;
    samples.reserve(parts_.size());
    double total = 0;
    for (const auto& p : parts_) {
        samples.push_back(p.sample(x));
        total += samples.back().sigma;
    }
    IntrinsicSample out;
    out.sigma = total;
    out.weights.assign(exponent_count(), 0.0);
    out.feature.assign(feature_dim(), 0.0f);
    for (const auto& s : samples) {
        const double w = total > 0 ? s.sigma / total : 1.0 / double(samples.size());
        out.albedo += s.albedo * w;
        for (std::size_t k = 0; k < out.weights.size(); ++k) out.weights[k] += w * s.weights[k];
        for (std::size_t k = 0; k < out.feature.size(); ++k) {
            out.feature[k] += float(w * s.feature[k]);
        }
    }
    out.albedo = {std::clamp(out.albedo.r, 0.0, 1.0), std::clamp(out.albedo.g, 0.0, 1.0),
                  std::clamp(out.albedo.b, 0.0, 1.0)};
    return out;
}

// --- uniform ----------------------------------------------------------------

UniformField::UniformField(double sigma, Rgb albedo, std::vector<double> weights,
                           std::size_t feature_dim) {
    if (!(sigma >= 0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("uniform density must be finite and >= 0");
    }
    check_weights(weights);
    sample_.sigma = sigma;
    sample_.albedo = albedo;
    sample_.weights = std::move(weights);
    sample_.feature.assign(feature_dim, 0.0f);
    for (std::size_t c = 0; c < std::min<std::size_t>(3, feature_dim); ++c) {
        sample_.feature[c] = float(albedo[int(c)]);
    }
}

// --- yawed ------------------------------------------------------------------

YawedField::YawedField(std::shared_ptr<const IntrinsicField> inner, double angle)
    : inner_(std::move(inner)), angle_(angle) {
    if (!inner_) throw std::invalid_argument("yawed field needs an inner field");
}

IntrinsicSample YawedField::do_sample(const Vec3& x) const {
    return inner_->sample(rotate_y(x, -angle_));
}

double YawedField::do_density(const Vec3& x) const {
    return inner_->density(rotate_y(x, -angle_));
}

Vec3 YawedField::density_gradient(const Vec3& x, double h) const {
    return rotate_y(inner_->density_gradient(rotate_y(x, -angle_), h), angle_);
}

void YawedField::sample_batch(std::span<const Vec3> points,
                              std::span<IntrinsicSample> out) const {
    std::vector<Vec3> local(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) local[i] = rotate_y(points[i], -angle_);
    inner_->sample_batch(local, out);
}

void YawedField::gradient_batch(std::span<const Vec3> points, double h,
                                std::span<Vec3> out) const {
    std::vector<Vec3> local(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) local[i] = rotate_y(points[i], -angle_);
    inner_->gradient_batch(local, h, out);
    for (auto& g : out) g = rotate_y(g, angle_);
}

}  // namespace irf
