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

#include "irf/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace irf {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void IntegratorConfig::validate() const {
    if (!(t_near >= 0) || !(t_far > t_near) || !std::isfinite(t_far)) {
        throw std::invalid_argument("integrator bounds need 0 <= t_near < t_far");
    }
    if (n_samples < 2) throw std::invalid_argument("integrator needs n_samples >= 2");
    if (!(normal_step > 0)) throw std::invalid_argument("normal step must be > 0");
}

std::mt19937_64 ray_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

std::vector<QuadratureNode> sample_ts(const IntegratorConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    const int n = cfg.n_samples;
    const double width = (cfg.t_far - cfg.t_near) / n;
    std::vector<QuadratureNode> nodes(std::size_t(n), QuadratureNode{0, width});
    for (int i = 0; i < n; ++i) {
        const double offset = cfg.jitter ? uniform01(rng) : 0.5;
        nodes[std::size_t(i)].t = cfg.t_near + (i + offset) * width;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        nodes[i].delta = nodes[i + 1].t - nodes[i].t;
    }
    return nodes;
}

Transmittance transmittance_weights(std::span<const double> sigmas,
                                    std::span<const double> deltas) {
    if (sigmas.size() != deltas.size()) {
        throw std::invalid_argument("sigma and delta lists differ in length");
    }
    Transmittance out;
    out.weights.resize(sigmas.size());
    out.transmittance.resize(sigmas.size());
    double optical_depth = 0;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] >= 0)) {
            throw std::invalid_argument("negative density " + std::to_string(sigmas[i]) +
                                        " at sample " + std::to_string(i));
        }
        if (!(deltas[i] > 0)) {
            throw std::invalid_argument("non-positive segment length at sample " +
                                        std::to_string(i));
        }
        const double T = std::exp(-optical_depth);
        const double tau = sigmas[i] * deltas[i];
        out.transmittance[i] = T;
        out.weights[i] = T * -std::expm1(-tau);
        out.alpha += out.weights[i];
        optical_depth += tau;
    }
    return out;
}

std::vector<RaySample> march_ray(const IntrinsicField& field, const Ray& ray,
                                 const IntegratorConfig& cfg, std::uint64_t stream) {
    auto rng = ray_stream(cfg.seed, stream);
    const auto nodes = sample_ts(cfg, rng);

    std::vector<Vec3> points(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) points[i] = ray.at(nodes[i].t);
    std::vector<IntrinsicSample> intrinsics(nodes.size());
    std::vector<Vec3> gradients(nodes.size());
    field.sample_batch(points, intrinsics);
    field.gradient_batch(points, cfg.normal_step, gradients);

    std::vector<RaySample> samples;
    samples.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        samples.push_back({nodes[i].t, nodes[i].delta, points[i], std::move(intrinsics[i]),
                           normal_from_gradient(gradients[i])});
    }
    return samples;
}

RayResult integrate_ray(const IntrinsicField& field, const LightMapStack& stack, const Ray& ray,
                        const IntegratorConfig& cfg, std::uint64_t stream) {
    if (field.exponent_count() != stack.size()) {
        throw std::invalid_argument("field has " + std::to_string(field.exponent_count()) +
                                    " blend weights but the light map stack has " +
                                    std::to_string(stack.size()) + " exponents");
    }
    const auto samples = march_ray(field, ray, cfg, stream);
    std::vector<double> sigmas(samples.size()), deltas(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        sigmas[i] = samples[i].intrinsic.sigma;
        deltas[i] = samples[i].delta;
    }
    const Transmittance tr = transmittance_weights(sigmas, deltas);

    RayResult out;
    out.feature.assign(field.feature_dim(), 0.0);
    const Vec3 view = -ray.direction;
    Vec3 normal_sum;
    double depth_sum = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = tr.weights[i];
        if (w == 0.0) continue;
        const RaySample& s = samples[i];
        out.albedo += s.intrinsic.albedo * w;
        for (std::size_t k = 0; k < out.feature.size(); ++k) {
            out.feature[k] += w * s.intrinsic.feature[k];
        }
        depth_sum += w * s.t;
        if (s.normal) {
            const Vec3& n = *s.normal;
            out.diffuse += stack.diffuse(n) * w;
            out.specular += stack.specular(reflect(view, n), s.intrinsic.weights) * w;
            normal_sum += n * w;
        }
    }
    out.alpha = std::min(tr.alpha, 1.0);
    if (tr.alpha > 0) out.depth = depth_sum / tr.alpha;
    const double len = length(normal_sum);
    if (len > 0) out.normal = normal_sum * (1.0 / len);
    return out;
}

}  // namespace irf
