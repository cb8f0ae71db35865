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

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "irf/vec.hpp"

namespace irf {

inline constexpr double kGradientFloor = 1e-6;
inline constexpr double kDefaultNormalStep = 1e-3;
inline constexpr std::size_t kDefaultFeatureDim = 16;
inline constexpr int kDefaultEncodingLevels = 10;

// Field output at one point.
//   sigma   density, >= 0
//   albedo  in [0, 1]^3, independent of view and lighting
//   weights specular lobe blend weights, each >= 0, sum <= 1
//   feature free-form feature vector
struct IntrinsicSample {
    double sigma = 0;
    Rgb albedo;
    std::vector<double> weights;
    std::vector<float> feature;
};

// Immutable volumetric intrinsic field. All queries are const and safe to
// call from many threads.
class IntrinsicField {
  public:
    virtual ~IntrinsicField() = default;

    virtual std::size_t exponent_count() const = 0;
    virtual std::size_t feature_dim() const = 0;

    // Throws std::invalid_argument for non-finite x.
    IntrinsicSample sample(const Vec3& x) const;
    double density(const Vec3& x) const;

    // Gradient of sigma. Analytic fields override; the default is a central
    // difference with step h.
    virtual Vec3 density_gradient(const Vec3& x, double h) const;

    // Outward normal -grad(sigma)/|grad(sigma)|, or nothing when the gradient
    // norm is below kGradientFloor.
    std::optional<Vec3> normal_at(const Vec3& x, double h = kDefaultNormalStep) const;

    // Batched forms used by the integrator; `out` has points.size() entries.
    virtual void sample_batch(std::span<const Vec3> points, std::span<IntrinsicSample> out) const;
    virtual void gradient_batch(std::span<const Vec3> points, double h,
                                std::span<Vec3> out) const;

  protected:
    virtual IntrinsicSample do_sample(const Vec3& x) const = 0;
    virtual double do_density(const Vec3& x) const = 0;
};

Vec3 finite_difference_gradient(const IntrinsicField& field, const Vec3& x, double h);
std::optional<Vec3> normal_from_gradient(const Vec3& gradient);

// Soft solid ball: sigma = density_scale * sigmoid(sharpness * (radius - |x - center|)).
// Albedo is `albedo` plus an optional per-channel linear term in the
// normalized offset (x - center) / radius, clamped to [0, 1].
struct SphereParams {
    Vec3 center;
    double radius = 0.5;
    double sharpness = 60.0;
    double density_scale = 40.0;
    Rgb albedo{0.8, 0.2, 0.2};
    std::array<Vec3, 3> albedo_gradient{};
    std::vector<double> weights{0.2, 0.15, 0.1, 0.05};
    std::size_t feature_dim = kDefaultFeatureDim;

    void validate() const;
};

class SphereField final : public IntrinsicField {
  public:
    explicit SphereField(SphereParams params);

    const SphereParams& params() const { return p_; }
    std::size_t exponent_count() const override { return p_.weights.size(); }
    std::size_t feature_dim() const override { return p_.feature_dim; }
    Vec3 density_gradient(const Vec3& x, double h) const override;

    Rgb albedo_at(const Vec3& x) const;

  protected:
    IntrinsicSample do_sample(const Vec3& x) const override;
    double do_density(const Vec3& x) const override;

  private:
    SphereParams p_;
};

// Union of soft spheres. Densities add; albedo, weights and features are
// density-weighted averages of the components.
class BlendField final : public IntrinsicField {
  public:
    explicit BlendField(std::vector<SphereParams> components);

    std::size_t exponent_count() const override { return parts_.front().exponent_count(); }
    std::size_t feature_dim() const override { return parts_.front().feature_dim(); }
    Vec3 density_gradient(const Vec3& x, double h) const override;

  protected:
    IntrinsicSample do_sample(const Vec3& x) const override;
    double do_density(const Vec3& x) const override;

  private:
    std::vector<SphereField> parts_;
};

// Homogeneous medium; sigma = 0 gives the empty field.
class UniformField final : public IntrinsicField {
  public:
    UniformField(double sigma, Rgb albedo, std::vector<double> weights,
                 std::size_t feature_dim = kDefaultFeatureDim);

    std::size_t exponent_count() const override { return sample_.weights.size(); }
    std::size_t feature_dim() const override { return sample_.feature.size(); }
    Vec3 density_gradient(const Vec3&, double) const override { return {}; }

  protected:
    IntrinsicSample do_sample(const Vec3&) const override { return sample_; }
    double do_density(const Vec3&) const override { return sample_.sigma; }

  private:
    IntrinsicSample sample_;
};

// `inner` turned about +y by `angle`: value(x) = inner(R_y(-angle) x).
class YawedField final : public IntrinsicField {
  public:
    YawedField(std::shared_ptr<const IntrinsicField> inner, double angle);

    std::size_t exponent_count() const override { return inner_->exponent_count(); }
    std::size_t feature_dim() const override { return inner_->feature_dim(); }
    Vec3 density_gradient(const Vec3& x, double h) const override;
    void sample_batch(std::span<const Vec3> points, std::span<IntrinsicSample> out) const override;
    void gradient_batch(std::span<const Vec3> points, double h, std::span<Vec3> out) const override;

  protected:
    IntrinsicSample do_sample(const Vec3& x) const override;
    double do_density(const Vec3& x) const override;

  private:
    std::shared_ptr<const IntrinsicField> inner_;
    double angle_;
};

}  // namespace irf
