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
#include <vector>

#include <Eigen/Core>

#include "irf/field.hpp"

namespace irf {

// Fourier features of a point: for each level k in [0, L) the block
// sin(2^k pi x), sin(2^k pi y), sin(2^k pi z), cos(2^k pi x), cos(2^k pi y),
// cos(2^k pi z). Length 6L.
std::vector<double> positional_encoding(const Vec3& x, int levels);

class WeightFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DenseLayer {
    using Matrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Matrix weight;  // out x in
    Eigen::VectorXf bias;

    Eigen::Index inputs() const { return weight.cols(); }
    Eigen::Index outputs() const { return weight.rows(); }
};

// Intrinsic-field network:
//   trunk      >= 4 affine layers with leaky ReLU (slope 0.2)
//   density    linear, 1 output, reads trunk layer 4
//   head       hidden layer (leaky ReLU) + output layer, 3 albedo + N weight
//              logits, reads the last trunk layer
//   projection linear, feature_dim outputs, reads the last trunk layer
// File order in VXW1 is trunk..., density, head hidden, head out, projection.
struct MlpWeights {
    static constexpr std::size_t kDensityLayer = 4;

    std::vector<DenseLayer> trunk;
    DenseLayer density;
    DenseLayer head_hidden;
    DenseLayer head_out;
    DenseLayer projection;

    std::size_t input_dim() const { return std::size_t(trunk.front().inputs()); }
    std::size_t exponent_count() const { return std::size_t(head_out.outputs()) - 3; }
    std::size_t feature_dim() const { return std::size_t(projection.outputs()); }

    // Throws WeightFormatError naming the first inconsistent layer.
    void validate() const;
};

// Raw (pre-activation) network outputs, one column per input.
struct MlpOutput {
    Eigen::RowVectorXf sigma_raw;
    Eigen::MatrixXf albedo_raw;   // 3 x batch
    Eigen::MatrixXf weights_raw;  // N x batch
    Eigen::MatrixXf feature;      // feature_dim x batch
};

MlpOutput mlp_forward(const MlpWeights& weights, const Eigen::MatrixXf& encoded);
Eigen::RowVectorXf mlp_density_raw(const MlpWeights& weights, const Eigen::MatrixXf& encoded);

std::vector<std::uint8_t> write_vxw(const MlpWeights& weights);
MlpWeights read_vxw(std::span<const std::uint8_t> bytes);
MlpWeights read_vxw_file(const std::filesystem::path& path);

struct WeightGenOptions {
    std::uint64_t seed = 0;
    int width = 256;
    int layers = 6;
    int feature_dim = int(kDefaultFeatureDim);
    int exponents = 4;
    int levels = kDefaultEncodingLevels;
};

// Gaussian init with std 0.2 / sqrt(fan_in) for weights and biases,
// deterministic per seed.
MlpWeights generate_weights(const WeightGenOptions& options);

// Activations on top of the raw outputs: softplus density, sigmoid albedo,
// blend weights 0.5 * softmax.
class MlpField final : public IntrinsicField {
  public:
    static constexpr double kWeightCap = 0.5;

    MlpField(MlpWeights weights, int levels);

    const MlpWeights& weights() const { return w_; }
    int levels() const { return levels_; }
    std::size_t exponent_count() const override { return w_.exponent_count(); }
    std::size_t feature_dim() const override { return w_.feature_dim(); }

    void sample_batch(std::span<const Vec3> points, std::span<IntrinsicSample> out) const override;
    void gradient_batch(std::span<const Vec3> points, double h, std::span<Vec3> out) const override;

  protected:
    IntrinsicSample do_sample(const Vec3& x) const override;
    double do_density(const Vec3& x) const override;

  private:
    Eigen::MatrixXf encode(std::span<const Vec3> points) const;

    MlpWeights w_;
    int levels_;
};

}  // namespace irf
