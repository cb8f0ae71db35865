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

#include "irf/mlp.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <random>
#include <string>

#include "irf/pfm.hpp"

namespace irf {
namespace {

constexpr char kMagic[4] = {'V', 'X', 'W', '1'};
constexpr float kLeakySlope = 0.2f;

Eigen::MatrixXf affine(const DenseLayer& layer, const Eigen::MatrixXf& x) {
    Eigen::MatrixXf y = layer.weight * x;
    y.colwise() += layer.bias;
    return y;
}

void leaky_relu(Eigen::MatrixXf& x) {
    x = x.unaryExpr([](float v) { return v > 0 ? v : kLeakySlope * v; });
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::string layer_name(std::size_t index, std::size_t trunk) {
    if (index < trunk) return "trunk layer " + std::to_string(index + 1);
    switch (index - trunk) {
        case 0: return "density head";
        case 1: return "intrinsic head hidden layer";
        case 2: return "intrinsic head output layer";
        default: return "feature projection";
    }
}

void expect_inputs(const DenseLayer& layer, Eigen::Index inputs, const std::string& name) {
    if (layer.inputs() != inputs) {
        throw WeightFormatError(name + ": expects " + std::to_string(inputs) + " inputs, has " +
                                std::to_string(layer.inputs()));
    }
    if (layer.bias.size() != layer.outputs()) {
        throw WeightFormatError(name + ": bias length " + std::to_string(layer.bias.size()) +
                                " does not match " + std::to_string(layer.outputs()) + " rows");
    }
}

struct Reader {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    void need(std::size_t n, const std::string& what) const {
        if (bytes.size() - pos < n) {
            throw WeightFormatError("VXW1 truncated reading " + what + " at byte " +
                                    std::to_string(pos) + ": need " + std::to_string(n) +
                                    " bytes, have " + std::to_string(bytes.size() - pos));
        }
    }
    std::uint32_t u32(const std::string& what) {
        need(4, what);
        const auto* p = bytes.data() + pos;
        pos += 4;
        return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
               std::uint32_t(p[3]) << 24;
    }
    float f32(const std::string& what) {
        const float v = std::bit_cast<float>(u32(what));
        if (!std::isfinite(v)) {
            throw WeightFormatError("VXW1 non-finite value in " + what + " at byte " +
                                    std::to_string(pos - 4));
        }
        return v;
    }
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) out.push_back(std::uint8_t(v >> s));
}

std::vector<const DenseLayer*> file_order(const MlpWeights& w) {
    std::vector<const DenseLayer*> layers;
    for (const auto& l : w.trunk) layers.push_back(&l);
    layers.insert(layers.end(), {&w.density, &w.head_hidden, &w.head_out, &w.projection});
    return layers;
}

}  // namespace

std::vector<double> positional_encoding(const Vec3& x, int levels) {
    if (levels < 1) throw std::invalid_argument("encoding levels must be >= 1");
    std::vector<double> out;
    out.reserve(6 * std::size_t(levels));
    for (int k = 0; k < levels; ++k) {
        const double f = std::ldexp(kPi, k);
        for (double c : {x.x, x.y, x.z}) out.push_back(std::sin(f * c));
        for (double c : {x.x, x.y, x.z}) out.push_back(std::cos(f * c));
    }
    return out;
}

void MlpWeights::validate() const {
    if (trunk.size() < kDensityLayer) {
        throw WeightFormatError("network needs at least " + std::to_string(kDensityLayer) +
                                " trunk layers, has " + std::to_string(trunk.size()));
    }
    const std::size_t n = trunk.size();
    expect_inputs(trunk[0], trunk[0].inputs(), layer_name(0, n));
    for (std::size_t i = 1; i < n; ++i) {
        expect_inputs(trunk[i], trunk[i - 1].outputs(), layer_name(i, n));
    }
    expect_inputs(density, trunk[kDensityLayer - 1].outputs(), layer_name(n, n));
    if (density.outputs() != 1) throw WeightFormatError("density head must have 1 output");
    expect_inputs(head_hidden, trunk.back().outputs(), layer_name(n + 1, n));
    expect_inputs(head_out, head_hidden.outputs(), layer_name(n + 2, n));
    if (head_out.outputs() < 4) {
        throw WeightFormatError("intrinsic head output layer needs 3 albedo + at least 1 weight");
    }
    expect_inputs(projection, trunk.back().outputs(), layer_name(n + 3, n));
    if (projection.outputs() < 1) throw WeightFormatError("feature projection has no outputs");
}

Eigen::RowVectorXf mlp_density_raw(const MlpWeights& w, const Eigen::MatrixXf& encoded) {
    if (encoded.rows() != Eigen::Index(w.input_dim())) {
        throw std::invalid_argument("trunk layer 1: input has " + std::to_string(encoded.rows()) +
                                    " rows, expects " + std::to_string(w.input_dim()));
    }
    Eigen::MatrixXf h = encoded;
    for (std::size_t i = 0; i < MlpWeights::kDensityLayer; ++i) {
        h = affine(w.trunk[i], h);
        leaky_relu(h);
    }
    return affine(w.density, h);
}

MlpOutput mlp_forward(const MlpWeights& w, const Eigen::MatrixXf& encoded) {
    if (encoded.rows() != Eigen::Index(w.input_dim())) {
        throw std::invalid_argument("trunk layer 1: input has " + std::to_string(encoded.rows()) +
                                    " rows, expects " + std::to_string(w.input_dim()));
    }
    MlpOutput out;
    Eigen::MatrixXf h = encoded;
    for (std::size_t i = 0; i < w.trunk.size(); ++i) {
        h = affine(w.trunk[i], h);
        leaky_relu(h);
        if (i + 1 == MlpWeights::kDensityLayer) out.sigma_raw = affine(w.density, h);
    }
    Eigen::MatrixXf hidden = affine(w.head_hidden, h);
    leaky_relu(hidden);
    const Eigen::MatrixXf intrinsic = affine(w.head_out, hidden);
    out.albedo_raw = intrinsic.topRows(3);
    out.weights_raw = intrinsic.bottomRows(intrinsic.rows() - 3);
    out.feature = affine(w.projection, h);
    return out;
}

std::vector<std::uint8_t> write_vxw(const MlpWeights& w) {
    w.validate();
    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    const auto layers = file_order(w);
    put_u32(out, std::uint32_t(layers.size()));
    for (const DenseLayer* l : layers) {
        put_u32(out, std::uint32_t(l->outputs()));
        put_u32(out, std::uint32_t(l->inputs()));
        for (Eigen::Index r = 0; r < l->outputs(); ++r) {
            for (Eigen::Index c = 0; c < l->inputs(); ++c) {
                put_u32(out, std::bit_cast<std::uint32_t>(l->weight(r, c)));
            }
        }
        for (Eigen::Index r = 0; r < l->outputs(); ++r) {
            put_u32(out, std::bit_cast<std::uint32_t>(l->bias(r)));
        }
    }
    return out;
}

MlpWeights read_vxw(std::span<const std::uint8_t> bytes) {
    Reader in{bytes};
    in.need(4, "magic");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw WeightFormatError("not a VXW1 file");
    in.pos = 4;
    const std::uint32_t count = in.u32("layer count");
    if (count < MlpWeights::kDensityLayer + 4 || count > 1024) {
        throw WeightFormatError("VXW1 layer count " + std::to_string(count) +
                                " is outside [8, 1024]");
    }
    const std::size_t trunk = count - 4;
    std::vector<DenseLayer> layers(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::string name = layer_name(i, trunk);
        const std::uint32_t rows = in.u32(name + " rows");
        const std::uint32_t cols = in.u32(name + " cols");
        if (rows == 0 || cols == 0 || rows > 65536 || cols > 65536) {
            throw WeightFormatError(name + ": invalid shape " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
        }
        in.need((std::size_t(rows) * cols + rows) * 4, name + " payload");
        layers[i].weight.resize(rows, cols);
        for (std::uint32_t r = 0; r < rows; ++r) {
            for (std::uint32_t c = 0; c < cols; ++c) layers[i].weight(r, c) = in.f32(name);
        }
        layers[i].bias.resize(rows);
        for (std::uint32_t r = 0; r < rows; ++r) layers[i].bias(r) = in.f32(name + " bias");
    }
    if (in.pos != bytes.size()) {
        throw WeightFormatError("VXW1 has " + std::to_string(bytes.size() - in.pos) +
                                " trailing bytes after the last layer");
    }
    MlpWeights w;
    w.trunk.assign(layers.begin(), layers.begin() + std::ptrdiff_t(trunk));
    w.density = layers[trunk];
    w.head_hidden = layers[trunk + 1];
    w.head_out = layers[trunk + 2];
    w.projection = layers[trunk + 3];
    w.validate();
    return w;
}

MlpWeights read_vxw_file(const std::filesystem::path& path) {
    try {
        return read_vxw(read_file_bytes(path));
    } catch (const WeightFormatError& e) {
        throw WeightFormatError(std::string(e.what()) + " in '" + path.string() + "'");
    }
}

MlpWeights generate_weights(const WeightGenOptions& o) {
    if (o.width < 1 || o.layers < int(MlpWeights::kDensityLayer) || o.feature_dim < 1 ||
        o.exponents < 1 || o.levels < 1) {
        throw std::invalid_argument(
            "weight generation needs width, feature_dim, exponents, levels >= 1 and layers >= 4");
    }
    std::mt19937_64 rng(o.seed);
    auto make = [&rng](int rows, int cols) {
        std::normal_distribution<double> normal(0.0, 0.2 / std::sqrt(double(cols)));
        DenseLayer l;
        l.weight.resize(rows, cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) l.weight(r, c) = float(normal(rng));
        }
        l.bias.resize(rows);
        for (int r = 0; r < rows; ++r) l.bias(r) = float(normal(rng));
        return l;
    };
    MlpWeights w;
    w.trunk.push_back(make(o.width, 6 * o.levels));
    for (int i = 1; i < o.layers; ++i) w.trunk.push_back(make(o.width, o.width));
    w.density = make(1, o.width);
    w.head_hidden = make(o.width, o.width);
    w.head_out = make(3 + o.exponents, o.width);
    w.projection = make(o.feature_dim, o.width);
    return w;
}

// --- field ------------------------------------------------------------------

MlpField::MlpField(MlpWeights weights, int levels) : w_(std::move(weights)), levels_(levels) {
    if (levels < 1) throw std::invalid_argument("encoding levels must be >= 1");
    w_.validate();
    if (w_.input_dim() != 6 * std::size_t(levels)) {
        throw WeightFormatError("trunk layer 1: expects " + std::to_string(w_.input_dim()) +
                                " inputs but L=" + std::to_string(levels) + " encodes " +
                                std::to_string(6 * levels));
    }
}

Eigen::MatrixXf MlpField::encode(std::span<const Vec3> points) const {
    Eigen::MatrixXf enc(6 * levels_, Eigen::Index(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto e = positional_encoding(points[i], levels_);
        for (std::size_t k = 0; k < e.size(); ++k) enc(Eigen::Index(k), Eigen::Index(i)) = float(e[k]);
    }
    return enc;
}

void MlpField::sample_batch(std::span<const Vec3> points, std::span<IntrinsicSample> out) const {
    for (const auto& p : points) {
        if (!is_finite(p)) throw std::invalid_argument("field query at non-finite point");
    }
    if (points.empty()) return;
    const MlpOutput raw = mlp_forward(w_, encode(points));
    const Eigen::Index n = raw.weights_raw.rows();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto col = Eigen::Index(i);
        IntrinsicSample& s = out[i];
        s.sigma = softplus(raw.sigma_raw(col));
        s.albedo = {sigmoid(raw.albedo_raw(0, col)), sigmoid(raw.albedo_raw(1, col)),
                    sigmoid(raw.albedo_raw(2, col))};
        const double top = raw.weights_raw.col(col).maxCoeff();
        s.weights.resize(std::size_t(n));
        double sum = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
            s.weights[std::size_t(k)] = std::exp(double(raw.weights_raw(k, col)) - top);
            sum += s.weights[std::size_t(k)];
        }
        for (double& v : s.weights) v *= kWeightCap / sum;
        s.feature.assign(raw.feature.col(col).data(), raw.feature.col(col).data() + raw.feature.rows());
    }
}

void MlpField::gradient_batch(std::span<const Vec3> points, double h, std::span<Vec3> out) const {
    if (points.empty()) return;
    std::vector<Vec3> probes;
    probes.reserve(points.size() * 6);
    for (const auto& p : points) {
        for (const Vec3& e : {Vec3{h, 0, 0}, Vec3{0, h, 0}, Vec3{0, 0, h}}) {
            probes.push_back(p + e);
            probes.push_back(p - e);
        }
    }
    const Eigen::RowVectorXf raw = mlp_density_raw(w_, encode(probes));
    const double inv = 1.0 / (2 * h);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double g[3];
        for (int a = 0; a < 3; ++a) {
            const auto base = Eigen::Index(i * 6 + std::size_t(a) * 2);
            g[a] = (softplus(raw(base)) - softplus(raw(base + 1))) * inv;
        }
        out[i] = {g[0], g[1], g[2]};
    }
}

IntrinsicSample MlpField::do_sample(const Vec3& x) const {
    IntrinsicSample s;
    sample_batch(std::span<const Vec3>(&x, 1), std::span<IntrinsicSample>(&s, 1));
    return s;
}

double MlpField::do_density(const Vec3& x) const {
    return softplus(mlp_density_raw(w_, encode(std::span<const Vec3>(&x, 1)))(0));
}

}  // namespace irf
