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

#include <doctest.h>

#include <cstring>

#include "irf/mlp.hpp"
#include "test_support.hpp"

using namespace irf;

namespace {

DenseLayer layer(std::initializer_list<std::initializer_list<float>> rows,
                 std::initializer_list<float> bias) {
    DenseLayer l;
    const auto r = Eigen::Index(rows.size());
    const auto c = Eigen::Index(rows.begin()->size());
    l.weight.resize(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (float v : row) l.weight(i, j++) = v;
        ++i;
    }
    l.bias.resize(r);
    Eigen::Index k = 0;
    for (float v : bias) l.bias(k++) = v;
    return l;
}

// Width-2 network whose outputs were worked out by hand:
//   trunk 1..4 -> (-0.08, -0.048), density = -0.46
//   trunk 5..6 -> (0.128, 1.048)
//   head -> (0.128, -0.1904, -0.0624, 0.756), feature -> (0.128, 1.048, -0.92)
MlpWeights toy_network() {
    MlpWeights w;
    w.trunk.push_back(layer({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}}, {0, 0}));
    w.trunk.push_back(layer({{1, 1}, {1, -1}}, {0.5f, 0}));
    w.trunk.push_back(layer({{2, 0}, {0, -1}}, {0, 0}));
    w.trunk.push_back(layer({{1, 0}, {0, 1}}, {-3, 0}));
    w.trunk.push_back(layer({{-1, 0}, {0, -1}}, {0, 0}));
    w.trunk.push_back(layer({{1, 1}, {0, 1}}, {0, 1}));
    w.density = layer({{1, 10}}, {0.1f});
    w.head_hidden = layer({{1, 0}, {0, 1}}, {0, -2});
    w.head_out = layer({{1, 0}, {0, 1}, {1, 1}, {2, 0}}, {0, 0, 0, 0.5f});
    w.projection = layer({{1, 0}, {0, 1}, {1, -1}}, {0, 0, 0});
    return w;
}

MlpWeights zero_network(int width, int levels, int exponents, int features) {
    MlpWeights w = generate_weights(
        {.seed = 0, .width = width, .layers = 6, .feature_dim = features, .exponents = exponents, .levels = levels});
    for (auto* l : {&w.density, &w.head_hidden, &w.head_out, &w.projection}) {
        l->weight.setZero();
        l->bias.setZero();
    }
    for (auto& l : w.trunk) {
        l.weight.setZero();
        l.bias.setZero();
    }
    return w;
}

}  // namespace

TEST_CASE("hand-computed toy forward pass") {
    const MlpWeights w = toy_network();
    REQUIRE_NOTHROW(w.validate());
    Eigen::MatrixXf x(6, 1);
    x << 1, -1, 0.5f, 0, 2, 0;
    const MlpOutput out = mlp_forward(w, x);
    CHECK(out.sigma_raw(0) == doctest::Approx(-0.46).epsilon(1e-6));
    CHECK(out.albedo_raw(0, 0) == doctest::Approx(0.128).epsilon(1e-6));
    CHECK(out.albedo_raw(1, 0) == doctest::Approx(-0.1904).epsilon(1e-6));
    CHECK(out.albedo_raw(2, 0) == doctest::Approx(-0.0624).epsilon(1e-6));
    REQUIRE(out.weights_raw.rows() == 1);
    CHECK(out.weights_raw(0, 0) == doctest::Approx(0.756).epsilon(1e-6));
    REQUIRE(out.feature.rows() == 3);
    CHECK(out.feature(0, 0) == doctest::Approx(0.128).epsilon(1e-6));
    CHECK(out.feature(1, 0) == doctest::Approx(1.048).epsilon(1e-6));
    CHECK(out.feature(2, 0) == doctest::Approx(-0.92).epsilon(1e-6));
    CHECK(mlp_density_raw(w, x)(0) == out.sigma_raw(0));
}

TEST_CASE("zero network") {
    const MlpWeights w = zero_network(8, 2, 4, 5);
    const MlpOutput out = mlp_forward(w, Eigen::MatrixXf::Random(12, 3));
    CHECK(out.sigma_raw.isZero());
    CHECK(out.albedo_raw.isZero());
    CHECK(out.weights_raw.isZero());
    CHECK(out.feature.isZero());

    const MlpField field(w, 2);
    const auto s = field.sample({0.3, -0.2, 0.9});
    CHECK(s.sigma == doctest::Approx(0.6931).epsilon(1e-4));
    CHECK(s.albedo == Rgb{0.5, 0.5, 0.5});
    REQUIRE(s.weights.size() == 4);
    for (double v : s.weights) CHECK(v == doctest::Approx(0.125));
    CHECK_FALSE(field.normal_at({0.1, 0.1, 0.1}).has_value());
}

TEST_CASE("full-size network shapes") {
    const MlpWeights w = generate_weights(
        {.seed = 42, .width = 256, .layers = 6, .feature_dim = 256, .exponents = 4, .levels = 10});
    CHECK(w.trunk.size() == 6);
    CHECK(w.trunk[0].weight.rows() == 256);
    CHECK(w.trunk[0].weight.cols() == 60);
    CHECK(w.density.inputs() == 256);
    Eigen::MatrixXf enc(60, 1);
    const auto e = positional_encoding({0.1, 0.2, -0.3}, 10);
    for (int i = 0; i < 60; ++i) enc(i, 0) = float(e[std::size_t(i)]);
    const MlpOutput out = mlp_forward(w, enc);
    CHECK(out.sigma_raw.size() == 1);
    CHECK(out.albedo_raw.rows() == 3);
    CHECK(out.weights_raw.rows() == 4);
    CHECK(out.feature.rows() == 256);
    CHECK(out.feature.allFinite());
}

TEST_CASE("dimension mismatches name the layer") {
    auto message = [](const MlpWeights& w) {
        try {
            w.validate();
        } catch (const WeightFormatError& e) {
            return std::string(e.what());
        }
        return std::string("<valid>");
    };
    MlpWeights w = toy_network();
    w.trunk[2].weight.resize(2, 3);
    CHECK(message(w).find("trunk layer 3") != std::string::npos);
    w = toy_network();
    w.head_out.weight.resize(4, 5);
    CHECK(message(w).find("intrinsic head output layer") != std::string::npos);
    w = toy_network();
    w.density = layer({{1, 1}, {1, 1}}, {0, 0});
    CHECK(message(w).find("density head") != std::string::npos);
    w = toy_network();
    w.trunk.resize(3);
    CHECK(message(w).find("at least 4") != std::string::npos);

    CHECK_THROWS_AS(mlp_forward(toy_network(), Eigen::MatrixXf::Zero(5, 1)), std::invalid_argument);
    CHECK_THROWS_AS(MlpField(toy_network(), 2), WeightFormatError);
}

TEST_CASE("VXW1 encoding") {
    const WeightGenOptions opts{.seed = 99, .width = 16, .layers = 6, .feature_dim = 4, .exponents = 3, .levels = 2};
    const auto bytes = write_vxw(generate_weights(opts));

    SUBCASE("seeded generation is reproducible") {
        CHECK(write_vxw(generate_weights(opts)) == bytes);
        WeightGenOptions other = opts;
        other.seed = 100;
        CHECK(write_vxw(generate_weights(other)) != bytes);
    }
    SUBCASE("header layout") {
        CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "VXW1");
        CHECK(bytes[4] == 10);  // 6 trunk + 4 heads
        CHECK(bytes[8] == 16);  // rows of trunk layer 1
        CHECK(bytes[12] == 12); // cols = 6 * levels
    }
    SUBCASE("read then write is byte-identical") {
        CHECK(write_vxw(read_vxw(bytes)) == bytes);
        const MlpWeights toy = toy_network();
        CHECK(write_vxw(read_vxw(write_vxw(toy))) == write_vxw(toy));
    }
    SUBCASE("rejections") {
        auto truncated = bytes;
        truncated.resize(bytes.size() - 3);
        CHECK_THROWS_WITH_AS(read_vxw(truncated), doctest::Contains("truncated"), WeightFormatError);
        auto trailing = bytes;
        trailing.push_back(0);
        CHECK_THROWS_WITH_AS(read_vxw(trailing), doctest::Contains("trailing"), WeightFormatError);
        auto magic = bytes;
        magic[3] = '2';
        CHECK_THROWS_AS(read_vxw(magic), WeightFormatError);
        auto nan = bytes;
        const float q = std::numeric_limits<float>::quiet_NaN();
        std::memcpy(&nan[16], &q, 4);
        CHECK_THROWS_WITH_AS(read_vxw(nan), doctest::Contains("non-finite"), WeightFormatError);
    }
}

TEST_CASE("seeded network is smooth at small scales") {
    const MlpField field(generate_weights({.seed = 5, .width = 64, .layers = 6, .feature_dim = 8}), 10);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const Vec3 x = testing::random_direction(rng) * 0.6;
        const double a = field.density(x);
        const double b = field.density(x + Vec3{1e-6, -1e-6, 1e-6});
        CHECK(std::isfinite(a));
        CHECK(std::abs(a - b) < 1e-2);
    }
}

TEST_CASE("batched gradients match single-point finite differences") {
    const MlpField field(generate_weights({.seed = 8, .width = 32, .layers = 6, .feature_dim = 8, .levels = 4}), 4);
    std::vector<Vec3> pts{{0.1, 0.2, 0.3}, {-0.4, 0.0, 0.25}, {0.0, -0.3, 0.1}};
    std::vector<Vec3> batched(pts.size());
    field.gradient_batch(pts, 1e-2, batched);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3 single = finite_difference_gradient(field, pts[i], 1e-2);
        CHECK(length(batched[i] - single) <= 1e-3 * std::max(1.0, length(single)));
    }
    std::vector<IntrinsicSample> samples(pts.size());
    field.sample_batch(pts, samples);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(samples[i].sigma == doctest::Approx(field.density(pts[i])).epsilon(1e-5));
    }
}
