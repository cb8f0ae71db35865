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

#include "irf/field.hpp"
#include "irf/mlp.hpp"
#include "test_support.hpp"

using namespace irf;
using irf::testing::random_direction;

namespace {

double profile(double scale, double sharpness, double radius, double r) {
    return scale / (1.0 + std::exp(-sharpness * (radius - r)));
}

}  // namespace

TEST_CASE("positional encoding") {
    SUBCASE("origin") {
        const auto e = positional_encoding({0, 0, 0}, 2);
        REQUIRE(e.size() == 12);
        for (int k = 0; k < 2; ++k) {
            for (int a = 0; a < 3; ++a) {
                CHECK(e[6 * k + a] == 0.0);
                CHECK(e[6 * k + 3 + a] == 1.0);
            }
        }
    }
    SUBCASE("ten levels give sixty features") {
        CHECK(positional_encoding({0.1, 0.2, 0.3}, 10).size() == 60);
    }
    SUBCASE("unit x at one level") {
        const auto e = positional_encoding({1, 0, 0}, 1);
        CHECK(std::abs(e[0]) < 1e-15);
        CHECK(e[3] == -1.0);
        CHECK(e[4] == 1.0);
    }
    SUBCASE("frequencies double per level") {
        const auto e = positional_encoding({0.125, 0, 0}, 3);
        CHECK(e[0] == doctest::Approx(std::sin(kPi / 8)));
        CHECK(e[6] == doctest::Approx(std::sin(kPi / 4)));
        CHECK(e[12] == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(positional_encoding({0, 0, 0}, 0), std::invalid_argument);
}

TEST_CASE("sphere density profile") {
    SphereParams p = testing::test_sphere();
    const SphereField f(p);
    const double inside = profile(p.density_scale, p.sharpness, p.radius, 0.0);
    const double outside = profile(p.density_scale, p.sharpness, p.radius, 2 * p.radius);
    CHECK(f.sample({0, 0, 0}).sigma == doctest::Approx(inside).epsilon(1e-12));
    CHECK(f.sample({0, 0, 0}).sigma == doctest::Approx(p.density_scale).epsilon(1e-6));
    CHECK(f.sample({0, 2 * p.radius, 0}).sigma == doctest::Approx(outside).epsilon(1e-9));
    CHECK(f.sample({0, 2 * p.radius, 0}).sigma < 1e-3 * p.density_scale);
    CHECK(f.sample({p.radius, 0, 0}).sigma == doctest::Approx(0.5 * p.density_scale));
    const auto s = f.sample({0.1, 0.2, 0.3});
    CHECK(s.albedo == Rgb{0.8, 0.2, 0.2});
    CHECK(s.weights == p.weights);
    REQUIRE(s.feature.size() == kDefaultFeatureDim);
    CHECK(s.feature[0] == 0.8f);
    CHECK(s.feature[3] == 0.0f);
}

TEST_CASE("sphere parameter validation") {
    auto bad = [](auto mutate) {
        SphereParams p = testing::test_sphere();
        mutate(p);
        return p;
    };
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.radius = 0; })), std::invalid_argument);
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.sharpness = -1; })), std::invalid_argument);
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.density_scale = 0; })), std::invalid_argument);
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.albedo.g = 1.5; })), std::invalid_argument);
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.weights = {0.6, 0.6}; })), std::invalid_argument);
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.weights = {-0.1}; })), std::invalid_argument);
    CHECK_THROWS_AS(SphereField(bad([](SphereParams& p) { p.weights = {}; })), std::invalid_argument);
}

TEST_CASE("non-finite queries are rejected") {
    const SphereField f(testing::test_sphere());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(f.sample({nan, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(f.density({0, std::numeric_limits<double>::infinity(), 0}), std::invalid_argument);
    CHECK_THROWS_AS(f.normal_at({0, 0, nan}), std::invalid_argument);
    CHECK_THROWS_AS(f.normal_at({0, 0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("samples are pure and respect the intrinsic ranges") {
    SphereParams graded = testing::test_sphere();
    graded.albedo_gradient = {Vec3{2, 0, 0}, Vec3{0, -3, 0}, Vec3{1, 1, 1}};
    SphereParams second = testing::test_sphere();
    second.center = {0.4, 0.1, 0};
    second.albedo = {0.1, 0.9, 0.3};
    second.weights = {0.5, 0, 0, 0.5};
    const SphereField sphere(graded);
    const BlendField blend({graded, second});
    const MlpField mlp(generate_weights({.seed = 3, .width = 32, .layers = 6, .feature_dim = 8}), 10);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (const IntrinsicField* f : {static_cast<const IntrinsicField*>(&sphere),
                                    static_cast<const IntrinsicField*>(&blend),
                                    static_cast<const IntrinsicField*>(&mlp)}) {
        for (int i = 0; i < 200; ++i) {
            const Vec3 x{coord(rng), coord(rng), coord(rng)};
            const auto a = f->sample(x);
            const auto b = f->sample(x);
            CHECK(a.sigma == b.sigma);
            CHECK(a.albedo == b.albedo);
            CHECK(a.weights == b.weights);
            CHECK(a.feature == b.feature);
            CHECK(a.sigma >= 0);
            CHECK(std::isfinite(a.sigma));
            double sum = 0;
            for (int c = 0; c < 3; ++c) CHECK((a.albedo[c] >= 0 && a.albedo[c] <= 1));
            for (double w : a.weights) {
                CHECK(w >= 0);
                sum += w;
            }
            CHECK(sum <= 1.0 + 1e-12);
            for (float v : a.feature) CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("blend field mixes by density") {
    SphereParams a = testing::test_sphere();
    SphereParams b = testing::test_sphere();
    b.center = {1.0, 0, 0};
    b.albedo = {0.0, 1.0, 0.0};
    const BlendField blend({a, b});
    const SphereField fa(a), fb(b);
    const Vec3 x{0.5, 0.05, 0};
    const double sa = fa.density(x), sb = fb.density(x);
    const auto s = blend.sample(x);
    CHECK(s.sigma == doctest::Approx(sa + sb));
    CHECK(s.albedo.g == doctest::Approx((0.2 * sa + sb) / (sa + sb)));
    CHECK(s.albedo.r == doctest::Approx(0.8 * sa / (sa + sb)));
    CHECK_THROWS_AS(BlendField({}), std::invalid_argument);
    b.weights = {0.5};
    CHECK_THROWS_AS(BlendField({a, b}), std::invalid_argument);
}

TEST_CASE("normals from the density gradient") {
    const SphereParams p = testing::test_sphere();
    const SphereField f(p);

    SUBCASE("radial at the surface") {
        const auto n = f.normal_at({0.5, 0, 0});
        REQUIRE(n.has_value());
        CHECK(angle_deg(*n, {1, 0, 0}) < 0.5);
    }
    SUBCASE("uniform density has no normal") {
        const UniformField u(3.0, {0.5, 0.5, 0.5}, {0.5});
        std::mt19937_64 rng(2);
        for (int i = 0; i < 50; ++i) {
            const Vec3 x = random_direction(rng) * 0.7;
            CHECK_FALSE(u.normal_at(x).has_value());
            CHECK_FALSE(normal_from_gradient(finite_difference_gradient(u, x, 1e-3)).has_value());
        }
    }
    SUBCASE("analytic and finite-difference gradients agree near the surface") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> shell(p.radius - 0.05, p.radius + 0.05);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const Vec3 x = random_direction(rng) * shell(rng);
            const auto analytic = normal_from_gradient(f.density_gradient(x, 1e-3));
            const auto numeric = normal_from_gradient(finite_difference_gradient(f, x, 1e-3));
            REQUIRE(analytic.has_value());
            REQUIRE(numeric.has_value());
            worst = std::max(worst, angle_deg(*analytic, *numeric));
            CHECK(dot(*analytic, normalize(x - p.center)) > 0.9999);
        }
        CHECK(worst < 0.5);
    }
    SUBCASE("centre of the sphere has no normal") {
        CHECK_FALSE(f.normal_at(p.center).has_value());
    }
}

TEST_CASE("yawed field rotates samples and gradients") {
    SphereParams p = testing::test_sphere();
    p.center = {0.3, 0.1, -0.2};
    p.albedo_gradient = {Vec3{0.3, 0, 0}, Vec3{0, 0, 0.3}, Vec3{}};
    auto inner = std::make_shared<SphereField>(p);
    const double angle = 0.8;
    const YawedField yawed(inner, angle);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const Vec3 x = p.center * 0.5 + random_direction(rng) * 0.5;
        const Vec3 local = rotate_y(x, -angle);
        CHECK(yawed.sample(x).albedo == inner->sample(local).albedo);
        CHECK(yawed.density(x) == inner->density(local));
        const Vec3 g = yawed.density_gradient(x, 1e-4);
        const Vec3 fd = finite_difference_gradient(yawed, x, 1e-4);
        CHECK(length(g - fd) <= 1e-4 * std::max(1.0, length(g)));
    }
    const Vec3 c = rotate_y(p.center, angle);
    CHECK(yawed.density(c) == doctest::Approx(inner->density(p.center)).epsilon(1e-12));
}

TEST_CASE("blend gradient is analytic") {
    SphereParams a = testing::test_sphere();
    SphereParams b = testing::test_sphere();
    b.center = {0.6, 0.2, 0};
    b.radius = 0.3;
    const BlendField blend({a, b});
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const Vec3 x = random_direction(rng) * 0.55;
        const Vec3 g = blend.density_gradient(x, 1e-4);
        const Vec3 fd = finite_difference_gradient(blend, x, 1e-4);
        CHECK(length(g - fd) <= 1e-3 * std::max(1.0, length(g)));
    }
}
