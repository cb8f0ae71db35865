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

#include "irf/prefilter.hpp"
#include "test_support.hpp"

using namespace irf;
using irf::testing::random_direction;
using irf::testing::relative_error;

namespace {

double max_abs_diff(const HdrEnvironmentMap& a, const HdrEnvironmentMap& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, double(std::abs(a.data()[i] - b.data()[i])));
    }
    return worst;
}

HdrEnvironmentMap single_texel_map(int w, int h, int tx, int ty, float value) {
    std::vector<float> rgb(std::size_t(w) * h * 3, 0.0f);
    for (int c = 0; c < 3; ++c) rgb[(std::size_t(ty) * w + tx) * 3 + c] = value;
    return {w, h, std::move(rgb)};
}

// Angle (degrees) at which the response to a point source falls to half of
// its peak, walking away from the source along a meridian.
double half_width_deg(const HdrEnvironmentMap& lobe, const Vec3& source) {
    const Vec3 axis = normalize(cross(source, Vec3{0, 1, 0}));
    const double peak = lobe.sample_bilinear(source).r;
    for (double deg = 0.0; deg < 180.0; deg += 0.1) {
        const double a = deg * kPi / 180.0;
        const Vec3 d = normalize(source * std::cos(a) + cross(axis, source) * std::sin(a));
        if (lobe.sample_bilinear(d).r < 0.5 * peak) return deg;
    }
    return 180.0;
}

}  // namespace

TEST_CASE("ExponentSet validation") {
    CHECK_NOTHROW(ExponentSet({1}));
    CHECK_NOTHROW(ExponentSet::defaults());
    CHECK(ExponentSet::defaults().values() == std::vector<double>{1, 8, 32, 128});
    CHECK_THROWS_AS(ExponentSet({}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentSet({2, 8}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentSet({1, 8, 8}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentSet({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentSet({0}), std::invalid_argument);
}

TEST_CASE("constant map is a fixed point") {
    const auto map = HdrEnvironmentMap::constant(256, 128, {0.7, 1.3, 2.0});
    const auto exps = ExponentSet::defaults();
    for (double n : exps.values()) {
        const auto out = preconvolve(map, n, 64, 32);
        double worst = 0;
        for (int y = 0; y < 32; ++y) {
            for (int x = 0; x < 64; ++x) worst = std::max(worst, relative_error(out.texel(x, y), {0.7, 1.3, 2.0}));
        }
        CHECK_MESSAGE(worst < 1e-3, "n=" << n);
    }
}

TEST_CASE("single bright texel under the cosine lobe") {
    const int w = 64, h = 32, tx = 20, ty = 11;
    const float r = 50.0f;
    const auto map = single_texel_map(w, h, tx, ty, r);
    const Vec3 source = map.texel_direction(tx, ty);
    const double d_omega = map.texel_solid_angle(ty);
    const auto out = preconvolve(map, 1.0, w, h);
    const int probes[8][2] = {{20, 11}, {25, 11}, {20, 4}, {12, 14}, {30, 20}, {5, 9}, {36, 16}, {50, 2}};
    for (const auto& p : probes) {
        const Vec3 d = out.texel_direction(p[0], p[1]);
        const double expected = 2.0 / (2 * kPi) * r * d_omega * std::max(0.0, dot(d, source));
        const double got = out.texel(p[0], p[1]).r;
        if (expected == 0.0) {
            CHECK(got == 0.0);
        } else {
            CHECK(got == doctest::Approx(expected).epsilon(1e-3));
        }
    }
}

TEST_CASE("sharp lobe on a two-texel map follows the oracle") {
    std::vector<float> rgb(std::size_t(64) * 32 * 3, 0.0f);
    for (int c = 0; c < 3; ++c) {
        rgb[(std::size_t(10) * 64 + 17) * 3 + c] = 100.0f;
        rgb[(std::size_t(20) * 64 + 45) * 3 + c] = 10.0f;
    }
    const HdrEnvironmentMap map(64, 32, std::move(rgb));
    const auto lobe = preconvolve(map, 512, 64, 32);
    const Vec3 bright = map.texel_direction(17, 10);
    const Rgb want = oracle_shade(map, bright, 512);
    CHECK(relative_error(lobe.texel(17, 10), want) < 0.01);
    CHECK(want.r > 1.0);
}

TEST_CASE("build_stack") {
    SUBCASE("single exponent on a constant map") {
        const auto map = HdrEnvironmentMap::constant(32, 16, {2, 2, 2});
        const auto stack = build_stack(map, ExponentSet({1}), 8, 4);
        REQUIRE(stack.size() == 1);
        for (float v : stack.map(0).data()) CHECK(v == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("lobes sharpen with the exponent") {
        const auto map = single_texel_map(256, 128, 90, 50, 1000.0f);
        const Vec3 source = map.texel_direction(90, 50);
        const auto stack = build_stack(map, ExponentSet::defaults(), 128, 64);
        REQUIRE(stack.size() == 4);
        double previous = 181.0;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            const double hw = half_width_deg(stack.map(i), source);
            MESSAGE("n=" << stack.exponents()[i] << " half width " << hw << " deg");
            CHECK(hw < previous);
            previous = hw;
        }
        // cos^n(hw) = 1/2 for the diffuse lobe gives 60 degrees.
        CHECK(half_width_deg(stack.map(0), source) == doctest::Approx(60.0).epsilon(0.03));
    }
    SUBCASE("empty exponent list") {
        CHECK_THROWS_AS(build_stack(HdrEnvironmentMap::constant(8, 4, {1, 1, 1}), ExponentSet({}), 8, 4),
                        std::invalid_argument);
    }
    SUBCASE("bad output size") {
        const auto map = HdrEnvironmentMap::constant(8, 4, {1, 1, 1});
        CHECK_THROWS_AS(preconvolve(map, 1, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(preconvolve(map, 1, 10, 4), std::invalid_argument);
        CHECK_THROWS_AS(preconvolve(map, 0.5, 8, 4), std::invalid_argument);
    }
}

TEST_CASE("oracle_shade") {
    SUBCASE("constant map") {
        const auto map = HdrEnvironmentMap::constant(128, 64, {0.3, 0.3, 0.3});
        std::mt19937_64 rng(5);
        for (int i = 0; i < 16; ++i) {
            const Rgb v = oracle_shade(map, random_direction(rng), 8);
            CHECK(std::abs(v.r - 0.3) < 1e-4);
        }
    }
    SUBCASE("agrees with bilinear lookup into preconvolve output") {
        const auto map = testing::two_blob_map(256, 128);
        std::mt19937_64 rng(21);
        for (double n : {1.0, 8.0, 32.0}) {
            const auto lobe = preconvolve(map, n, 64, 32);
            double worst = 0;
            for (int i = 0; i < 64; ++i) {
                const Vec3 d = random_direction(rng);
                worst = std::max(worst, relative_error(lobe.sample_bilinear(d), oracle_shade(map, d, n)));
            }
            MESSAGE("n=" << n << " worst relative error " << worst);
            CHECK(worst < 0.02);
        }
    }
    SUBCASE("lobe concentration on a hemisphere-lit map") {
        const auto map = HdrEnvironmentMap::from_function(
            128, 64, [](const Vec3& d) { return d.y > 0 ? Rgb{1, 1, 1} : Rgb{}; });
        for (double elevation : {-90.0, -60.0, -30.0, -10.0}) {
            const double e = elevation * kPi / 180.0;
            const Vec3 d{std::cos(e), std::sin(e), 0};
            CHECK(oracle_shade(map, d, 2).r <= oracle_shade(map, d, 1).r);
        }
    }
}

TEST_CASE("preconvolve is linear") {
    const auto a = testing::two_blob_map(64, 32);
    const auto b = HdrEnvironmentMap::from_function(64, 32, [](const Vec3& d) {
        return Rgb{1 + d.x, 1 + d.y, 1 + d.z};
    });
    std::vector<float> mix(a.data().size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.0f * a.data()[i] + 0.5f * b.data()[i];
    const HdrEnvironmentMap combined(64, 32, std::move(mix));
    for (double n : {1.0, 32.0}) {
        const auto la = preconvolve(a, n, 16, 8);
        const auto lb = preconvolve(b, n, 16, 8);
        const auto lc = preconvolve(combined, n, 16, 8);
        double worst = 0;
        for (std::size_t i = 0; i < lc.data().size(); ++i) {
            const double want = 2.0 * la.data()[i] + 0.5 * lb.data()[i];
            worst = std::max(worst, std::abs(lc.data()[i] - want) / std::max(1.0, std::abs(want)));
        }
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("preconvolve commutes with yaw rotation") {
    const auto map = testing::two_blob_map(128, 64);
    std::mt19937_64 rng(9);
    for (double theta : {0.4, 2.0}) {
        const auto rotated_first = preconvolve(map.rotate_yaw(theta), 8, 64, 32);
        const auto plain = preconvolve(map, 8, 64, 32);
        for (int i = 0; i < 64; ++i) {
            const Vec3 d = random_direction(rng);
            CHECK(relative_error(rotated_first.sample_bilinear(d),
                                 plain.sample_bilinear(rotate_y(d, -theta))) < 0.02);
        }
    }
}

TEST_CASE("finer source maps converge towards the reference") {
    const auto reference = testing::two_blob_map(512, 256, 0.15);
    const auto ref_lobe = preconvolve(reference, 32, 32, 16);
    double previous = 1e9;
    for (int h : {16, 32, 64}) {
        const auto lobe = preconvolve(testing::two_blob_map(2 * h, h, 0.15), 32, 32, 16);
        const double err = max_abs_diff(lobe, ref_lobe);
        MESSAGE("source " << 2 * h << "x" << h << " max error " << err);
        CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("stack manifest round trip and thread independence") {
    const auto map = testing::two_blob_map(64, 32);
    const auto stack = build_stack(map, ExponentSet::defaults(), 16, 8, 1);
    const auto threaded = build_stack(map, ExponentSet::defaults(), 16, 8, 4);
    for (std::size_t i = 0; i < stack.size(); ++i) CHECK(stack.map(i).data() == threaded.map(i).data());

    testing::TempDir dir("stack");
    const auto files = write_stack(dir.path(), stack, "blobs.pfm");
    CHECK(files.size() == 5);
    const auto back = read_stack(dir.path() / "manifest.json");
    CHECK(back.exponents().values() == stack.exponents().values());
    for (std::size_t i = 0; i < stack.size(); ++i) CHECK(back.map(i).data() == stack.map(i).data());
}

TEST_CASE("rotating light maps matches prefiltering a rotated source") {
    const auto map = testing::two_blob_map(128, 64);
    const auto exps = ExponentSet::defaults();
    const auto fast = build_stack(map, exps, 64, 32).rotate_yaw(1.1);
    const auto slow = build_stack(map.rotate_yaw(1.1), exps, 64, 32);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 64; ++i) {
        const Vec3 d = random_direction(rng);
        for (std::size_t k = 0; k < exps.size(); ++k) {
            CHECK(relative_error(fast.map(k).sample_bilinear(d), slow.map(k).sample_bilinear(d)) < 0.03);
        }
    }
}
