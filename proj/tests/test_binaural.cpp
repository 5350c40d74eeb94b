//
//  test_binaural.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "panobin/binaural.hpp"
#include "panobin/convolution.hpp"
#include "panobin/errors.hpp"
#include "panobin/wav.hpp"
#include "test_util.hpp"

using namespace panobin;
using panobin_test::random_samples;
using panobin_test::TempDir;

namespace {

// Test-local O(N*L) oracle, independent of the library's own direct path.
std::vector<double> naive_convolve(const std::vector<double>& x, const std::vector<double>& h) {
    std::vector<double> out(x.size() + h.size() - 1, 0.0);
    for (std::size_t n = 0; n < out.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            if (n >= k && n - k < x.size())
                acc += h[k] * x[n - k];
        }
        out[n] = acc;
    }
    return out;
}

FoaClip random_float_clip(std::mt19937& gen, std::size_t n, double rate = 44100.0) {
    // Double values that are exactly representable as float, like samples
    // read from a float32 WAV.
    auto quantize = [](std::vector<double> v) {
        for (auto& s : v)
            s = static_cast<float>(s);
        return v;
    };
    FoaClip c;
    c.w = quantize(random_samples(gen, n));
    c.y = quantize(random_samples(gen, n));
    c.z = quantize(random_samples(gen, n));
    c.x = quantize(random_samples(gen, n));
    c.sample_rate = rate;
    return c;
}

Hrir random_hrir(std::mt19937& gen, std::size_t taps, double rate = 44100.0) {
    Hrir h;
    h.wy = {random_samples(gen, taps), random_samples(gen, taps)};
    h.zx = {random_samples(gen, taps), random_samples(gen, taps)};
    h.sample_rate = rate;
    return h;
}

Hrir delta_hrir(double rate = 44100.0) {
    Hrir h;
    h.wy = {std::vector<double>{1.0}, std::vector<double>{1.0}};
    h.zx = {std::vector<double>{1.0}, std::vector<double>{1.0}};
    h.sample_rate = rate;
    return h;
}

} // namespace

TEST_CASE("direct convolution on a worked example") {
    const auto out = convolve_direct(std::vector<double>{1.0, 2.0, 3.0},
                                     std::vector<double>{1.0, 1.0});
    REQUIRE(out.size() == 4);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == 3.0);
    CHECK(out[2] == 5.0);
    CHECK(out[3] == 3.0);
}

TEST_CASE("fft convolution matches the naive oracle on random sizes") {
    std::mt19937 gen(31);
    std::uniform_int_distribution<std::size_t> n_dist(1, 1024);
    std::uniform_int_distribution<std::size_t> l_dist(1, 64);
    for (int i = 0; i < 50; ++i) {
        const auto x = random_samples(gen, n_dist(gen));
        const auto h = random_samples(gen, l_dist(gen));
        const auto expected = naive_convolve(x, h);
        const auto got = convolve_fft(x, h);
        REQUIRE(got.size() == expected.size());
        for (std::size_t k = 0; k < got.size(); ++k)
            CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    }
}

TEST_CASE("fft convolution handles kernels longer than the input") {
    std::mt19937 gen(32);
    const auto x = random_samples(gen, 20);
    const auto h = random_samples(gen, 300);
    const auto expected = naive_convolve(x, h);
    const auto got = convolve_fft(x, h);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k)
        CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-9));
}

TEST_CASE("policy convolution with a unit impulse is an exact pass-through") {
    std::mt19937 gen(33);
    const auto x = random_samples(gen, 333);
    const auto out = convolve(x, std::vector<double>{1.0});
    REQUIRE(out.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(out[i] == x[i]);
}

TEST_CASE("convolution rejects empty inputs") {
    const std::vector<double> empty;
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(convolve_direct(empty, one), InvalidArgumentError);
    CHECK_THROWS_AS(convolve_fft(one, empty), InvalidArgumentError);
}

TEST_CASE("delta HRIRs reduce binauralization to the printed combinations") {
    std::mt19937 gen(34);
    const FoaClip clip = random_float_clip(gen, 500);
    const BinauralClip out = binauralize(clip, delta_hrir());
    REQUIRE(out.size() == clip.size());
    CHECK(out.sample_rate == clip.sample_rate);
    for (std::size_t i = 0; i < clip.size(); ++i) {
        // Same left-to-right summation order as the implementation.
        CHECK(out.left[i] == clip.w[i] + clip.y[i] + clip.z[i] + clip.x[i]);
        CHECK(out.right[i] == clip.w[i] - clip.y[i] + clip.z[i] + clip.x[i]);
    }
}

TEST_CASE("all-zero input produces all-zero output") {
    FoaClip clip;
    clip.w.assign(256, 0.0);
    clip.y.assign(256, 0.0);
    clip.z.assign(256, 0.0);
    clip.x.assign(256, 0.0);
    clip.sample_rate = 44100.0;
    std::mt19937 gen(35);
    const BinauralClip out = binauralize(clip, random_hrir(gen, 128));
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out.left[i] == 0.0);
        CHECK(out.right[i] == 0.0);
    }
}

TEST_CASE("negating Y swaps left and right exactly") {
    std::mt19937 gen(36);
    for (std::size_t taps : {std::size_t{48}, std::size_t{300}}) {
        const FoaClip clip = random_float_clip(gen, 700);
        const Hrir hrir = random_hrir(gen, taps);
        FoaClip flipped = clip;
        for (auto& v : flipped.y)
            v = -v;

        const BinauralClip a = binauralize(clip, hrir);
        const BinauralClip b = binauralize(flipped, hrir);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a.left[i] - b.right[i]) < 1e-12);
            CHECK(std::abs(a.right[i] - b.left[i]) < 1e-12);
        }
    }
}

TEST_CASE("binauralization is linear") {
    std::mt19937 gen(37);
    const FoaClip c1 = random_float_clip(gen, 400);
    FoaClip c2 = random_float_clip(gen, 400);
    const Hrir hrir = random_hrir(gen, 300);
    const double a = 0.7, b = -1.3;

    FoaClip mix = c1;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        mix.w[i] = a * c1.w[i] + b * c2.w[i];
        mix.y[i] = a * c1.y[i] + b * c2.y[i];
        mix.z[i] = a * c1.z[i] + b * c2.z[i];
        mix.x[i] = a * c1.x[i] + b * c2.x[i];
    }

    const BinauralClip o1 = binauralize(c1, hrir);
    const BinauralClip o2 = binauralize(c2, hrir);
    const BinauralClip om = binauralize(mix, hrir);
    for (std::size_t i = 0; i < om.size(); ++i) {
        CHECK(om.left[i] == doctest::Approx(a * o1.left[i] + b * o2.left[i]).epsilon(1e-9));
        CHECK(om.right[i] == doctest::Approx(a * o1.right[i] + b * o2.right[i]).epsilon(1e-9));
    }
}

TEST_CASE("sample-rate mismatch is rejected, not resampled") {
    std::mt19937 gen(38);
    const FoaClip clip = random_float_clip(gen, 100, 48000.0);
    CHECK_THROWS_AS(binauralize(clip, delta_hrir(44100.0)), InvalidArgumentError);
}

TEST_CASE("load_hrir validates shape and rates") {
    TempDir tmp("hrir");
    std::mt19937 gen(39);
    const auto wy = tmp.path() / "wy.wav";
    const auto zx = tmp.path() / "zx.wav";
    const auto mono = tmp.path() / "mono.wav";
    const auto zx48 = tmp.path() / "zx48.wav";

    write_wav_float32(wy, {random_samples(gen, 64), random_samples(gen, 64)}, 44100.0);
    write_wav_float32(zx, {random_samples(gen, 64), random_samples(gen, 64)}, 44100.0);
    write_wav_float32(mono, {random_samples(gen, 64)}, 44100.0);
    write_wav_float32(zx48, {random_samples(gen, 64), random_samples(gen, 64)}, 48000.0);

    const Hrir h = load_hrir(wy, zx);
    CHECK(h.length() == 64);
    CHECK(h.sample_rate == 44100.0);

    CHECK_THROWS_AS(load_hrir(mono, zx), FormatError);
    CHECK_THROWS_AS(load_hrir(wy, mono), FormatError);
    CHECK_THROWS_AS(load_hrir(wy, zx48), FormatError);
}

TEST_CASE("the shipped delta-HRIR fixtures load and act as identities") {
    const std::filesystem::path dir(PANOBIN_FIXTURE_DIR);
    const Hrir h = load_hrir(dir / "hrir_wy_delta.wav", dir / "hrir_zx_delta.wav");
    CHECK(h.sample_rate == 44100.0);
    CHECK(h.length() == 8);

    std::mt19937 gen(40);
    const FoaClip clip = random_float_clip(gen, 64);
    const BinauralClip out = binauralize(clip, h);
    for (std::size_t i = 0; i < clip.size(); ++i) {
        CHECK(out.left[i] == clip.w[i] + clip.y[i] + clip.z[i] + clip.x[i]);
        CHECK(out.right[i] == clip.w[i] - clip.y[i] + clip.z[i] + clip.x[i]);
    }
}

TEST_CASE("hrir pair index 0 convolves the first ambisonic channel of the pair") {
    // Distinct filters per channel make a mixed-up wiring visible.
    Hrir h;
    h.wy = {std::vector<double>{2.0}, std::vector<double>{3.0}};
    h.zx = {std::vector<double>{5.0}, std::vector<double>{7.0}};
    h.sample_rate = 44100.0;

    FoaClip clip;
    clip.w = {1.0};
    clip.y = {10.0};
    clip.z = {100.0};
    clip.x = {1000.0};
    clip.sample_rate = 44100.0;

    const BinauralClip out = binauralize(clip, h);
    CHECK(out.left[0] == 2.0 * 1.0 + 3.0 * 10.0 + 5.0 * 100.0 + 7.0 * 1000.0);
    CHECK(out.right[0] == 2.0 * 1.0 - 3.0 * 10.0 + 5.0 * 100.0 + 7.0 * 1000.0);
}
