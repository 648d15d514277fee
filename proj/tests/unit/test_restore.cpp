#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uwr/degrade.hpp"
#include "uwr/restore.hpp"
#include "uwr/synth.hpp"

using uwr::ClaheConfig;
using uwr::FilterParams;
using uwr::ImageBuf;

namespace {

ClaheConfig no_clahe() {
    ClaheConfig c;
    c.enabled = false;
    return c;
}

ImageBuf blur(const ImageBuf& img, double k) {
    uwr::DegradeParams d;
    d.k = k;
    return uwr::degrade(img, d);
}

} // namespace

TEST(FftFrequency, WrapsToSymmetricRange) {
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(0, 8), 0.0);
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(3, 8), 0.375);
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(4, 8), -0.5);
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(7, 8), -0.125);
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(2, 5), 0.4);
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(3, 5), -0.4);
    EXPECT_DOUBLE_EQ(uwr::fft_frequency(0, 1), 0.0);
}

TEST(TurbulenceOtf, KnownValues) {
    const auto otf = uwr::build_turbulence_otf(4, 4, 1.0);
    EXPECT_DOUBLE_EQ(otf.at(0, 0), 1.0);
    EXPECT_NEAR(otf.at(1, 0), std::exp(-std::pow(0.0625, 5.0 / 6.0)), 1e-12);
    // u^2 + v^2 = 0.25 at (u, v) = (-0.5, 0): exp(-0.25^(5/6))
    EXPECT_NEAR(otf.at(2, 0), 0.7298, 1e-4);
    // symmetric under u -> -u
    EXPECT_DOUBLE_EQ(otf.at(1, 2), otf.at(3, 2));
    for (double v : otf.values) {
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(TurbulenceOtf, RejectsBadInput) {
    EXPECT_THROW(uwr::build_turbulence_otf(4, 4, -0.1), std::invalid_argument);
    EXPECT_THROW(uwr::build_turbulence_otf(4, 4, NAN), std::invalid_argument);
    EXPECT_THROW(uwr::build_turbulence_otf(0, 4, 1.0), std::invalid_argument);
    const auto flat = uwr::build_turbulence_otf(5, 3, 0.0);
    for (double v : flat.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(FilterParams, Validation) {
    EXPECT_THROW((FilterParams{-1.0, 1e-3}.validate()), std::invalid_argument);
    EXPECT_THROW((FilterParams{1.0, -1e-3}.validate()), std::invalid_argument);
    EXPECT_THROW((FilterParams{INFINITY, 1e-3}.validate()), std::invalid_argument);
    EXPECT_THROW((FilterParams{1.0, NAN}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((FilterParams{0.0, 0.0}.validate()));
    EXPECT_THROW(uwr::wiener_deconvolve(ImageBuf(4, 4, 3), {-1.0, 0.1}), std::invalid_argument);
    EXPECT_THROW(uwr::wiener_deconvolve(ImageBuf(), {1.0, 0.1}), std::invalid_argument);
}

TEST(Wiener, ZeroTurbulenceZeroNoiseIsIdentity) {
    for (auto [w, h] : {std::pair{16, 16}, {17, 9}, {1, 7}, {5, 1}}) {
        const ImageBuf img = oracle::random_image(w, h, 3, static_cast<std::uint64_t>(w * h));
        const ImageBuf out = uwr::wiener_deconvolve(img, {0.0, 0.0});
        EXPECT_LT(oracle::max_abs_diff(img, out), 1e-5) << w << "x" << h;
    }
}

TEST(Wiener, UndoesKnownBlur) {
    const ImageBuf clean = uwr::synthetic_scene(128, 96, 7);
    const ImageBuf blurred = blur(clean, 1.5);
    const ImageBuf back = uwr::wiener_deconvolve(blurred, {1.5, 1e-6});
    EXPECT_GT(oracle::psnr(clean, uwr::clamp01(back)), oracle::psnr(clean, blurred) + 10.0);
}

TEST(Wiener, IsLinear) {
    const ImageBuf a = oracle::random_image(24, 20, 3, 1);
    const ImageBuf b = oracle::random_image(24, 20, 3, 2);
    ImageBuf sum = a;
    for (std::size_t i = 0; i < sum.data().size(); ++i) sum.data()[i] = 0.3f * a.data()[i] + 2.0f * b.data()[i];
    const FilterParams p{2.0, 1e-2};
    const ImageBuf fa = uwr::wiener_deconvolve(a, p), fb = uwr::wiener_deconvolve(b, p);
    const ImageBuf fs = uwr::wiener_deconvolve(sum, p);
    for (std::size_t i = 0; i < fs.data().size(); ++i)
        EXPECT_NEAR(fs.data()[i], 0.3f * fa.data()[i] + 2.0f * fb.data()[i], 1e-4);
}

TEST(Wiener, OutputEnergyFallsAsNoiseRatioGrows) {
    const ImageBuf img = uwr::synthetic_scene(64, 64, 3);
    double prev = INFINITY;
    for (double R : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        const double e = oracle::energy(uwr::wiener_deconvolve(img, {2.0, R}));
        EXPECT_LT(e, prev) << R;
        prev = e;
    }
}

TEST(Wiener, DcGainIsOneOverOnePlusR) {
    const ImageBuf img(8, 8, 3, 0.6f);
    const ImageBuf out = uwr::wiener_deconvolve(img, {3.0, 0.5});
    for (float v : out.data()) EXPECT_NEAR(v, 0.6 / 1.5, 1e-5);
}

TEST(Wiener, StaysFiniteAtExtremes) {
    const ImageBuf img = oracle::random_image(32, 32, 3, 9);
    for (const FilterParams p : {FilterParams{10.0, 0.0}, FilterParams{10.0, 1e-12}, FilterParams{0.01, 1.0}}) {
        const ImageBuf out = uwr::frs_restore(img, p, ClaheConfig{});
        for (float v : out.data()) {
            ASSERT_TRUE(std::isfinite(v));
            ASSERT_GE(v, 0.0f);
            ASSERT_LE(v, 1.0f);
        }
    }
}

TEST(Fcc, StretchesPercentilesToUnitRange) {
    const ImageBuf img = oracle::random_image(100, 100, 3, 4, 0.3f, 0.5f);
    const ImageBuf out = uwr::fcc_normalize(img);
    for (int c = 0; c < 3; ++c) {
        const auto p = out.plane(c);
        EXPECT_EQ(*std::min_element(p.begin(), p.end()), 0.0f);
        EXPECT_EQ(*std::max_element(p.begin(), p.end()), 1.0f);
    }
    // order preserving
    for (std::size_t i = 1; i < img.plane_size(); ++i)
        if (img.plane(0)[i] > img.plane(0)[i - 1]) EXPECT_GE(out.plane(0)[i], out.plane(0)[i - 1]);
}

TEST(Fcc, IsNearlyIdempotent) {
    const ImageBuf once = uwr::fcc_normalize(oracle::random_image(80, 60, 3, 5, -0.4f, 1.7f));
    const ImageBuf twice = uwr::fcc_normalize(once);
    // the interpolated percentiles of a stretched image sit a hair inside [0,1]
    EXPECT_LT(oracle::max_abs_diff(once, twice), 2e-4);
}

TEST(Fcc, FlatChannelMapsToHalf) {
    ImageBuf img = oracle::random_image(20, 20, 3, 6);
    for (float& v : img.plane(1)) v = 0.9f;
    const ImageBuf out = uwr::fcc_normalize(img);
    for (float v : out.plane(1)) EXPECT_EQ(v, 0.5f);
    EXPECT_THROW(uwr::fcc_normalize(ImageBuf()), std::invalid_argument);
}

TEST(FrsRestore, OutputInUnitRange) {
    const ImageBuf img = uwr::apply_water(uwr::synthetic_scene(96, 64, 1), uwr::water_preset("greenish", 1));
    const ImageBuf out = uwr::frs_restore(img, {1.5, 1e-3}, ClaheConfig{});
    ASSERT_TRUE(out.same_shape(img));
    for (float v : out.data()) {
        EXPECT_GE(v, 0.0f);
        EXPECT_LE(v, 1.0f);
    }
}

TEST(FrsRestore, IdentityFilterWithoutClaheIsFcc) {
    const ImageBuf img = oracle::random_image(40, 30, 3, 8);
    const ImageBuf out = uwr::frs_restore(img, {0.0, 0.0}, no_clahe());
    EXPECT_LT(oracle::max_abs_diff(out, uwr::fcc_normalize(img)), 1e-4);
}

TEST(Restorer, MatchesFreeFunctionAcrossSizes) {
    uwr::Restorer r({1.2, 1e-3}, ClaheConfig{});
    for (auto [w, h] : {std::pair{64, 48}, {33, 17}, {64, 48}}) {
        const ImageBuf img = uwr::synthetic_scene(w, h, static_cast<std::uint64_t>(w));
        EXPECT_LT(oracle::max_abs_diff(r.restore(img), uwr::frs_restore(img, {1.2, 1e-3}, ClaheConfig{})),
                  1e-5);
        EXPECT_LT(oracle::max_abs_diff(r.deconvolve(img), uwr::wiener_deconvolve(img, {1.2, 1e-3})), 1e-5);
    }
    EXPECT_THROW(r.restore(ImageBuf()), std::invalid_argument);
    EXPECT_THROW(uwr::Restorer({-1.0, 0.1}, ClaheConfig{}), std::invalid_argument);
}

TEST(Restorer, HandlesGrayFrames) {
    uwr::Restorer r({1.0, 1e-2}, no_clahe());
    const ImageBuf g = oracle::random_image(16, 16, 1, 3);
    const ImageBuf out = r.restore(g);
    EXPECT_EQ(out.channels(), 1);
}
