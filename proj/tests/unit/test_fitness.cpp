#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uwr/degrade.hpp"
#include "uwr/fitness.hpp"
#include "uwr/quality.hpp"
#include "uwr/synth.hpp"

using uwr::GhcWeights;
using uwr::ImageBuf;

TEST(Haze, ConstantImageIsZero) {
    EXPECT_EQ(uwr::haze_indicator(ImageBuf(10, 7, 3, 0.4f)), 0.0);
    EXPECT_EQ(uwr::haze_indicator(ImageBuf(3, 3, 1, 1.0f)), 0.0);
}

TEST(Haze, MatchesBruteForceOracle) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const ImageBuf img = oracle::random_image(13 + static_cast<int>(seed), 9, 3, seed);
        EXPECT_NEAR(uwr::haze_indicator(img), oracle::haze(img), 1e-7);
    }
}

TEST(Haze, VerticalStepEdge) {
    // gray 0 | 1 step between columns 2 and 3 on a 6x5 image.
    ImageBuf g(6, 5, 1);
    for (int y = 0; y < 5; ++y)
        for (int x = 3; x < 6; ++x) g.at(0, x, y) = 1.0f;
    // interior columns 2 and 3 see |diff| = 1 in E, NE, NW (each squared /4),
    // 0 in N: 3 * 0.25 per pixel, 2 of 4 interior columns, 3 rows.
    const double expected = (2 * 3 * 3 * 0.25) / (4.0 * 4 * 3);
    EXPECT_NEAR(uwr::haze_indicator(g), expected, 1e-12);
}

TEST(Haze, ScalesQuadratically) {
    const ImageBuf img = oracle::random_image(20, 20, 1, 7, 0.0f, 0.5f);
    ImageBuf twice = img;
    for (float& v : twice.data()) v *= 2;
    EXPECT_NEAR(uwr::haze_indicator(twice), 4 * uwr::haze_indicator(img), 1e-9);
}

TEST(Haze, TooSmallThrows) {
    EXPECT_THROW(uwr::haze_indicator(ImageBuf(2, 10, 3)), std::invalid_argument);
    EXPECT_THROW(uwr::haze_indicator(ImageBuf(10, 2, 3)), std::invalid_argument);
    EXPECT_THROW(uwr::haze_indicator(ImageBuf()), std::invalid_argument);
}

TEST(Balance, MeanPairwiseChannelGap) {
    ImageBuf img(4, 4, 3);
    for (float& v : img.plane(0)) v = 0.2f;
    for (float& v : img.plane(1)) v = 0.5f;
    for (float& v : img.plane(2)) v = 0.9f;
    EXPECT_NEAR(uwr::balance_indicator(img), (0.3 + 0.7 + 0.4) / 3, 1e-6);
    EXPECT_EQ(uwr::balance_indicator(ImageBuf(4, 4, 3, 0.3f)), 0.0);
    EXPECT_THROW(uwr::balance_indicator(ImageBuf(4, 4, 1)), std::invalid_argument);
}

TEST(Contrast, MeanChannelStddev) {
    const ImageBuf img = oracle::random_image(30, 20, 3, 3);
    const double expected =
        (oracle::stddev(img.plane(0)) + oracle::stddev(img.plane(1)) + oracle::stddev(img.plane(2))) / 3;
    EXPECT_NEAR(uwr::contrast_indicator(img), expected, 1e-10);
}

TEST(Ghc, CompositeFormula) {
    GhcWeights w{2.0, 3.0, 0.5};
    EXPECT_DOUBLE_EQ(uwr::ghc_composite(0.1, 0.2, 0.4, w), (2 * 0.1 * 3 * 0.2) / (1 + 0.5 * 0.4));
    w.w_mu = 0;
    EXPECT_DOUBLE_EQ(uwr::ghc_composite(0.1, 0.2, 100.0, w), 2 * 0.1 * 3 * 0.2);
    const ImageBuf img = oracle::random_image(20, 20, 3, 4);
    const auto s = uwr::ghc(img, {});
    EXPECT_DOUBLE_EQ(s.xi, s.psi * s.sigma / (1 + s.mu));
}

TEST(Ghc, WeightValidation) {
    const ImageBuf img(5, 5, 3);
    EXPECT_THROW(uwr::ghc(img, {-1.0, 1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(uwr::ghc(img, {1.0, NAN, 1.0}), std::invalid_argument);
    EXPECT_THROW(uwr::ghc(ImageBuf(5, 5, 1), {}), std::invalid_argument);
}

TEST(Ghc, FallsWithBlurAndRisesWithCast) {
    const ImageBuf img = uwr::synthetic_scene(64, 64, 2);
    uwr::DegradeParams blur;
    blur.k = 2;
    EXPECT_LT(uwr::ghc(uwr::degrade(img, blur), {}).xi, uwr::ghc(img, {}).xi);
    uwr::DegradeParams cast;
    cast.attenuation = {0.3, 1.0, 0.8};
    EXPECT_GT(uwr::ghc(uwr::degrade(img, cast), {}).mu, uwr::ghc(img, {}).mu);
}

TEST(Quality, EntropyBounds) {
    EXPECT_EQ(uwr::gray_entropy(ImageBuf(8, 8, 3, 0.5f)), 0.0);
    ImageBuf ramp(256, 1, 1);
    for (int i = 0; i < 256; ++i) ramp.at(0, i, 0) = i / 255.0f;
    EXPECT_NEAR(uwr::gray_entropy(ramp), 8.0, 1e-9);
    ImageBuf half(10, 10, 1);
    for (int i = 0; i < 50; ++i) half.data()[static_cast<std::size_t>(i)] = 1.0f;
    EXPECT_NEAR(uwr::gray_entropy(half), 1.0, 1e-12);
}

TEST(Quality, LaplacianOracle) {
    const ImageBuf img = oracle::random_image(11, 8, 3, 5);
    double sum = 0;
    for (int y = 1; y < 7; ++y)
        for (int x = 1; x < 10; ++x)
            sum += std::abs(4 * oracle::gray_at(img, x, y) - oracle::gray_at(img, x - 1, y) -
                            oracle::gray_at(img, x + 1, y) - oracle::gray_at(img, x, y - 1) -
                            oracle::gray_at(img, x, y + 1));
    EXPECT_NEAR(uwr::mean_abs_laplacian(img), sum / (9 * 6), 1e-6);
    EXPECT_EQ(uwr::mean_abs_laplacian(ImageBuf(2, 2, 3, 0.5f)), 0.0);
    EXPECT_EQ(uwr::mean_abs_laplacian(ImageBuf(9, 9, 3, 0.5f)), 0.0);
}
