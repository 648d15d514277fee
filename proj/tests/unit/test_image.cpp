#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uwr/image.hpp"

using uwr::ImageBuf;

TEST(ImageBuf, RejectsBadShape) {
    EXPECT_THROW(ImageBuf(0, 4, 3), std::invalid_argument);
    EXPECT_THROW(ImageBuf(4, -1, 3), std::invalid_argument);
    EXPECT_THROW(ImageBuf(4, 4, 2), std::invalid_argument);
    EXPECT_NO_THROW(ImageBuf(1, 1, 1));
}

TEST(ImageBuf, PlanesArePlanar) {
    ImageBuf img(3, 2, 3, 0.25f);
    EXPECT_EQ(img.plane_size(), 6u);
    EXPECT_EQ(img.data().size(), 18u);
    img.at(1, 2, 1) = 0.75f;
    EXPECT_FLOAT_EQ(img.plane(1)[5], 0.75f);
    EXPECT_FLOAT_EQ(img.data()[6 + 5], 0.75f);
    EXPECT_THROW(img.plane(3), std::out_of_range);
    EXPECT_THROW(img.plane(-1), std::out_of_range);
}

TEST(ImageBuf, DefaultIsEmpty) {
    ImageBuf img;
    EXPECT_TRUE(img.empty());
    EXPECT_EQ(img.plane_size(), 0u);
}

TEST(QuantizeLevel, RoundsHalfUpAndClamps) {
    EXPECT_EQ(uwr::quantize_level(0.0f), 0);
    EXPECT_EQ(uwr::quantize_level(1.0f), 255);
    EXPECT_EQ(uwr::quantize_level(0.5f), 128);
    EXPECT_EQ(uwr::quantize_level(-3.0f), 0);
    EXPECT_EQ(uwr::quantize_level(7.0f), 255);
    EXPECT_EQ(uwr::quantize_level(1.0f / 255.0f), 1);
}

TEST(ToGray, MatchesScalarLuma) {
    const ImageBuf img = oracle::random_image(17, 9, 3, 1);
    const ImageBuf g = uwr::to_gray(img);
    ASSERT_EQ(g.channels(), 1);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 17; ++x)
            EXPECT_NEAR(g.at(0, x, y), oracle::gray_at(img, x, y), 1e-6);
    EXPECT_THROW(uwr::to_gray(ImageBuf(2, 2, 1)), std::invalid_argument);
}

TEST(Lab, MatchesDoublePrecisionReference) {
    const ImageBuf img = oracle::random_image(64, 64, 3, 2);
    const uwr::LabImage lab = uwr::rgb_to_lab(img);
    double worst = 0;
    for (std::size_t i = 0; i < img.plane_size(); ++i) {
        const auto ref = oracle::lab(img.plane(0)[i], img.plane(1)[i], img.plane(2)[i]);
        worst = std::max({worst, std::abs(lab.L[i] - ref[0]), std::abs(lab.a[i] - ref[1]),
                          std::abs(lab.b[i] - ref[2])});
    }
    EXPECT_LT(worst, 1e-4);
}

TEST(Lab, KnownColors) {
    ImageBuf img(3, 1, 3);
    const float cols[3][3] = {{1, 1, 1}, {0, 0, 0}, {1, 0, 0}};
    for (int x = 0; x < 3; ++x)
        for (int c = 0; c < 3; ++c) img.at(c, x, 0) = cols[x][c];
    const auto lab = uwr::rgb_to_lab(img);
    EXPECT_NEAR(lab.L[0], 1.0, 1e-5);
    EXPECT_NEAR(lab.L[1], 0.0, 1e-5);
    // sRGB red: L* 53.24, a* 80.09, b* 67.20
    EXPECT_NEAR(lab.L[2] * 100, 53.24, 0.02);
    EXPECT_NEAR(lab.a[2] * 128, 80.09, 0.05);
    EXPECT_NEAR(lab.b[2] * 128, 67.20, 0.05);
}

TEST(Lab, GrayIsExactlyAchromatic) {
    ImageBuf img(256, 1, 3);
    for (int x = 0; x < 256; ++x)
        for (int c = 0; c < 3; ++c) img.at(c, x, 0) = x / 255.0f;
    const auto lab = uwr::rgb_to_lab(img);
    for (int x = 0; x < 256; ++x) {
        EXPECT_EQ(lab.a[static_cast<std::size_t>(x)], 0.0f) << x;
        EXPECT_EQ(lab.b[static_cast<std::size_t>(x)], 0.0f) << x;
    }
}

TEST(Lab, RoundTrip) {
    const ImageBuf img = oracle::random_image(40, 30, 3, 3);
    const ImageBuf back = uwr::lab_to_rgb(uwr::rgb_to_lab(img));
    EXPECT_LT(oracle::max_abs_diff(img, back), 2e-4);
}

TEST(Lab, RejectsMismatchedPlanes) {
    uwr::LabImage lab;
    lab.width = 2;
    lab.height = 2;
    lab.L.resize(4);
    lab.a.resize(4);
    lab.b.resize(3);
    EXPECT_THROW(uwr::lab_to_rgb(lab), std::invalid_argument);
    EXPECT_THROW(uwr::rgb_to_lab(ImageBuf(2, 2, 1)), std::invalid_argument);
}

TEST(Histogram, MatchesCountingOracle) {
    const ImageBuf img = oracle::random_image(33, 21, 3, 4, -0.1f, 1.1f);
    const auto h = uwr::histogram(img);
    ASSERT_EQ(h.bins.size(), 3u);
    EXPECT_EQ(h.total, img.plane_size());
    for (int c = 0; c < 3; ++c) {
        std::array<std::uint64_t, 256> ref{};
        for (float v : img.plane(c)) {
            const long q = static_cast<long>(std::floor(v * 255.0f + 0.5f));
            ++ref[static_cast<std::size_t>(std::clamp(q, 0L, 255L))];
        }
        EXPECT_EQ(h.bins[static_cast<std::size_t>(c)], ref);
    }
}

TEST(Histogram, ConstantHalfLandsInBin128) {
    const auto h = uwr::histogram(ImageBuf(10, 10, 1, 0.5f));
    EXPECT_EQ(h.bins[0][128], 100u);
}

TEST(ChannelStats, MatchesTwoPassOracle) {
    const ImageBuf img = oracle::random_image(50, 40, 3, 5);
    const auto s = uwr::channel_stats(img);
    for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(s[static_cast<std::size_t>(c)].mean, oracle::mean(img.plane(c)), 1e-12);
        EXPECT_NEAR(s[static_cast<std::size_t>(c)].stddev, oracle::stddev(img.plane(c)), 1e-12);
    }
}

TEST(Resize, PreservesConstantAndShape) {
    const ImageBuf img(40, 20, 3, 0.3f);
    const ImageBuf small = uwr::resize(img, 10, 5);
    EXPECT_EQ(small.width(), 10);
    EXPECT_EQ(small.height(), 5);
    for (float v : small.data()) EXPECT_NEAR(v, 0.3f, 1e-6);
    const ImageBuf big = uwr::resize(img, 80, 40);
    for (float v : big.data()) EXPECT_NEAR(v, 0.3f, 1e-6);
    EXPECT_THROW(uwr::resize(img, 0, 5), std::invalid_argument);
}

TEST(Resize, AreaAverageOf2x2Blocks) {
    ImageBuf img(4, 2, 1);
    const float v[8] = {0, 1, 0.2f, 0.4f, 1, 0, 0.6f, 0.8f};
    std::copy(v, v + 8, img.data().begin());
    const ImageBuf out = uwr::resize(img, 2, 1);
    EXPECT_NEAR(out.at(0, 0, 0), 0.5, 1e-6);
    EXPECT_NEAR(out.at(0, 1, 0), 0.5, 1e-6);
}

TEST(CenterCrop, TakesMiddleSquare) {
    ImageBuf img(6, 4, 1);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 6; ++x) img.at(0, x, y) = static_cast<float>(x + 10 * y);
    const ImageBuf sq = uwr::center_crop_square(img);
    ASSERT_EQ(sq.width(), 4);
    ASSERT_EQ(sq.height(), 4);
    EXPECT_EQ(sq.at(0, 0, 0), 1.0f);
    EXPECT_EQ(sq.at(0, 3, 3), 34.0f);
}

TEST(FitLongestSide, ShrinksOnlyWhenNeeded) {
    const ImageBuf img(400, 200, 3, 0.5f);
    const ImageBuf t = uwr::fit_longest_side(img, 128);
    EXPECT_EQ(t.width(), 128);
    EXPECT_EQ(t.height(), 64);
    EXPECT_EQ(uwr::fit_longest_side(img, 400).width(), 400);
}

TEST(Clamp01, ClampsEverything) {
    ImageBuf img(2, 1, 1);
    img.at(0, 0, 0) = -0.5f;
    img.at(0, 1, 0) = 1.5f;
    const ImageBuf c = uwr::clamp01(img);
    EXPECT_EQ(c.at(0, 0, 0), 0.0f);
    EXPECT_EQ(c.at(0, 1, 0), 1.0f);
}
