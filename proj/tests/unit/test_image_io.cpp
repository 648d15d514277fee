#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uwr/image_io.hpp"

using uwr::ImageBuf;

TEST(ImageIo, PngRoundTripIsLossless8Bit) {
    const auto dir = oracle::temp_dir("io");
    const ImageBuf img = uwr::quantize_8bit(oracle::random_image(31, 17, 3, 10));
    uwr::save_image(dir / "a.png", img);
    const ImageBuf back = uwr::load_image(dir / "a.png");
    ASSERT_TRUE(back.same_shape(img));
    EXPECT_LT(oracle::max_abs_diff(img, back), 1e-6);
    std::filesystem::remove_all(dir);
}

TEST(ImageIo, ChannelOrderIsRgb) {
    const auto dir = oracle::temp_dir("io");
    ImageBuf img(2, 1, 3);
    img.at(0, 0, 0) = 1.0f; // pure red
    img.at(2, 1, 0) = 1.0f; // pure blue
    uwr::save_image(dir / "c.bmp", img);
    const ImageBuf back = uwr::load_image(dir / "c.bmp");
    EXPECT_EQ(back.at(0, 0, 0), 1.0f);
    EXPECT_EQ(back.at(2, 0, 0), 0.0f);
    EXPECT_EQ(back.at(2, 1, 0), 1.0f);
    std::filesystem::remove_all(dir);
}

TEST(ImageIo, GrayIsLoadedAsThreeEqualChannels) {
    const auto dir = oracle::temp_dir("io");
    ImageBuf g(4, 4, 1, 0.5f);
    uwr::save_image(dir / "g.png", g);
    const ImageBuf back = uwr::load_image(dir / "g.png");
    ASSERT_EQ(back.channels(), 3);
    for (float v : back.data()) EXPECT_NEAR(v, 128.0f / 255.0f, 1e-6);
    std::filesystem::remove_all(dir);
}

TEST(ImageIo, Errors) {
    const auto dir = oracle::temp_dir("io");
    EXPECT_THROW(uwr::load_image(dir / "missing.png"), uwr::IoError);
    std::ofstream(dir / "junk.png") << "not an image";
    EXPECT_THROW(uwr::load_image(dir / "junk.png"), uwr::IoError);
    EXPECT_THROW(uwr::save_image(dir / "nodir" / "x.png", ImageBuf(2, 2, 3)), uwr::IoError);
    EXPECT_THROW(uwr::save_image(dir / "x.unknown", ImageBuf(2, 2, 3)), uwr::IoError);
    std::filesystem::remove_all(dir);
}

TEST(ImageIo, Quantize8BitRoundsHalfUpAndClamps) {
    ImageBuf img(4, 1, 1);
    const float v[4] = {-0.2f, 0.5f, 1.7f, 0.3f / 255.0f};
    std::copy(v, v + 4, img.data().begin());
    const ImageBuf q = uwr::quantize_8bit(img);
    EXPECT_EQ(q.at(0, 0, 0), 0.0f);
    EXPECT_FLOAT_EQ(q.at(0, 1, 0), 128.0f / 255.0f);
    EXPECT_EQ(q.at(0, 2, 0), 1.0f);
    EXPECT_EQ(q.at(0, 3, 0), 0.0f);
}

TEST(ImageIo, RecognizesExtensions) {
    EXPECT_TRUE(uwr::is_image_file("a.png"));
    EXPECT_TRUE(uwr::is_image_file("dir/b.JPG"));
    EXPECT_TRUE(uwr::is_image_file("c.jpeg"));
    EXPECT_TRUE(uwr::is_image_file("d.bmp"));
    EXPECT_FALSE(uwr::is_image_file("e.txt"));
    EXPECT_FALSE(uwr::is_image_file("png"));
}
