#include "uwr/image_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace uwr {

namespace {

std::uint8_t to_byte(float v) {
    return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0f, 1.0f) * 255.0f + 0.5f));
}

} // namespace

bool is_image_file(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

ImageBuf load_image(const std::filesystem::path& path) {
    cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty()) throw IoError("cannot read image: " + path.string());
    ImageBuf out(bgr.cols, bgr.rows, 3);
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            out.at(0, x, y) = row[x][2] / 255.0f;
            out.at(1, x, y) = row[x][1] / 255.0f;
            out.at(2, x, y) = row[x][0] / 255.0f;
        }
    }
    return out;
}

void save_image(const std::filesystem::path& path, const ImageBuf& img) {
    if (img.empty()) throw IoError("refusing to write empty image: " + path.string());
    cv::Mat mat;
    if (img.channels() == 1) {
        mat.create(img.height(), img.width(), CV_8UC1);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) mat.at<std::uint8_t>(y, x) = to_byte(img.at(0, x, y));
    } else {
        mat.create(img.height(), img.width(), CV_8UC3);
        for (int y = 0; y < img.height(); ++y) {
            auto* row = mat.ptr<cv::Vec3b>(y);
            for (int x = 0; x < img.width(); ++x)
                row[x] = cv::Vec3b(to_byte(img.at(2, x, y)), to_byte(img.at(1, x, y)),
                                   to_byte(img.at(0, x, y)));
        }
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), mat);
    } catch (const cv::Exception& e) {
        throw IoError("cannot write image " + path.string() + ": " + e.what());
    }
    if (!ok) throw IoError("cannot write image: " + path.string());
}

ImageBuf quantize_8bit(const ImageBuf& img) {
    ImageBuf out = img;
    for (float& v : out.data()) v = to_byte(v) / 255.0f;
    return out;
}

} // namespace uwr
