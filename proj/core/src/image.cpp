#include "uwr/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgproc.hpp>

namespace uwr {

ImageBuf::ImageBuf(int width, int height, int channels, float fill) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("ImageBuf: width and height must be >= 1");
    if (channels != 1 && channels != 3)
        throw std::invalid_argument("ImageBuf: channels must be 1 or 3");
    width_ = width;
    height_ = height;
    channels_ = channels;
    data_.assign(plane_size() * static_cast<std::size_t>(channels), fill);
}

std::span<float> ImageBuf::plane(int c) {
    if (c < 0 || c >= channels_) throw std::out_of_range("ImageBuf::plane");
    return std::span<float>(data_).subspan(static_cast<std::size_t>(c) * plane_size(),
                                           plane_size());
}

std::span<const float> ImageBuf::plane(int c) const {
    if (c < 0 || c >= channels_) throw std::out_of_range("ImageBuf::plane");
    return std::span<const float>(data_).subspan(static_cast<std::size_t>(c) * plane_size(),
                                                 plane_size());
}

void require_rgb(const ImageBuf& img, const char* what) {
    if (img.empty() || img.channels() != 3)
        throw std::invalid_argument(std::string(what) + ": expected a 3-channel image");
}

ImageBuf to_gray(const ImageBuf& img) {
    require_rgb(img, "to_gray");
    ImageBuf out(img.width(), img.height(), 1);
    auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    auto y = out.plane(0);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = std::clamp(0.299f * r[i] + 0.587f * g[i] + 0.114f * b[i], 0.0f, 1.0f);
    return out;
}

namespace {

// sRGB primaries, D65 white. Rows are divided by the white point so that
// X/Xn, Y/Yn, Z/Zn come out directly.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double kXyzToRgb[3][3] = {
    {3.2404542, -1.5371385, -0.4985314},
    {-0.9692660, 1.8760108, 0.0415560},
    {0.0556434, -0.2040259, 1.0572252},
};

constexpr double kLabEps = 216.0 / 24389.0; // (6/29)^3
constexpr double kLabKappa = 24389.0 / 27.0;

double srgb_to_linear_exact(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}
double linear_to_srgb_exact(double v) {
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}
double lab_f_exact(double t) {
    return t > kLabEps ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

// Uniformly sampled table over [0,1] with linear interpolation.
class CurveTable {
public:
    static constexpr int kSize = 8192;

    template <class F>
    explicit CurveTable(F f) : values_(kSize + 2) {
        for (int i = 0; i <= kSize; ++i) values_[i] = static_cast<float>(f(double(i) / kSize));
        values_[kSize + 1] = values_[kSize];
    }

    float operator()(float v) const noexcept {
        float x = std::clamp(v, 0.0f, 1.0f) * kSize;
        int i = static_cast<int>(x);
        float frac = x - static_cast<float>(i);
        return values_[i] + frac * (values_[i + 1] - values_[i]);
    }

private:
    std::vector<float> values_;
};

struct ColorTables {
    CurveTable to_linear{srgb_to_linear_exact};
    CurveTable to_srgb{linear_to_srgb_exact};
    CurveTable lab_f{lab_f_exact};
    float y_row[3];
    float dx_rg, dx_bg; // (X/Xn - Y/Yn) coefficients on (r-g) and (b-g)
    float dz_rg, dz_bg;
    float inv[3][3]; // normalized XYZ -> linear RGB

    ColorTables() {
        double white[3];
        for (int r = 0; r < 3; ++r)
            white[r] = kRgbToXyz[r][0] + kRgbToXyz[r][1] + kRgbToXyz[r][2];
        double n[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) n[r][c] = kRgbToXyz[r][c] / white[r];
        for (int c = 0; c < 3; ++c) y_row[c] = static_cast<float>(n[1][c]);
        dx_rg = static_cast<float>(n[0][0] - n[1][0]);
        dx_bg = static_cast<float>(n[0][2] - n[1][2]);
        dz_rg = static_cast<float>(n[2][0] - n[1][0]);
        dz_bg = static_cast<float>(n[2][2] - n[1][2]);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) inv[r][c] = static_cast<float>(kXyzToRgb[r][c] * white[c]);
    }
};

const ColorTables& tables() {
    static const ColorTables t;
    return t;
}

float lab_f_inv(float t) {
    constexpr float delta = 6.0f / 29.0f;
    return t > delta ? t * t * t : 3.0f * delta * delta * (t - 4.0f / 29.0f);
}

} // namespace

LabImage rgb_to_lab(const ImageBuf& img) {
    require_rgb(img, "rgb_to_lab");
    const auto& t = tables();
    LabImage lab;
    lab.width = img.width();
    lab.height = img.height();
    const std::size_t n = img.plane_size();
    lab.L.resize(n);
    lab.a.resize(n);
    lab.b.resize(n);
    auto rp = img.plane(0), gp = img.plane(1), bp = img.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        const float r = t.to_linear(rp[i]);
        const float g = t.to_linear(gp[i]);
        const float b = t.to_linear(bp[i]);
        const float y = t.y_row[0] * r + t.y_row[1] * g + t.y_row[2] * b;
        const float x = y + (t.dx_rg * (r - g) + t.dx_bg * (b - g));
        const float z = y + (t.dz_rg * (r - g) + t.dz_bg * (b - g));
        const float fx = t.lab_f(x), fy = t.lab_f(y), fz = t.lab_f(z);
        lab.L[i] = std::clamp((116.0f * fy - 16.0f) / 100.0f, 0.0f, 1.0f);
        lab.a[i] = std::clamp(500.0f * (fx - fy) / 128.0f, -1.0f, 1.0f);
        lab.b[i] = std::clamp(200.0f * (fy - fz) / 128.0f, -1.0f, 1.0f);
    }
    return lab;
}

ImageBuf lab_to_rgb(const LabImage& lab) {
    const std::size_t n = static_cast<std::size_t>(lab.width) * static_cast<std::size_t>(lab.height);
    if (lab.L.size() != n || lab.a.size() != n || lab.b.size() != n)
        throw std::invalid_argument("lab_to_rgb: plane size mismatch");
    const auto& t = tables();
    ImageBuf out(lab.width, lab.height, 3);
    auto rp = out.plane(0), gp = out.plane(1), bp = out.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        const float fy = (100.0f * lab.L[i] + 16.0f) / 116.0f;
        const float fx = fy + 128.0f * lab.a[i] / 500.0f;
        const float fz = fy - 128.0f * lab.b[i] / 200.0f;
        const float x = lab_f_inv(fx), y = lab_f_inv(fy), z = lab_f_inv(fz);
        const float r = t.inv[0][0] * x + t.inv[0][1] * y + t.inv[0][2] * z;
        const float g = t.inv[1][0] * x + t.inv[1][1] * y + t.inv[1][2] * z;
        const float b = t.inv[2][0] * x + t.inv[2][1] * y + t.inv[2][2] * z;
        rp[i] = t.to_srgb(r);
        gp[i] = t.to_srgb(g);
        bp[i] = t.to_srgb(b);
    }
    return out;
}

Histogram histogram(const ImageBuf& img) {
    Histogram h;
    h.total = img.plane_size();
    h.bins.resize(static_cast<std::size_t>(img.channels()));
    for (int c = 0; c < img.channels(); ++c) {
        auto& bins = h.bins[static_cast<std::size_t>(c)];
        bins.fill(0);
        for (float v : img.plane(c)) ++bins[static_cast<std::size_t>(quantize_level(v))];
    }
    return h;
}

std::vector<ChannelStats> channel_stats(const ImageBuf& img) {
    std::vector<ChannelStats> stats(static_cast<std::size_t>(img.channels()));
    const double n = static_cast<double>(img.plane_size());
    for (int c = 0; c < img.channels(); ++c) {
        auto p = img.plane(c);
        double sum = 0.0;
        for (float v : p) sum += v;
        const double mean = sum / n;
        double sq = 0.0;
        for (float v : p) {
            const double d = v - mean;
            sq += d * d;
        }
        stats[static_cast<std::size_t>(c)] = {mean, std::sqrt(sq / n)};
    }
    return stats;
}

ImageBuf clamp01(ImageBuf img) {
    for (float& v : img.data()) v = std::clamp(v, 0.0f, 1.0f);
    return img;
}

ImageBuf resize(const ImageBuf& img, int width, int height) {
    if (width < 1 || height < 1) throw std::invalid_argument("resize: bad target size");
    if (width == img.width() && height == img.height()) return img;
    const bool shrink = width < img.width() || height < img.height();
    ImageBuf out(width, height, img.channels());
    for (int c = 0; c < img.channels(); ++c) {
        auto src_plane = img.plane(c);
        cv::Mat src(img.height(), img.width(), CV_32F, const_cast<float*>(src_plane.data()));
        cv::Mat dst(height, width, CV_32F, out.plane(c).data());
        cv::resize(src, dst, dst.size(), 0, 0, shrink ? cv::INTER_AREA : cv::INTER_LINEAR);
    }
    return out;
}

ImageBuf center_crop_square(const ImageBuf& img) {
    const int side = std::min(img.width(), img.height());
    const int x0 = (img.width() - side) / 2;
    const int y0 = (img.height() - side) / 2;
    ImageBuf out(side, side, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) out.at(c, x, y) = img.at(c, x0 + x, y0 + y);
    return out;
}

ImageBuf fit_longest_side(const ImageBuf& img, int max_side) {
    const int longest = std::max(img.width(), img.height());
    if (longest <= max_side) return img;
    const double s = static_cast<double>(max_side) / longest;
    const int w = std::max(1, static_cast<int>(std::lround(img.width() * s)));
    const int h = std::max(1, static_cast<int>(std::lround(img.height() * s)));
    return resize(img, w, h);
}

} // namespace uwr
