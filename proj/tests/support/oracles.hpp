#pragma once

// Slow, obviously-correct reference implementations used as test oracles.
// Nothing here calls into the library except for ImageBuf storage.

#include <algorithm>
#include <atomic>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <unistd.h>

#include "uwr/image.hpp"

namespace oracle {

inline uwr::ImageBuf random_image(int w, int h, int channels, std::uint64_t seed, float lo = 0.0f,
                                  float hi = 1.0f) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> u(lo, hi);
    uwr::ImageBuf img(w, h, channels);
    for (float& v : img.data()) v = u(rng);
    return img;
}

inline double luma(double r, double g, double b) {
    return std::clamp(0.299 * r + 0.587 * g + 0.114 * b, 0.0, 1.0);
}

// Textbook sRGB -> XYZ (D65) -> Lab in double precision, normalized like the
// library (L/100, a/128, b/128, clamped).
inline std::array<double, 3> lab(double r, double g, double b) {
    const auto lin = [](double v) {
        v = std::clamp(v, 0.0, 1.0);
        return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    const double R = lin(r), G = lin(g), B = lin(b);
    const double X = 0.4124564 * R + 0.3575761 * G + 0.1804375 * B;
    const double Y = 0.2126729 * R + 0.7151522 * G + 0.0721750 * B;
    const double Z = 0.0193339 * R + 0.1191920 * G + 0.9503041 * B;
    const double Xn = 0.4124564 + 0.3575761 + 0.1804375;
    const double Yn = 0.2126729 + 0.7151522 + 0.0721750;
    const double Zn = 0.0193339 + 0.1191920 + 0.9503041;
    const auto f = [](double t) {
        const double d = 6.0 / 29.0;
        return t > d * d * d ? std::cbrt(t) : t / (3 * d * d) + 4.0 / 29.0;
    };
    const double fx = f(X / Xn), fy = f(Y / Yn), fz = f(Z / Zn);
    return {std::clamp((116 * fy - 16) / 100, 0.0, 1.0), std::clamp(500 * (fx - fy) / 128, -1.0, 1.0),
            std::clamp(200 * (fy - fz) / 128, -1.0, 1.0)};
}

inline double gray_at(const uwr::ImageBuf& img, int x, int y) {
    if (img.channels() == 1) return img.at(0, x, y);
    return luma(img.at(0, x, y), img.at(1, x, y), img.at(2, x, y));
}

// Direct double loop over every patch.
inline uwr::ImageBuf dark_channel(const uwr::ImageBuf& img, int patch) {
    const int r = patch / 2;
    uwr::ImageBuf out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            float m = 1e30f;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const int xx = x + dx, yy = y + dy;
                    if (xx < 0 || yy < 0 || xx >= img.width() || yy >= img.height()) continue;
                    for (int c = 0; c < 3; ++c) m = std::min(m, img.at(c, xx, yy));
                }
            out.at(0, x, y) = m;
        }
    return out;
}

// Full stable sort of dark-channel values, average the top max(1, n/1000).
inline std::array<double, 3> background_light(const uwr::ImageBuf& img, int patch) {
    const uwr::ImageBuf dark = dark_channel(img, patch);
    const auto d = dark.plane(0);
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return d[a] > d[b]; });
    const std::size_t count = std::max<std::size_t>(1, d.size() / 1000);
    std::array<double, 3> bl{};
    for (std::size_t k = 0; k < count; ++k)
        for (int c = 0; c < 3; ++c) bl[static_cast<std::size_t>(c)] += img.plane(c)[idx[k]];
    for (double& v : bl) v /= static_cast<double>(count);
    return bl;
}

// Mean squared central difference / 2 in four directions, interior only.
inline double haze(const uwr::ImageBuf& img) {
    double sum = 0;
    long n = 0;
    const int dirs[4][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, -1}};
    for (int y = 1; y < img.height() - 1; ++y)
        for (int x = 1; x < img.width() - 1; ++x)
            for (const auto& d : dirs) {
                const double g = (gray_at(img, x + d[0], y + d[1]) - gray_at(img, x - d[0], y - d[1])) / 2;
                sum += g * g;
                ++n;
            }
    return sum / static_cast<double>(n);
}

inline double mean(std::span<const float> v) {
    double s = 0;
    for (float x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double stddev(std::span<const float> v) {
    const double m = mean(v);
    double s = 0;
    for (float x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

inline double mse(const uwr::ImageBuf& a, const uwr::ImageBuf& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const double d = static_cast<double>(a.data()[i]) - b.data()[i];
        s += d * d;
    }
    return s / static_cast<double>(a.data().size());
}

inline double psnr(const uwr::ImageBuf& ref, const uwr::ImageBuf& test) {
    return 10.0 * std::log10(1.0 / mse(ref, test));
}

inline double energy(const uwr::ImageBuf& img) {
    double s = 0;
    for (float v : img.data()) s += static_cast<double>(v) * v;
    return s;
}

inline double max_abs_diff(const uwr::ImageBuf& a, const uwr::ImageBuf& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(static_cast<double>(a.data()[i]) - b.data()[i]));
    return m;
}

inline uwr::ImageBuf flip_x(const uwr::ImageBuf& img) {
    uwr::ImageBuf out(img.width(), img.height(), img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) out.at(c, img.width() - 1 - x, y) = img.at(c, x, y);
    return out;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    auto p = std::filesystem::temp_directory_path() /
             ("uwr_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace oracle
