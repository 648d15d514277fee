#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uwr {

/// Planar floating-point image. Values are nominally in [0,1]; operations that
/// clamp say so. Channels are stored one full plane after another.
class ImageBuf {
public:
    ImageBuf() = default;
    ImageBuf(int width, int height, int channels, float fill = 0.0f);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t plane_size() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    bool empty() const noexcept { return data_.empty(); }

    std::span<float> plane(int c);
    std::span<const float> plane(int c) const;

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    float& at(int c, int x, int y) {
        return data_[static_cast<std::size_t>(c) * plane_size() +
                     static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(x)];
    }
    float at(int c, int x, int y) const {
        return data_[static_cast<std::size_t>(c) * plane_size() +
                     static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(x)];
    }

    bool same_shape(const ImageBuf& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }

    friend bool operator==(const ImageBuf&, const ImageBuf&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

/// CIE L*a*b* (D65) with L scaled to [0,1] and a, b scaled to [-1,1].
struct LabImage {
    int width = 0;
    int height = 0;
    std::vector<float> L;
    std::vector<float> a;
    std::vector<float> b;
};

inline constexpr int kHistogramBins = 256;

struct Histogram {
    std::vector<std::array<std::uint64_t, kHistogramBins>> bins; // one per channel
    std::uint64_t total = 0;                                     // pixels per channel
};

struct ChannelStats {
    double mean = 0.0;
    double stddev = 0.0; // population
};

/// Bin index used by every 256-level quantization in the library.
inline int quantize_level(float v) noexcept {
    int q = static_cast<int>(v * 255.0f + 0.5f);
    return q < 0 ? 0 : (q > 255 ? 255 : q);
}

// Throws std::invalid_argument unless img has 3 channels.
void require_rgb(const ImageBuf& img, const char* what);

/// BT.601 luma.
ImageBuf to_gray(const ImageBuf& img);

/// sRGB (input clamped to [0,1]) to normalized Lab. Uses interpolated lookup
/// tables for the transfer curves; absolute error is below 1e-5 per channel.
/// Achromatic pixels (r == g == b) produce a == b == 0 exactly.
LabImage rgb_to_lab(const ImageBuf& img);

/// Inverse of rgb_to_lab; output clamped to [0,1].
ImageBuf lab_to_rgb(const LabImage& lab);

Histogram histogram(const ImageBuf& img);

std::vector<ChannelStats> channel_stats(const ImageBuf& img);

ImageBuf clamp01(ImageBuf img);

/// Area-averaging resize (upsampling falls back to bilinear).
ImageBuf resize(const ImageBuf& img, int width, int height);

/// Largest centered square crop.
ImageBuf center_crop_square(const ImageBuf& img);

/// Downscale so the longest side is at most max_side; returns a copy otherwise.
ImageBuf fit_longest_side(const ImageBuf& img, int max_side);

} // namespace uwr
