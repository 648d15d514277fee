#include "uwr/restore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "spectral.hpp"

namespace uwr {

void FilterParams::validate() const {
    if (!std::isfinite(k) || !std::isfinite(R))
        throw std::invalid_argument("FilterParams: k and R must be finite");
    if (k < 0.0) throw std::invalid_argument("FilterParams: k must be >= 0");
    if (R < 0.0) throw std::invalid_argument("FilterParams: R must be >= 0");
}

double fft_frequency(int i, int n) noexcept {
    const int shifted = i < (n + 1) / 2 ? i : i - n;
    return static_cast<double>(shifted) / static_cast<double>(n);
}

namespace detail {

double turbulence_gain(double u, double v, double k) {
    return std::exp(-k * std::pow(u * u + v * v, 5.0 / 6.0));
}

namespace {

template <class GainFn>
std::vector<float> half_plane(int width, int height, double k, GainFn fn) {
    const int sw = width / 2 + 1;
    std::vector<float> gain(static_cast<std::size_t>(sw) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        const double v = fft_frequency(y, height);
        for (int x = 0; x < sw; ++x)
            gain[static_cast<std::size_t>(y) * static_cast<std::size_t>(sw) +
                 static_cast<std::size_t>(x)] =
                static_cast<float>(fn(turbulence_gain(fft_frequency(x, width), v, k)));
    }
    return gain;
}

} // namespace

std::vector<float> half_plane_otf(int width, int height, double k) {
    return half_plane(width, height, k, [](double h) { return h; });
}

std::vector<float> half_plane_wiener(int width, int height, double k, double R) {
    // H is real, so conj(H) = H.
    return half_plane(width, height, k, [R](double h) { return h / (h * h + R); });
}

void filter_plane(RealFft2d& fft, std::span<const float> gain, std::span<const float> in,
                  std::span<float> out, float in_scale) {
    auto spatial = fft.spatial();
    if (in_scale == 1.0f)
        std::copy(in.begin(), in.end(), spatial.begin());
    else
        std::transform(in.begin(), in.end(), spatial.begin(),
                       [in_scale](float v) { return v * in_scale; });
    fft.forward();
    auto spec = fft.spectrum();
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= gain[i];
    fft.inverse();
    std::copy(spatial.begin(), spatial.end(), out.begin());
}

} // namespace detail

Otf build_turbulence_otf(int width, int height, double k) {
    if (width < 1 || height < 1) throw std::invalid_argument("build_turbulence_otf: bad size");
    if (!std::isfinite(k) || k < 0.0)
        throw std::invalid_argument("build_turbulence_otf: k must be finite and >= 0");
    Otf otf;
    otf.width = width;
    otf.height = height;
    otf.values.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        const double v = fft_frequency(y, height);
        for (int x = 0; x < width; ++x)
            otf.values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(x)] =
                detail::turbulence_gain(fft_frequency(x, width), v, k);
    }
    return otf;
}

namespace {

ImageBuf apply_gain(const ImageBuf& img, std::span<const float> gain, detail::RealFft2d& fft) {
    ImageBuf out(img.width(), img.height(), img.channels());
    for (int c = 0; c < img.channels(); ++c)
        detail::filter_plane(fft, gain, img.plane(c), out.plane(c), 1.0f);
    return out;
}

// Linear-interpolated percentile over the partially ordered buffer; `from`
// marks a prefix already known to hold smaller elements.
double percentile(std::vector<float>& v, double q, std::size_t from = 0) {
    const std::size_t n = v.size();
    const double pos = q * static_cast<double>(n - 1);
    const auto f = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(f);
    std::nth_element(v.begin() + static_cast<std::ptrdiff_t>(from),
                     v.begin() + static_cast<std::ptrdiff_t>(f), v.end());
    const double lo = v[f];
    if (frac <= 0.0 || f + 1 >= n) return lo;
    const double hi = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(f + 1), v.end());
    return lo + frac * (hi - lo);
}

void fcc_plane(std::span<const float> in, std::span<float> out, std::vector<float>& scratch) {
    scratch.assign(in.begin(), in.end());
    const double lo_q = 0.001, hi_q = 0.999;
    const double lo = percentile(scratch, lo_q);
    const auto lo_rank = static_cast<std::size_t>(std::floor(lo_q * double(scratch.size() - 1)));
    const double hi = percentile(scratch, hi_q, lo_rank + 1 < scratch.size() ? lo_rank + 1 : 0);
    if (!(hi - lo >= kFccMinSpan)) {
        std::fill(out.begin(), out.end(), 0.5f);
        return;
    }
    const double scale = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = static_cast<float>(std::clamp((in[i] - lo) * scale, 0.0, 1.0));
}

} // namespace

ImageBuf wiener_deconvolve(const ImageBuf& img, const FilterParams& p) {
    p.validate();
    if (img.empty()) throw std::invalid_argument("wiener_deconvolve: empty image");
    detail::RealFft2d fft(img.width(), img.height());
    const auto gain = detail::half_plane_wiener(img.width(), img.height(), p.k, p.R);
    return apply_gain(img, gain, fft);
}

ImageBuf fcc_normalize(const ImageBuf& img) {
    if (img.empty()) throw std::invalid_argument("fcc_normalize: empty image");
    ImageBuf out(img.width(), img.height(), img.channels());
    std::vector<float> scratch;
    for (int c = 0; c < img.channels(); ++c) fcc_plane(img.plane(c), out.plane(c), scratch);
    return out;
}

ImageBuf frs_restore(const ImageBuf& img, const FilterParams& p, const ClaheConfig& clahe_cfg) {
    Restorer r(p, clahe_cfg);
    return r.restore(img);
}

struct Restorer::SizeCache {
    SizeCache(int w, int h, const FilterParams& p)
        : fft(w, h), gain(detail::half_plane_wiener(w, h, p.k, p.R)) {}
    detail::RealFft2d fft;
    std::vector<float> gain;
    std::vector<float> scratch;
};

Restorer::Restorer(FilterParams p, ClaheConfig clahe_cfg) : params_(p), clahe_(clahe_cfg) {
    params_.validate();
    if (clahe_.enabled) clahe_.validate();
}

Restorer::~Restorer() = default;
Restorer::Restorer(Restorer&&) noexcept = default;
Restorer& Restorer::operator=(Restorer&&) noexcept = default;

Restorer::SizeCache& Restorer::cache_for(int width, int height) {
    auto& slot = cache_[{width, height}];
    if (!slot) slot = std::make_unique<SizeCache>(width, height, params_);
    return *slot;
}

ImageBuf Restorer::deconvolve(const ImageBuf& img) {
    if (img.empty()) throw std::invalid_argument("Restorer: empty image");
    auto& cache = cache_for(img.width(), img.height());
    return apply_gain(img, cache.gain, cache.fft);
}

ImageBuf Restorer::filter(const ImageBuf& img) {
    if (img.empty()) throw std::invalid_argument("Restorer: empty image");
    auto& cache = cache_for(img.width(), img.height());
    ImageBuf out(img.width(), img.height(), img.channels());
    std::vector<float> raw(img.plane_size());
    for (int c = 0; c < img.channels(); ++c) {
        detail::filter_plane(cache.fft, cache.gain, img.plane(c), raw, 1.0f);
        fcc_plane(raw, out.plane(c), cache.scratch);
    }
    return out;
}

ImageBuf Restorer::restore(const ImageBuf& img) {
    ImageBuf filtered = filter(img);
    if (!clahe_.enabled) return filtered;
    return clahe(filtered, clahe_);
}

} // namespace uwr
