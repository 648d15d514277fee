#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "uwr/enhance.hpp"
#include "uwr/image.hpp"

namespace uwr {

/// Searched restoration parameters: turbulence intensity k and the
/// noise-to-signal ratio R of the Wiener filter.
struct FilterParams {
    double k = 1.0;
    double R = 1e-3;

    void validate() const; // finite, k >= 0, R >= 0
    friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

/// Real optical transfer function, one gain per frequency bin in FFT order
/// (row y holds vertical frequency y/H, wrapped to [-0.5, 0.5)).
struct Otf {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
};

/// Normalized frequency of FFT bin index i along an axis of length n, in [-0.5, 0.5).
double fft_frequency(int i, int n) noexcept;

/// H(u,v) = exp(-k (u^2 + v^2)^(5/6)).
Otf build_turbulence_otf(int width, int height, double k);

/// Frequency-domain Wiener deconvolution with gain H / (H^2 + R), applied per
/// channel. The output is not clamped.
ImageBuf wiener_deconvolve(const ImageBuf& img, const FilterParams& p);

/// Filtering-based color correction: per-channel affine stretch sending the
/// 0.1th percentile to 0 and the 99.9th to 1, then clamping. Channels whose
/// percentile span is below kFccMinSpan map to 0.5.
ImageBuf fcc_normalize(const ImageBuf& img);
inline constexpr double kFccMinSpan = 1e-4;

/// Wiener deconvolution, FCC, then CLAHE (when enabled). Output in [0,1].
ImageBuf frs_restore(const ImageBuf& img, const FilterParams& p, const ClaheConfig& clahe_cfg);

namespace detail {
class RealFft2d;
}

/// Reusable restoration pipeline. Caches FFT plans and Wiener gains per frame
/// size, so a frame sequence pays for them once. One instance per thread.
class Restorer {
public:
    Restorer(FilterParams p, ClaheConfig clahe_cfg);
    ~Restorer();
    Restorer(Restorer&&) noexcept;
    Restorer& operator=(Restorer&&) noexcept;

    const FilterParams& params() const noexcept { return params_; }
    const ClaheConfig& clahe_config() const noexcept { return clahe_; }

    ImageBuf deconvolve(const ImageBuf& img);
    /// deconvolve + fcc_normalize; the image the fitness function scores.
    ImageBuf filter(const ImageBuf& img);
    ImageBuf restore(const ImageBuf& img);

private:
    struct SizeCache;
    SizeCache& cache_for(int width, int height);

    FilterParams params_;
    ClaheConfig clahe_;
    std::map<std::pair<int, int>, std::unique_ptr<SizeCache>> cache_;
};

} // namespace uwr
