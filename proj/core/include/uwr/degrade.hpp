#pragma once

#include <array>
#include <cstdint>

#include "uwr/image.hpp"

namespace uwr {

/// Forward underwater degeneration: per-channel attenuation, turbulence blur
/// and additive white Gaussian noise.
struct DegradeParams {
    double k = 0.0;
    std::array<double, 3> attenuation{1.0, 1.0, 1.0};
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// out = IFFT(H_k .* FFT(attenuation * img)) + noise, clamped to [0,1] last.
ImageBuf degrade(const ImageBuf& img, const DegradeParams& p);

} // namespace uwr
