#include "uwr/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fft.hpp"
#include "spectral.hpp"

namespace uwr {

void DegradeParams::validate() const {
    if (!std::isfinite(k) || k < 0.0) throw std::invalid_argument("DegradeParams: k must be >= 0");
    for (double a : attenuation)
        if (!std::isfinite(a) || a <= 0.0 || a > 1.0)
            throw std::invalid_argument("DegradeParams: attenuation must lie in (0,1]");
    if (!std::isfinite(noise_sigma) || noise_sigma < 0.0)
        throw std::invalid_argument("DegradeParams: noise_sigma must be >= 0");
}

ImageBuf degrade(const ImageBuf& img, const DegradeParams& p) {
    require_rgb(img, "degrade");
    p.validate();
    detail::RealFft2d fft(img.width(), img.height());
    const auto otf = detail::half_plane_otf(img.width(), img.height(), p.k);
    ImageBuf out(img.width(), img.height(), 3);
    for (int c = 0; c < 3; ++c)
        detail::filter_plane(fft, otf, img.plane(c), out.plane(c),
                             static_cast<float>(p.attenuation[static_cast<std::size_t>(c)]));
    if (p.noise_sigma > 0.0) {
        std::mt19937_64 rng(p.seed);
        std::normal_distribution<double> noise(0.0, p.noise_sigma);
        for (float& v : out.data()) v += static_cast<float>(noise(rng));
    }
    return clamp01(std::move(out));
}

} // namespace uwr
