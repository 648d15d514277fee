#include "uwr/fitness.hpp"

#include <cmath>
#include <stdexcept>

namespace uwr {

void GhcWeights::validate() const {
    for (double w : {w_psi, w_sigma, w_mu})
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument("GhcWeights: weights must be finite and >= 0");
}

double haze_indicator(const ImageBuf& img) {
    if (img.empty() || img.width() < 3 || img.height() < 3)
        throw std::invalid_argument("haze_indicator: image must be at least 3x3");
    const ImageBuf gray = img.channels() == 1 ? img : to_gray(img);
    const int w = gray.width(), h = gray.height();
    auto p = gray.plane(0);
    const auto at = [&](int x, int y) {
        return static_cast<double>(p[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                                     static_cast<std::size_t>(x)]);
    };
    double sum = 0.0;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double e = 0.5 * (at(x + 1, y) - at(x - 1, y));
            const double ne = 0.5 * (at(x + 1, y - 1) - at(x - 1, y + 1));
            const double n = 0.5 * (at(x, y - 1) - at(x, y + 1));
            const double nw = 0.5 * (at(x - 1, y - 1) - at(x + 1, y + 1));
            sum += e * e + ne * ne + n * n + nw * nw;
        }
    }
    const double count = 4.0 * static_cast<double>(w - 2) * static_cast<double>(h - 2);
    return sum / count;
}

double balance_indicator(const ImageBuf& img) {
    require_rgb(img, "balance_indicator");
    const auto s = channel_stats(img);
    const double r = s[0].mean, g = s[1].mean, b = s[2].mean;
    return (std::abs(r - g) + std::abs(r - b) + std::abs(g - b)) / 3.0;
}

double contrast_indicator(const ImageBuf& img) {
    require_rgb(img, "contrast_indicator");
    const auto s = channel_stats(img);
    return (s[0].stddev + s[1].stddev + s[2].stddev) / 3.0;
}

double ghc_composite(double psi, double sigma, double mu, const GhcWeights& w) noexcept {
    return (w.w_psi * psi * w.w_sigma * sigma) / (1.0 + w.w_mu * mu);
}

GhcScore ghc(const ImageBuf& img, const GhcWeights& w) {
    w.validate();
    require_rgb(img, "ghc");
    GhcScore s;
    s.psi = haze_indicator(img);
    s.mu = balance_indicator(img);
    s.sigma = contrast_indicator(img);
    s.xi = ghc_composite(s.psi, s.sigma, s.mu, w);
    return s;
}

} // namespace uwr
