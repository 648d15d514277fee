#pragma once

#include "uwr/image.hpp"

namespace uwr {

struct GhcWeights {
    double w_psi = 1.0;
    double w_sigma = 1.0;
    double w_mu = 1.0;

    void validate() const; // all finite and >= 0
};

struct GhcScore {
    double psi = 0.0;   // haze: mean squared directional gradient of the gray map
    double mu = 0.0;    // balance: mean pairwise |difference| of channel means
    double sigma = 0.0; // contrast: mean per-channel standard deviation
    double xi = 0.0;    // (w_psi psi * w_sigma sigma) / (1 + w_mu mu)
};

/// Mean over interior pixels and the four directions E, NE, N, NW of the
/// squared central difference (f(p+d) - f(p-d)) / 2. Color input is converted
/// to gray first. Requires at least 3x3 pixels.
double haze_indicator(const ImageBuf& img);

double balance_indicator(const ImageBuf& img);

double contrast_indicator(const ImageBuf& img);

double ghc_composite(double psi, double sigma, double mu, const GhcWeights& w) noexcept;

GhcScore ghc(const ImageBuf& img, const GhcWeights& w);

} // namespace uwr
