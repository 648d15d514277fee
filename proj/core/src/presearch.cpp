#include "uwr/presearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "uwr/restore.hpp"

namespace uwr {

FrsObjective::FrsObjective(const ImageBuf& frame, GhcWeights weights, SearchBounds bounds,
                           int max_side, FitnessView view)
    : weights_(weights), bounds_(bounds) {
    require_rgb(frame, "FrsObjective");
    weights_.validate();
    bounds_.validate();
    if (max_side < 3) throw std::invalid_argument("FrsObjective: max_side must be >= 3");
    if (view == FitnessView::crop) {
        thumb_ = center_window(frame, max_side, max_side);
    } else {
        thumb_ = fit_longest_side(frame, max_side);
        const double downscale = static_cast<double>(std::max(frame.width(), frame.height())) /
                                 static_cast<double>(std::max(thumb_.width(), thumb_.height()));
        k_scale_ = std::pow(downscale, -5.0 / 3.0);
    }

    // The window is mirrored to twice its size before filtering, so the FFT
    // sees a continuous periodic signal instead of a jump at every border.
    const int w = 2 * thumb_.width(), h = 2 * thumb_.height(), sw = w / 2 + 1;
    rho53_.resize(static_cast<std::size_t>(sw) * static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) {
        const double v = fft_frequency(y, h);
        for (int x = 0; x < sw; ++x) {
            const double u = fft_frequency(x, w);
            rho53_[static_cast<std::size_t>(y) * static_cast<std::size_t>(sw) +
                   static_cast<std::size_t>(x)] =
                static_cast<float>(std::pow(u * u + v * v, 5.0 / 6.0));
        }
    }
    detail::RealFft2d fft(w, h);
    const int tw = thumb_.width(), th = thumb_.height();
    for (int c = 0; c < 3; ++c) {
        auto dst = fft.spatial();
        for (int y = 0; y < h; ++y) {
            const int sy = y < th ? y : h - 1 - y;
            for (int x = 0; x < w; ++x) {
                const int sx = x < tw ? x : w - 1 - x;
                dst[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                    static_cast<std::size_t>(x)] = thumb_.at(c, sx, sy);
            }
        }
        fft.forward();
        spectra_.emplace_back(fft.spectrum().begin(), fft.spectrum().end());
    }
}

ImageBuf FrsObjective::filtered(const FilterParams& p) const {
    p.validate();
    const double k = p.k * k_scale_;
    std::vector<float> gain(rho53_.size());
    for (std::size_t i = 0; i < gain.size(); ++i) {
        const double hgain = std::exp(-k * rho53_[i]);
        gain[i] = static_cast<float>(hgain / (hgain * hgain + p.R));
    }
    const int tw = thumb_.width(), th = thumb_.height(), w = 2 * tw;
    detail::RealFft2d fft(w, 2 * th);
    ImageBuf raw(tw, th, 3);
    for (int c = 0; c < 3; ++c) {
        const auto& spec = spectra_[static_cast<std::size_t>(c)];
        auto dst = fft.spectrum();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = spec[i] * gain[i];
        fft.inverse();
        auto src = fft.spatial();
        for (int y = 0; y < th; ++y)
            for (int x = 0; x < tw; ++x)
                raw.at(c, x, y) = src[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                                      static_cast<std::size_t>(x)];
    }
    return fcc_normalize(raw);
}

GhcScore FrsObjective::evaluate(const FilterParams& p) const { return ghc(filtered(p), weights_); }

double FrsObjective::operator()(const Position& pos) const {
    return evaluate(decode(pos, bounds_)).xi;
}

ImageBuf center_window(const ImageBuf& img, int width, int height) {
    if (width < 1 || height < 1) throw std::invalid_argument("center_window: bad size");
    const int w = std::min(width, img.width()), h = std::min(height, img.height());
    if (w == img.width() && h == img.height()) return img;
    const int x0 = (img.width() - w) / 2, y0 = (img.height() - h) / 2;
    ImageBuf out(w, h, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) out.at(c, x, y) = img.at(c, x0 + x, y0 + y);
    return out;
}

SearchResult search_frame(const ImageBuf& frame, const GhcWeights& weights, const SwarmConfig& cfg,
                          int max_side, FitnessView view) {
    const FrsObjective objective(frame, weights, cfg.bounds, max_side, view);
    return search([&objective](const Position& p) { return objective(p); }, cfg);
}

} // namespace uwr
