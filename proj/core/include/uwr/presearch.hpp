#pragma once

#include <complex>
#include <vector>

#include "uwr/fitness.hpp"
#include "uwr/pgafsa.hpp"

namespace uwr {

/// How the reference frame is reduced before fitness evaluation.
///  - crop: central window of at most max_side per axis, native pixel scale.
///  - downscale: whole frame resized so the longest side is max_side; k is
///    rescaled by factor^(-5/3) to stay in reference-frame units. A 4x
///    reduction divides the effective blur by ~10, which leaves little to
///    separate parameter choices.
enum class FitnessView { crop, downscale };

/// GHC fitness of Wiener + FCC output on a reduced copy of a reference frame.
/// Parameters are always in reference-frame units. Thread-safe: operator()
/// allocates its own workspace.
class FrsObjective {
public:
    FrsObjective(const ImageBuf& frame, GhcWeights weights, SearchBounds bounds,
                 int max_side = 128, FitnessView view = FitnessView::crop);

    double operator()(const Position& pos) const;
    GhcScore evaluate(const FilterParams& p) const;
    ImageBuf filtered(const FilterParams& p) const;

    const ImageBuf& thumbnail() const noexcept { return thumb_; }
    double k_scale() const noexcept { return k_scale_; }
    const SearchBounds& bounds() const noexcept { return bounds_; }

private:
    ImageBuf thumb_;
    GhcWeights weights_;
    SearchBounds bounds_;
    double k_scale_ = 1.0;
    std::vector<float> rho53_; // (u^2+v^2)^(5/6) over the half spectrum
    std::vector<std::vector<std::complex<float>>> spectra_;
};

/// PGAFSA over FrsObjective.
SearchResult search_frame(const ImageBuf& frame, const GhcWeights& weights, const SwarmConfig& cfg,
                          int max_side = 128, FitnessView view = FitnessView::crop);

/// Central window of at most width x height; returns a copy when smaller.
ImageBuf center_window(const ImageBuf& img, int width, int height);

} // namespace uwr
