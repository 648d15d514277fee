#pragma once

#include <array>
#include <span>
#include <vector>

#include "uwr/image.hpp"

namespace uwr {

struct ClaheConfig {
    int tiles_x = 8;
    int tiles_y = 8;
    double clip_limit = 2.0; // multiple of the uniform bin height
    bool enabled = true;

    // Throws std::invalid_argument on tiles < 1, clip_limit <= 1 or non-finite.
    void validate() const;
};

/// Contrast limited adaptive histogram equalization on the L channel of the
/// Lab representation; a and b pass through untouched. Gray images are
/// equalized directly. Returns a copy when cfg.enabled is false.
ImageBuf clahe(const ImageBuf& img, const ClaheConfig& cfg);

/// Equalizes L only; a and b are returned bit-identical.
LabImage clahe_lab(LabImage lab, const ClaheConfig& cfg);

/// In-place CLAHE on a single [0,1] plane of the given size.
void clahe_plane(std::span<float> plane, int width, int height, const ClaheConfig& cfg);

/// Per-tile 256-entry mappings (row-major tiles), exposed for inspection.
std::vector<std::array<float, kHistogramBins>> clahe_tile_maps(std::span<const float> plane,
                                                               int width, int height,
                                                               const ClaheConfig& cfg);

} // namespace uwr
