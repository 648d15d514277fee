#pragma once

#include <array>
#include <string>
#include <vector>

#include "uwr/image.hpp"

namespace uwr {

/// Floor applied to the a/b dispersions and to mean L.
inline constexpr double kDispersionFloor = 1e-3;

/// Underwater index and its parts, all in normalized Lab units.
struct UnderwaterReport {
    double d_o = 0.0; // distance of the (mean a, mean b) centroid from the origin
    double d_a = kDispersionFloor; // 2 * std(a), floored
    double d_b = kDispersionFloor; // 2 * std(b), floored
    double a_l = 0.0;              // mean L
    double U = 0.0;                // sqrt(d_o) / (10 * a_l * d_a * d_b)
};

struct RfBox;

UnderwaterReport underwater_index(const ImageBuf& img);
UnderwaterReport underwater_index(const LabImage& lab);
/// Index over the pixels inside box (inclusive, already clipped).
UnderwaterReport underwater_index(const LabImage& lab, const RfBox& box);

/// Per-pixel minimum over channels, then over the patch x patch neighbourhood
/// (restricted to the image at borders). patch must be odd.
ImageBuf dark_channel(const ImageBuf& img, int patch);

/// Mean color of the pixels whose dark-channel value ranks in the top 0.1%
/// (at least one pixel; ties broken by raster order).
std::array<double, 3> background_light(const ImageBuf& img, int patch);

struct LayerSpec {
    int kernel = 1;
    int stride = 1;
    int padding = 0;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

using LayerChain = std::vector<LayerSpec>; // input layer first

struct RfBox {
    int x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    int size = 0; // side length before clipping
};

/// Receptive-field sizes folded from a single output cell back through the
/// chain: result[i] is the RF size in the input of layer i, so result[0] is
/// the RF in the chain input.
std::vector<int> rf_chain(const LayerChain& layers);

/// Output length of a chain for an input of the given length.
int output_extent(const LayerChain& layers, int input);

/// Input-space box of output cell (x, y), clipped to the input extent.
/// Throws std::invalid_argument for cells outside the output grid.
RfBox rf_box(const LayerChain& layers, int x, int y, int input_width, int input_height);

/// Unclipped variant; coordinates may fall outside the image.
RfBox rf_box_unclipped(const LayerChain& layers, int x, int y);

struct PatchGrid {
    int cols = 0;
    int rows = 0;
    std::vector<RfBox> boxes;     // row-major
    std::vector<double> values;   // U per cell, row-major

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(cols) +
                      static_cast<std::size_t>(x)];
    }
};

/// Underwater index of every output cell's receptive field.
PatchGrid patch_underwater_map(const ImageBuf& img, const LayerChain& chain);

/// Convolution stacks of the multi-branch discriminator.
namespace chains {
LayerChain stem();
LayerChain adversarial_branch();
LayerChain underwater_branch();
LayerChain with_stem(const LayerChain& branch);
/// "ab", "ub", "stem+ab", "stem+ub", or a comma list of k:s:p triples.
LayerChain parse(const std::string& spec);
} // namespace chains

} // namespace uwr
