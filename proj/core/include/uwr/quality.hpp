#pragma once

#include "uwr/image.hpp"

namespace uwr {

/// Shannon entropy (bits) of the 256-bin gray histogram; in [0, 8].
double gray_entropy(const ImageBuf& img);

/// Mean absolute 4-neighbour Laplacian of the gray map over interior pixels,
/// in value units. Zero for images smaller than 3x3.
double mean_abs_laplacian(const ImageBuf& img);

} // namespace uwr
