#pragma once

#include <span>
#include <vector>

namespace uwr::detail {

class RealFft2d;

double turbulence_gain(double u, double v, double k);

/// Gains over the r2c half spectrum ((width/2+1) x height, row-major).
std::vector<float> half_plane_otf(int width, int height, double k);
std::vector<float> half_plane_wiener(int width, int height, double k, double R);

/// out = IFFT(gain .* FFT(in_scale * in)).
void filter_plane(RealFft2d& fft, std::span<const float> gain, std::span<const float> in,
                  std::span<float> out, float in_scale);

} // namespace uwr::detail
