#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "uwr/degrade.hpp"
#include "uwr/image.hpp"

namespace uwr {

/// Procedural in-air scene: shaded background, multi-octave value-noise
/// texture, and randomly placed colored blobs and bars. Deterministic in seed.
ImageBuf synthetic_scene(int width, int height, std::uint64_t seed);

/// Overlapping axis-aligned rectangles on a flat background. Every channel
/// takes one of two levels (lo, hi), so the scene is piecewise constant with
/// hard edges. Rectangle sides run 4 to 24 pixels at any frame size, about one
/// rectangle per 80 pixels of area.
ImageBuf block_scene(int width, int height, std::uint64_t seed, float lo = 0.2f,
                     float hi = 0.8f);

/// Underwater look applied on top of the forward degeneration model: the
/// degraded signal is mixed with a veiling background light,
/// out = transmission * degrade(img) + (1 - transmission) * veil.
struct WaterLook {
    DegradeParams degrade;
    std::array<double, 3> veil{0.1, 0.5, 0.5};
    double transmission = 0.7;
};

ImageBuf apply_water(const ImageBuf& img, const WaterLook& look);

/// Named presets: "greenish", "bluish", "hazy", "turbid", "deep".
WaterLook water_preset(const std::string& name, std::uint64_t seed);

} // namespace uwr
