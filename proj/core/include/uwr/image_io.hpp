#pragma once

#include <filesystem>
#include <stdexcept>

#include "uwr/image.hpp"

namespace uwr {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a PNG/JPEG/BMP file as 8-bit RGB and normalizes to [0,1].
ImageBuf load_image(const std::filesystem::path& path);

/// Writes 8-bit PNG/JPEG/BMP (chosen by extension). Values are clamped and
/// rounded half-up. Gray images are written as single-channel files.
void save_image(const std::filesystem::path& path, const ImageBuf& img);

/// Round-trips an image through 8-bit quantization, as save+load would.
ImageBuf quantize_8bit(const ImageBuf& img);

bool is_image_file(const std::filesystem::path& path);

} // namespace uwr
