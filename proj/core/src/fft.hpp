#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace uwr::detail {

/// Real 2-D FFT over an image plane, backed by FFTW single precision.
/// Owns aligned buffers and both plans. Not safe to share between threads;
/// construct one per worker.
class RealFft2d {
public:
    RealFft2d(int width, int height);
    ~RealFft2d();
    RealFft2d(const RealFft2d&) = delete;
    RealFft2d& operator=(const RealFft2d&) = delete;

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int spectrum_width() const noexcept { return width_ / 2 + 1; }

    std::span<float> spatial() noexcept { return {real_, n_real_}; }
    std::span<std::complex<float>> spectrum() noexcept { return {spec_, n_spec_}; }

    /// spatial() -> spectrum()
    void forward();
    /// spectrum() -> spatial(), scaled by 1/(width*height). Clobbers spectrum().
    void inverse();

private:
    int width_;
    int height_;
    std::size_t n_real_;
    std::size_t n_spec_;
    float* real_ = nullptr;
    std::complex<float>* spec_ = nullptr;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

} // namespace uwr::detail
