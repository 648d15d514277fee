#include "fft.hpp"

#include <mutex>
#include <new>
#include <stdexcept>

#include <fftw3.h>

namespace uwr::detail {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

RealFft2d::RealFft2d(int width, int height)
    : width_(width), height_(height),
      n_real_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height)),
      n_spec_(static_cast<std::size_t>(width / 2 + 1) * static_cast<std::size_t>(height)) {
    if (width < 1 || height < 1) throw std::invalid_argument("RealFft2d: bad size");
    real_ = fftwf_alloc_real(n_real_);
    spec_ = reinterpret_cast<std::complex<float>*>(fftwf_alloc_complex(n_spec_));
    if (!real_ || !spec_) {
        fftwf_free(real_);
        fftwf_free(spec_);
        throw std::bad_alloc();
    }
    std::lock_guard lock(planner_mutex());
    auto* spec = reinterpret_cast<fftwf_complex*>(spec_);
    forward_plan_ = fftwf_plan_dft_r2c_2d(height, width, real_, spec, FFTW_ESTIMATE);
    inverse_plan_ = fftwf_plan_dft_c2r_2d(height, width, spec, real_, FFTW_ESTIMATE);
    if (!forward_plan_ || !inverse_plan_) {
        if (forward_plan_) fftwf_destroy_plan(static_cast<fftwf_plan>(forward_plan_));
        if (inverse_plan_) fftwf_destroy_plan(static_cast<fftwf_plan>(inverse_plan_));
        fftwf_free(real_);
        fftwf_free(spec_);
        throw std::runtime_error("RealFft2d: FFTW planning failed");
    }
}

RealFft2d::~RealFft2d() {
    {
        std::lock_guard lock(planner_mutex());
        fftwf_destroy_plan(static_cast<fftwf_plan>(forward_plan_));
        fftwf_destroy_plan(static_cast<fftwf_plan>(inverse_plan_));
    }
    fftwf_free(real_);
    fftwf_free(spec_);
}

void RealFft2d::forward() { fftwf_execute(static_cast<fftwf_plan>(forward_plan_)); }

void RealFft2d::inverse() {
    fftwf_execute(static_cast<fftwf_plan>(inverse_plan_));
    const float scale = 1.0f / static_cast<float>(n_real_);
    for (std::size_t i = 0; i < n_real_; ++i) real_[i] *= scale;
}

} // namespace uwr::detail
