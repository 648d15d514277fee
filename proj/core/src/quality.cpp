#include "uwr/quality.hpp"

#include <cmath>

namespace uwr {

double gray_entropy(const ImageBuf& img) {
    const ImageBuf gray = img.channels() == 1 ? img : to_gray(img);
    const Histogram h = histogram(gray);
    const double n = static_cast<double>(h.total);
    double e = 0.0;
    for (auto count : h.bins[0]) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / n;
        e -= p * std::log2(p);
    }
    return e == 0.0 ? 0.0 : e; // no negative zero in reports
}

double mean_abs_laplacian(const ImageBuf& img) {
    if (img.width() < 3 || img.height() < 3) return 0.0;
    const ImageBuf gray = img.channels() == 1 ? img : to_gray(img);
    const int w = gray.width(), h = gray.height();
    auto p = gray.plane(0);
    const auto at = [&](int x, int y) {
        return static_cast<double>(p[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                                     static_cast<std::size_t>(x)]);
    };
    double sum = 0.0;
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x)
            sum += std::abs(4.0 * at(x, y) - at(x - 1, y) - at(x + 1, y) - at(x, y - 1) - at(x, y + 1));
    return sum / (static_cast<double>(w - 2) * static_cast<double>(h - 2));
}

} // namespace uwr
