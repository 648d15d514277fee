#include "uwr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace uwr {

namespace {

// Bilinear value noise on a coarse lattice.
class ValueNoise {
public:
    ValueNoise(int cells, std::mt19937_64& rng) : cells_(cells), grid_((cells + 1) * (cells + 1)) {
        std::uniform_real_distribution<float> u(0.0f, 1.0f);
        for (float& v : grid_) v = u(rng);
    }

    float operator()(double fx, double fy) const {
        const double x = fx * cells_, y = fy * cells_;
        const int x0 = std::min(static_cast<int>(x), cells_ - 1);
        const int y0 = std::min(static_cast<int>(y), cells_ - 1);
        const double tx = smooth(x - x0), ty = smooth(y - y0);
        const auto g = [&](int i, int j) { return grid_[static_cast<std::size_t>(j * (cells_ + 1) + i)]; };
        const double top = g(x0, y0) * (1 - tx) + g(x0 + 1, y0) * tx;
        const double bot = g(x0, y0 + 1) * (1 - tx) + g(x0 + 1, y0 + 1) * tx;
        return static_cast<float>(top * (1 - ty) + bot * ty);
    }

private:
    static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
    int cells_;
    std::vector<float> grid_;
};

} // namespace

ImageBuf synthetic_scene(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ImageBuf img(width, height, 3);

    std::vector<ValueNoise> octaves;
    for (int cells : {4, 12, 40, 120}) octaves.emplace_back(cells, rng);
    const std::array<double, 4> amp{0.35, 0.25, 0.2, 0.2};

    const std::array<double, 3> base{0.45 + 0.1 * u(rng), 0.42 + 0.1 * u(rng), 0.38 + 0.1 * u(rng)};
    for (int y = 0; y < height; ++y) {
        const double fy = (y + 0.5) / height;
        for (int x = 0; x < width; ++x) {
            const double fx = (x + 0.5) / width;
            double tex = 0.0;
            for (std::size_t o = 0; o < octaves.size(); ++o) tex += amp[o] * octaves[o](fx, fy);
            const double shade = 0.75 + 0.35 * fy;
            for (int c = 0; c < 3; ++c)
                img.at(c, x, y) = static_cast<float>(base[static_cast<std::size_t>(c)] * shade * (0.5 + tex));
        }
    }

    // Colored blobs with hard edges.
    const int blobs = 14 + static_cast<int>(u(rng) * 8);
    for (int b = 0; b < blobs; ++b) {
        const double cx = u(rng) * width, cy = u(rng) * height;
        const double rx = (0.03 + 0.1 * u(rng)) * width, ry = (0.03 + 0.1 * u(rng)) * height;
        const double angle = u(rng) * 3.14159265358979;
        const std::array<double, 3> col{0.1 + 0.85 * u(rng), 0.1 + 0.85 * u(rng), 0.1 + 0.85 * u(rng)};
        const double ca = std::cos(angle), sa = std::sin(angle);
        const int x0 = std::max(0, static_cast<int>(cx - std::max(rx, ry)));
        const int x1 = std::min(width - 1, static_cast<int>(cx + std::max(rx, ry)));
        const int y0 = std::max(0, static_cast<int>(cy - std::max(rx, ry)));
        const int y1 = std::min(height - 1, static_cast<int>(cy + std::max(rx, ry)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - cx, dy = y - cy;
                const double px = (dx * ca + dy * sa) / rx, py = (-dx * sa + dy * ca) / ry;
                const double r2 = px * px + py * py;
                if (r2 > 1.0) continue;
                const double light = 0.8 + 0.3 * (1.0 - r2);
                const double grain = 0.85 + 0.3 * octaves[3](x / double(width), y / double(height));
                for (int c = 0; c < 3; ++c)
                    img.at(c, x, y) = static_cast<float>(col[static_cast<std::size_t>(c)] * light * grain);
            }
    }

    // A few thin bars for straight edges.
    const int bars = 4;
    for (int b = 0; b < bars; ++b) {
        const bool vertical = u(rng) < 0.5;
        const int pos = static_cast<int>(u(rng) * (vertical ? width : height));
        const int thick = 2 + static_cast<int>(u(rng) * 6);
        const float val = static_cast<float>(u(rng) < 0.5 ? 0.08 : 0.92);
        for (int t = 0; t < thick; ++t) {
            const int p = pos + t;
            if (vertical && p < width)
                for (int y = 0; y < height; ++y)
                    for (int c = 0; c < 3; ++c) img.at(c, p, y) = val;
            if (!vertical && p < height)
                for (int x = 0; x < width; ++x)
                    for (int c = 0; c < 3; ++c) img.at(c, x, p) = val;
        }
    }
    return clamp01(std::move(img));
}

ImageBuf block_scene(int width, int height, std::uint64_t seed, float lo, float hi) {
    std::mt19937_64 rng(seed);
    ImageBuf img(width, height, 3, lo);
    const int longest = std::clamp(std::min(width, height) / 2, 1, 24);
    std::uniform_int_distribution<int> px(0, width - 1), py(0, height - 1);
    std::uniform_int_distribution<int> extent(std::min(4, longest), longest), bit(0, 1);
    const long count = std::max(1L, static_cast<long>(width) * height / 80);
    for (long i = 0; i < count; ++i) {
        const int x0 = px(rng), y0 = py(rng);
        const int x1 = std::min(width, x0 + extent(rng)), y1 = std::min(height, y0 + extent(rng));
        float col[3];
        for (float& v : col) v = bit(rng) ? hi : lo;
        for (int c = 0; c < 3; ++c)
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) img.at(c, x, y) = col[c];
    }
    return img;
}

ImageBuf apply_water(const ImageBuf& img, const WaterLook& look) {
    if (!(look.transmission > 0.0) || look.transmission > 1.0)
        throw std::invalid_argument("apply_water: transmission must lie in (0,1]");
    DegradeParams noiseless = look.degrade;
    noiseless.noise_sigma = 0.0;
    ImageBuf out = degrade(img, noiseless);
    const float t = static_cast<float>(look.transmission);
    for (int c = 0; c < 3; ++c) {
        const float veil = static_cast<float>(look.veil[static_cast<std::size_t>(c)]) * (1.0f - t);
        for (float& v : out.plane(c)) v = t * v + veil;
    }
    if (look.degrade.noise_sigma > 0.0) {
        std::mt19937_64 rng(look.degrade.seed);
        std::normal_distribution<double> noise(0.0, look.degrade.noise_sigma);
        for (float& v : out.data()) v += static_cast<float>(noise(rng));
    }
    return clamp01(std::move(out));
}

WaterLook water_preset(const std::string& name, std::uint64_t seed) {
    WaterLook w;
    w.degrade.seed = seed;
    w.degrade.noise_sigma = 0.004;
    if (name == "greenish") {
        w.degrade.k = 1.5;
        w.degrade.attenuation = {0.35, 0.85, 0.6};
        w.veil = {0.15, 0.55, 0.4};
        w.transmission = 0.65;
    } else if (name == "bluish") {
        w.degrade.k = 1.2;
        w.degrade.attenuation = {0.3, 0.65, 0.9};
        w.veil = {0.1, 0.4, 0.65};
        w.transmission = 0.65;
    } else if (name == "hazy") {
        w.degrade.k = 3.0;
        w.degrade.attenuation = {0.4, 0.75, 0.65};
        w.veil = {0.3, 0.62, 0.55};
        w.transmission = 0.45;
    } else if (name == "turbid") {
        w.degrade.k = 2.5;
        w.degrade.attenuation = {0.45, 0.8, 0.55};
        w.veil = {0.3, 0.55, 0.35};
        w.transmission = 0.5;
    } else if (name == "deep") {
        w.degrade.k = 1.0;
        w.degrade.attenuation = {0.15, 0.45, 0.8};
        w.veil = {0.02, 0.2, 0.4};
        w.transmission = 0.7;
    } else {
        throw std::invalid_argument("water_preset: unknown preset '" + name + "'");
    }
    return w;
}

} // namespace uwr
