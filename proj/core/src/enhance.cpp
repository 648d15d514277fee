#include "uwr/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace uwr {

void ClaheConfig::validate() const {
    if (tiles_x < 1 || tiles_y < 1) throw std::invalid_argument("ClaheConfig: tiles must be >= 1");
    if (!std::isfinite(clip_limit) || clip_limit <= 1.0)
        throw std::invalid_argument("ClaheConfig: clip_limit must be > 1");
}

namespace {

struct TileGrid {
    int nx, ny;
    std::vector<int> x0, y0; // tile starts, with a final sentinel at width/height

    TileGrid(int width, int height, const ClaheConfig& cfg)
        : nx(std::min(cfg.tiles_x, width)), ny(std::min(cfg.tiles_y, height)) {
        for (int i = 0; i <= nx; ++i) x0.push_back(static_cast<int>(std::int64_t(i) * width / nx));
        for (int j = 0; j <= ny; ++j) y0.push_back(static_cast<int>(std::int64_t(j) * height / ny));
    }
};

using TileMap = std::array<float, kHistogramBins>;

// Clip at clip_limit * (count/256), spread the excess evenly, then map each
// level through the normalized mid-bin CDF. A flat histogram yields the
// identity b -> b/255.
TileMap tile_map(std::span<const float> plane, int width, int x0, int x1, int y0, int y1,
                 double clip_limit) {
    std::array<double, kHistogramBins> hist{};
    for (int y = y0; y < y1; ++y) {
        const float* row = plane.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
        for (int x = x0; x < x1; ++x) hist[static_cast<std::size_t>(quantize_level(row[x]))] += 1.0;
    }
    const double count = static_cast<double>(x1 - x0) * static_cast<double>(y1 - y0);
    const double limit = clip_limit * count / kHistogramBins;
    double excess = 0.0;
    for (double& h : hist) {
        if (h > limit) {
            excess += h - limit;
            h = limit;
        }
    }
    const double share = excess / kHistogramBins;
    for (double& h : hist) h += share;

    std::array<double, kHistogramBins> mid{};
    double cum = 0.0;
    for (int b = 0; b < kHistogramBins; ++b) {
        mid[static_cast<std::size_t>(b)] = cum + 0.5 * hist[static_cast<std::size_t>(b)];
        cum += hist[static_cast<std::size_t>(b)];
    }
    const double lo = mid.front();
    const double span = mid.back() - lo;
    TileMap map{};
    for (int b = 0; b < kHistogramBins; ++b)
        map[static_cast<std::size_t>(b)] =
            static_cast<float>(std::clamp((mid[static_cast<std::size_t>(b)] - lo) / span, 0.0, 1.0));
    return map;
}

// For each coordinate along an axis: the two neighbouring tile indices and the
// weight of the second. Coordinates outside the outer tile centres clamp.
struct AxisWeights {
    std::vector<int> i0, i1;
    std::vector<float> w;

    AxisWeights(int extent, const std::vector<int>& starts, int tiles) : i0(extent), i1(extent), w(extent) {
        std::vector<double> centre(static_cast<std::size_t>(tiles));
        for (int t = 0; t < tiles; ++t)
            centre[static_cast<std::size_t>(t)] = 0.5 * (starts[t] + starts[t + 1] - 1);
        int t = 0;
        for (int p = 0; p < extent; ++p) {
            while (t + 1 < tiles && centre[static_cast<std::size_t>(t + 1)] <= p) ++t;
            if (p <= centre.front()) {
                i0[p] = i1[p] = 0;
                w[p] = 0.0f;
            } else if (t + 1 >= tiles) {
                i0[p] = i1[p] = tiles - 1;
                w[p] = 0.0f;
            } else {
                i0[p] = t;
                i1[p] = t + 1;
                const double c0 = centre[static_cast<std::size_t>(t)];
                const double c1 = centre[static_cast<std::size_t>(t + 1)];
                w[p] = static_cast<float>((p - c0) / (c1 - c0));
            }
        }
    }
};

} // namespace

std::vector<TileMap> clahe_tile_maps(std::span<const float> plane, int width, int height,
                                     const ClaheConfig& cfg) {
    cfg.validate();
    if (plane.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("clahe: plane size mismatch");
    TileGrid grid(width, height, cfg);
    std::vector<TileMap> maps;
    maps.reserve(static_cast<std::size_t>(grid.nx * grid.ny));
    for (int ty = 0; ty < grid.ny; ++ty)
        for (int tx = 0; tx < grid.nx; ++tx)
            maps.push_back(tile_map(plane, width, grid.x0[tx], grid.x0[tx + 1], grid.y0[ty],
                                    grid.y0[ty + 1], cfg.clip_limit));
    return maps;
}

void clahe_plane(std::span<float> plane, int width, int height, const ClaheConfig& cfg) {
    const auto maps = clahe_tile_maps(plane, width, height, cfg);
    TileGrid grid(width, height, cfg);
    const AxisWeights ax(width, grid.x0, grid.nx);
    const AxisWeights ay(height, grid.y0, grid.ny);
    for (int y = 0; y < height; ++y) {
        const TileMap* m0 = maps.data() + static_cast<std::ptrdiff_t>(ay.i0[y]) * grid.nx;
        const TileMap* m1 = maps.data() + static_cast<std::ptrdiff_t>(ay.i1[y]) * grid.nx;
        const float wy = ay.w[y];
        float* row = plane.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
        for (int x = 0; x < width; ++x) {
            const auto b = static_cast<std::size_t>(quantize_level(row[x]));
            const float wx = ax.w[x];
            const float top = (1.0f - wx) * m0[ax.i0[x]][b] + wx * m0[ax.i1[x]][b];
            const float bot = (1.0f - wx) * m1[ax.i0[x]][b] + wx * m1[ax.i1[x]][b];
            row[x] = std::clamp((1.0f - wy) * top + wy * bot, 0.0f, 1.0f);
        }
    }
}

ImageBuf clahe(const ImageBuf& img, const ClaheConfig& cfg) {
    if (!cfg.enabled) return img;
    cfg.validate();
    if (img.empty()) throw std::invalid_argument("clahe: empty image");
    if (img.channels() == 1) {
        ImageBuf out = img;
        clahe_plane(out.plane(0), out.width(), out.height(), cfg);
        return out;
    }
    return lab_to_rgb(clahe_lab(rgb_to_lab(img), cfg));
}

LabImage clahe_lab(LabImage lab, const ClaheConfig& cfg) {
    if (cfg.enabled) clahe_plane(lab.L, lab.width, lab.height, cfg);
    return lab;
}

} // namespace uwr
