#include "uwr/uwindex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace uwr {

namespace {

UnderwaterReport finish(double sum_l, double sum_a, double sum_b, double sq_a, double sq_b,
                        double n) {
    UnderwaterReport r;
    const double mean_a = sum_a / n, mean_b = sum_b / n;
    r.d_o = std::sqrt(mean_a * mean_a + mean_b * mean_b);
    const double var_a = std::max(0.0, sq_a / n - mean_a * mean_a);
    const double var_b = std::max(0.0, sq_b / n - mean_b * mean_b);
    r.d_a = std::max(2.0 * std::sqrt(var_a), kDispersionFloor);
    r.d_b = std::max(2.0 * std::sqrt(var_b), kDispersionFloor);
    r.a_l = sum_l / n;
    r.U = std::sqrt(r.d_o) / (10.0 * std::max(r.a_l, kDispersionFloor) * r.d_a * r.d_b);
    return r;
}

} // namespace

UnderwaterReport underwater_index(const ImageBuf& img) {
    require_rgb(img, "underwater_index");
    return underwater_index(rgb_to_lab(img));
}

UnderwaterReport underwater_index(const LabImage& lab) {
    RfBox all{0, lab.width - 1, 0, lab.height - 1, 0};
    return underwater_index(lab, all);
}

UnderwaterReport underwater_index(const LabImage& lab, const RfBox& box) {
    if (box.x_min < 0 || box.y_min < 0 || box.x_max >= lab.width || box.y_max >= lab.height ||
        box.x_min > box.x_max || box.y_min > box.y_max)
        throw std::invalid_argument("underwater_index: box outside image");
    // Centre a and b on a sample before accumulating so the one-pass variance
    // does not cancel.
    const std::size_t ref = static_cast<std::size_t>(box.y_min) * static_cast<std::size_t>(lab.width) +
                            static_cast<std::size_t>(box.x_min);
    const double a0 = lab.a[ref], b0 = lab.b[ref];
    double sum_l = 0, sum_a = 0, sum_b = 0, sq_a = 0, sq_b = 0;
    for (int y = box.y_min; y <= box.y_max; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * static_cast<std::size_t>(lab.width);
        for (int x = box.x_min; x <= box.x_max; ++x) {
            const std::size_t i = row + static_cast<std::size_t>(x);
            const double a = lab.a[i] - a0, b = lab.b[i] - b0;
            sum_l += lab.L[i];
            sum_a += a;
            sum_b += b;
            sq_a += a * a;
            sq_b += b * b;
        }
    }
    const double n = static_cast<double>(box.x_max - box.x_min + 1) *
                     static_cast<double>(box.y_max - box.y_min + 1);
    // Shift the centroid back; the variance is shift-invariant.
    UnderwaterReport r = finish(sum_l, sum_a, sum_b, sq_a, sq_b, n);
    const double mean_a = sum_a / n + a0, mean_b = sum_b / n + b0;
    r.d_o = std::sqrt(mean_a * mean_a + mean_b * mean_b);
    r.U = std::sqrt(r.d_o) / (10.0 * std::max(r.a_l, kDispersionFloor) * r.d_a * r.d_b);
    return r;
}

ImageBuf dark_channel(const ImageBuf& img, int patch) {
    require_rgb(img, "dark_channel");
    if (patch < 1 || patch % 2 == 0)
        throw std::invalid_argument("dark_channel: patch side must be odd and >= 1");
    const int w = img.width(), h = img.height(), r = patch / 2;
    ImageBuf px(w, h, 1);
    auto p = px.plane(0);
    auto rp = img.plane(0), gp = img.plane(1), bp = img.plane(2);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::min({rp[i], gp[i], bp[i]});
    if (r == 0) return px;

    // Rectangular minimum is separable: rows, then columns.
    ImageBuf tmp(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            float m = px.at(0, x, y);
            for (int dx = std::max(0, x - r); dx <= std::min(w - 1, x + r); ++dx)
                m = std::min(m, px.at(0, dx, y));
            tmp.at(0, x, y) = m;
        }
    ImageBuf out(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            float m = tmp.at(0, x, y);
            for (int dy = std::max(0, y - r); dy <= std::min(h - 1, y + r); ++dy)
                m = std::min(m, tmp.at(0, x, dy));
            out.at(0, x, y) = m;
        }
    return out;
}

std::array<double, 3> background_light(const ImageBuf& img, int patch) {
    const ImageBuf dark = dark_channel(img, patch);
    auto d = dark.plane(0);
    const std::size_t n = d.size();
    const std::size_t count = std::max<std::size_t>(1, n / 1000);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const auto brighter = [&](std::size_t a, std::size_t b) {
        return d[a] != d[b] ? d[a] > d[b] : a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      brighter);
    std::array<double, 3> bl{};
    for (std::size_t k = 0; k < count; ++k)
        for (int c = 0; c < 3; ++c) bl[static_cast<std::size_t>(c)] += img.plane(c)[idx[k]];
    for (double& v : bl) v /= static_cast<double>(count);
    return bl;
}

std::vector<int> rf_chain(const LayerChain& layers) {
    if (layers.empty()) throw std::invalid_argument("rf_chain: empty chain");
    std::vector<int> sizes(layers.size());
    int size = 1;
    for (std::size_t i = layers.size(); i-- > 0;) {
        const auto& l = layers[i];
        if (l.kernel < 1 || l.stride < 1 || l.padding < 0)
            throw std::invalid_argument("rf_chain: invalid layer");
        size = (size - 1) * l.stride + l.kernel;
        sizes[i] = size;
    }
    return sizes;
}

int output_extent(const LayerChain& layers, int input) {
    int n = input;
    for (const auto& l : layers) {
        const int span = n + 2 * l.padding - l.kernel;
        if (span < 0) return 0;
        n = span / l.stride + 1;
    }
    return n;
}

RfBox rf_box_unclipped(const LayerChain& layers, int x, int y) {
    if (layers.empty()) throw std::invalid_argument("rf_box: empty chain");
    int x0 = x, x1 = x, y0 = y, y1 = y;
    for (std::size_t i = layers.size(); i-- > 0;) {
        const auto& l = layers[i];
        x0 = x0 * l.stride - l.padding;
        x1 = x1 * l.stride - l.padding + l.kernel - 1;
        y0 = y0 * l.stride - l.padding;
        y1 = y1 * l.stride - l.padding + l.kernel - 1;
    }
    return {x0, x1, y0, y1, x1 - x0 + 1};
}

RfBox rf_box(const LayerChain& layers, int x, int y, int input_width, int input_height) {
    const int cols = output_extent(layers, input_width);
    const int rows = output_extent(layers, input_height);
    if (x < 0 || y < 0 || x >= cols || y >= rows)
        throw std::invalid_argument("rf_box: cell outside the output grid");
    RfBox b = rf_box_unclipped(layers, x, y);
    b.x_min = std::clamp(b.x_min, 0, input_width - 1);
    b.x_max = std::clamp(b.x_max, 0, input_width - 1);
    b.y_min = std::clamp(b.y_min, 0, input_height - 1);
    b.y_max = std::clamp(b.y_max, 0, input_height - 1);
    return b;
}

PatchGrid patch_underwater_map(const ImageBuf& img, const LayerChain& chain) {
    require_rgb(img, "patch_underwater_map");
    PatchGrid grid;
    grid.cols = output_extent(chain, img.width());
    grid.rows = output_extent(chain, img.height());
    if (grid.cols < 1 || grid.rows < 1)
        throw std::invalid_argument("patch_underwater_map: image too small for the chain");
    const LabImage lab = rgb_to_lab(img);
    for (int y = 0; y < grid.rows; ++y)
        for (int x = 0; x < grid.cols; ++x) {
            const RfBox b = rf_box(chain, x, y, img.width(), img.height());
            grid.boxes.push_back(b);
            grid.values.push_back(underwater_index(lab, b).U);
        }
    return grid;
}

namespace chains {

LayerChain stem() { return {{4, 2, 1}}; }

LayerChain adversarial_branch() {
    return {{4, 2, 1}, {4, 2, 1}, {4, 2, 1}, {4, 1, 1}, {4, 1, 1}};
}

LayerChain underwater_branch() {
    return {{4, 2, 1}, {4, 2, 1}, {4, 2, 1}, {4, 2, 1}, {4, 2, 1}, {4, 1, 1}, {4, 1, 1}};
}

LayerChain with_stem(const LayerChain& branch) {
    LayerChain out = stem();
    out.insert(out.end(), branch.begin(), branch.end());
    return out;
}

LayerChain parse(const std::string& spec) {
    if (spec == "ab") return adversarial_branch();
    if (spec == "ub") return underwater_branch();
    if (spec == "stem+ab") return with_stem(adversarial_branch());
    if (spec == "stem+ub") return with_stem(underwater_branch());
    LayerChain out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        LayerSpec l;
        char c1 = 0, c2 = 0;
        std::stringstream is(item);
        if (!(is >> l.kernel >> c1 >> l.stride >> c2 >> l.padding) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("chain spec: expected k:s:p, got '" + item + "'");
        is >> std::ws;
        if (!is.eof()) throw std::invalid_argument("chain spec: trailing characters in '" + item + "'");
        if (l.kernel < 1 || l.stride < 1 || l.padding < 0)
            throw std::invalid_argument("chain spec: invalid layer '" + item + "'");
        out.push_back(l);
    }
    if (out.empty()) throw std::invalid_argument("chain spec: empty");
    return out;
}

} // namespace chains

} // namespace uwr
