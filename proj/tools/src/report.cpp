#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "uwr/image_io.hpp"

namespace uwr::cli {

Json report_header(const std::string& command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

Json to_json(const FilterParams& p) { return Json{{"k", p.k}, {"R", p.R}}; }

Json to_json(const GhcWeights& w) {
    return Json{{"w_psi", w.w_psi}, {"w_sigma", w.w_sigma}, {"w_mu", w.w_mu}};
}

Json to_json(const GhcScore& s) {
    return Json{{"psi", s.psi}, {"mu", s.mu}, {"sigma", s.sigma}, {"xi", s.xi}};
}

Json to_json(const SwarmConfig& c) {
    return Json{{"population", c.population},
                {"visual", c.visual},
                {"step", c.step},
                {"crowding", c.crowding},
                {"try_number", c.try_number},
                {"max_iter", c.max_iter},
                {"seed", c.seed},
                {"bounds",
                 {{"k_min", c.bounds.k_min},
                  {"k_max", c.bounds.k_max},
                  {"R_min", c.bounds.R_min},
                  {"R_max", c.bounds.R_max}}}};
}

Json to_json(const ClaheConfig& c) {
    return Json{{"enabled", c.enabled},
                {"tiles_x", c.tiles_x},
                {"tiles_y", c.tiles_y},
                {"clip_limit", c.clip_limit}};
}

Json to_json(const DegradeParams& p) {
    return Json{{"k", p.k},
                {"attenuation", p.attenuation},
                {"noise_sigma", p.noise_sigma},
                {"seed", p.seed}};
}

Json to_json(const UnderwaterReport& r) {
    return Json{{"U", r.U}, {"d_o", r.d_o}, {"d_a", r.d_a}, {"d_b", r.d_b}, {"a_l", r.a_l}};
}

Json to_json(const LayerSpec& l) {
    return Json{{"kernel", l.kernel}, {"stride", l.stride}, {"padding", l.padding}};
}

Json to_json(const RfBox& b) {
    return Json{{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min}, {"y_max", b.y_max},
                {"size", b.size}};
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

Table::Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

void Table::add(std::vector<std::string> row) {
    row.resize(rows_.front().size());
    rows_.push_back(std::move(row));
}

void Table::print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    const auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) os << "  ";
            os << (c == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[c])) << r[c];
        }
        os << std::right << '\n';
    };
    line(rows_.front());
    std::size_t total = 0;
    for (auto w : width) total += w;
    os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (std::size_t i = 1; i < rows_.size(); ++i) line(rows_[i]);
}

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace uwr::cli
