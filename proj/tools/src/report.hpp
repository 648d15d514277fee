#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "uwr/fitness.hpp"
#include "uwr/uwindex.hpp"

namespace uwr::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"schema_version": 1, "command": name}
Json report_header(const std::string& command);

Json to_json(const FilterParams& p);
Json to_json(const GhcWeights& w);
Json to_json(const GhcScore& s);
Json to_json(const SwarmConfig& c);
Json to_json(const ClaheConfig& c);
Json to_json(const DegradeParams& p);
Json to_json(const UnderwaterReport& r);
Json to_json(const LayerSpec& l);
Json to_json(const RfBox& b);

/// Writes pretty-printed JSON plus a trailing newline, creating parent
/// directories. Throws IoError on failure.
void write_json(const std::filesystem::path& path, const Json& j);

/// Fixed-width text table, columns right-aligned except the first.
class Table {
public:
    explicit Table(std::vector<std::string> header);
    void add(std::vector<std::string> row);
    void print(std::ostream& os) const;

private:
    std::vector<std::vector<std::string>> rows_;
};

/// Compact number formatting for tables (6 significant digits).
std::string fmt_num(double v);

} // namespace uwr::cli
