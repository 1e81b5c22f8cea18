#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cavelim::bench {

using Cell = std::variant<double, long long, std::string>;

/// 17 significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double v);

/**
 * A CSV table with a one-line `#`-prefixed JSON manifest header. Rows are
 * buffered and the file is written in one go by write().
 */
class CsvTable {
 public:
  CsvTable(nlohmann::json manifest, std::vector<std::string> columns);

  void add_row(std::vector<Cell> cells);
  nlohmann::json& manifest() { return manifest_; }
  std::size_t rows() const { return rows_.size(); }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  nlohmann::json manifest_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

struct ParsedCsv {
  nlohmann::json manifest;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

ParsedCsv read_csv(const std::filesystem::path& path);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cavelim::bench
