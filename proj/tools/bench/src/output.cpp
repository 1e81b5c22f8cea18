#include "cavelim/bench/output.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cavelim/error.hpp"

namespace cavelim::bench {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string render(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return quote(std::get<std::string>(c));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

CsvTable::CsvTable(nlohmann::json manifest, std::vector<std::string> columns)
    : manifest_(std::move(manifest)), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) {
    throw DimensionError("CsvTable: row has " + std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  out << "# " << manifest_.dump() << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render(row[i]);
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

ParsedCsv read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  ParsedCsv out;
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#') {
    throw Error(path.string() + ": missing manifest line");
  }
  out.manifest = nlohmann::json::parse(line.substr(1));
  if (!std::getline(in, line)) throw Error(path.string() + ": missing header");
  out.columns = split_line(line);
  while (std::getline(in, line)) {
    if (!line.empty()) out.rows.push_back(split_line(line));
  }
  return out;
}

}  // namespace cavelim::bench
