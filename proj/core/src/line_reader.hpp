#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "hgatelda/errors.hpp"

namespace hgatelda::detail {

inline std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

struct DataLine {
  std::string text;
  std::size_t number;  // 1-based line number in the file
};

/// Reads a whole file, dropping blank and '#'-comment lines (and optionally
/// the first line when the file carries a header).
inline std::vector<DataLine> read_data_lines(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::vector<DataLine> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (skip_header && number == 1) continue;
    std::string t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    lines.push_back({std::move(t), number});
  }
  return lines;
}

/// Splits on tabs; single spaces are not separators (IDs may contain them).
inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    fields.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

}  // namespace hgatelda::detail
