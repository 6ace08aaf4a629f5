// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arraydesign/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "arraydesign/errors.hpp"

namespace arraydesign {

std::string format_double(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string to_hex16(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

CsvFile::CsvFile(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvFile::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("csv: row width does not match the header");
  rows_.push_back(std::move(cells));
}

void CsvFile::add_meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

std::string CsvFile::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out << ',';
    out << header_[i];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  for (const auto& [key, value] : meta_)
    out << "# " << key << ',' << value << '\n';
  return out.str();
}

void CsvFile::write(const std::filesystem::path& path) const {
  const std::filesystem::path tmp =
      path.parent_path() /
      (path.filename().string() + ".tmp." +
       to_hex16(fnv1a64(path.string())).substr(0, 8));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw config_error("csv: cannot open " + tmp.string() + " for writing");
    out << to_string();
    if (!out)
      throw config_error("csv: short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw config_error("csv: cannot move " + tmp.string() + " into place: " +
                       ec.message());
  }
}

CsvContent read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("csv: cannot open " + path.string());

  CsvContent content;
  std::string line;
  bool have_header = false;
  const auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(text.substr(start));
        return cells;
      }
      cells.push_back(text.substr(start, comma - start));
      start = comma + 1;
    }
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const std::string body = line.substr(2);
      const std::size_t comma = body.find(',');
      if (comma == std::string::npos)
        throw config_error("csv: malformed metadata line in " + path.string());
      content.meta[body.substr(0, comma)] = body.substr(comma + 1);
      continue;
    }
    if (!have_header) {
      content.header = split(line);
      have_header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != content.header.size())
      throw config_error("csv: ragged row in " + path.string());
    content.rows.push_back(std::move(cells));
  }
  if (!have_header)
    throw config_error("csv: " + path.string() + " has no header");
  return content;
}

}  // namespace arraydesign
