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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace arraydesign {

/// Shortest decimal string that round-trips to the same double
/// (std::to_chars); "17.45" stays "17.45".
std::string format_double(double v);

/// FNV-1a 64-bit hash, printed as 16 hex digits elsewhere.
std::uint64_t fnv1a64(std::string_view data);

std::string to_hex16(std::uint64_t v);

/// Comma-separated table with `# key,value` metadata footer lines. Cells
/// are written verbatim; writers in this project only emit cells without
/// commas or quotes. Files are written to a temporary sibling and renamed
/// into place, so a crash never leaves a partial file at the target path.
class CsvFile {
 public:
  explicit CsvFile(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_meta(const std::string& key, const std::string& value);

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// Parsed CSV produced by CsvFile. Metadata values keep everything after
/// the first comma of the footer line.
struct CsvContent {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> meta;
};

/// Reads a CsvFile-format file; throws config_error when the file is
/// missing or malformed.
CsvContent read_csv(const std::filesystem::path& path);

}  // namespace arraydesign
