#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cbs::cli {

/// Shortest round-trip decimal form of `v`.
std::string format_double(double v);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view text);

/// CSV with a leading comment line and a header row. Throws IoError if the
/// path cannot be opened or written.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& comment, const std::vector<std::string>& header);

  void row(std::span<const double> values);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// Writes `j` indented with a trailing newline. Throws IoError.
void write_json(const std::string& path, const nlohmann::ordered_json& j);
void write_text(const std::string& path, const std::string& text);

/// `path` with its extension replaced by ".json".
std::string sidecar_path(const std::string& path);

}  // namespace cbs::cli
