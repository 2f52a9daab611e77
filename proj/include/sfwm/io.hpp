#pragma once

// Small output helpers shared by the CLI: locale-independent number
// formatting, atomic file writes, a fixed-schema CSV builder and the content
// hash stamped into every result file.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sfwm::io {

// Shortest round-trip representation, always '.' decimal point.
std::string format_double(double v);

// Write via a temp file in the same directory plus rename, so readers never
// observe a half-written result. Creates parent directories as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

// CSV with LF endings; the header names each column's unit once, rows are
// plain doubles.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  void add_row(const std::vector<double>& row);
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
  std::size_t n_cols_;
};

}  // namespace sfwm::io
