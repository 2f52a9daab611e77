#include "sfwm/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace sfwm::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf, 16);
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : n_cols_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CsvBuilder: empty header");
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) buf_ += ',';
    buf_ += header[k];
  }
  buf_ += '\n';
}

void CsvBuilder::add_row(const std::vector<double>& row) {
  if (row.size() != n_cols_)
    throw std::invalid_argument("CsvBuilder: row width does not match the header");
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) buf_ += ',';
    buf_ += format_double(row[k]);
  }
  buf_ += '\n';
}

}  // namespace sfwm::io
