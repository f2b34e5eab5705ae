#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "seqode/errors.hpp"

namespace seqode {

/// Shortest decimal that parses back to the same double.
std::string format_number(double x);
std::string format_number(std::int64_t x);

/// Comma-separated rows with a fixed header.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> header);

  CsvWriter& operator<<(double x);
  CsvWriter& operator<<(std::int64_t x);
  CsvWriter& operator<<(int x) { return *this << static_cast<std::int64_t>(x); }
  CsvWriter& operator<<(const std::string& text);
  /// Ends the row; throws unless it has exactly as many fields as the header.
  void end_row();

 private:
  void field(const std::string& text);

  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

}  // namespace seqode
