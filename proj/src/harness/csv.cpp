#include "seqode/harness/csv.hpp"

#include <array>
#include <cmath>

namespace seqode {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), result.ptr);
}

std::string format_number(std::int64_t x) {
  std::array<char, 24> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), result.ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> header)
    : out_(path), path_(path), columns_(header.size()) {
  if (!out_) throw ValidationError("output: cannot open " + path + " for writing");
  for (const auto& name : header) field(name);
  end_row();
}

CsvWriter& CsvWriter::operator<<(double x) {
  field(format_number(x));
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::int64_t x) {
  field(format_number(x));
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& text) {
  field(text);
  return *this;
}

void CsvWriter::field(const std::string& text) {
  if (filled_ > 0) out_ << ',';
  out_ << text;
  ++filled_;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) {
    throw std::logic_error("csv " + path_ + ": row has " + std::to_string(filled_) +
                           " fields, header has " + std::to_string(columns_));
  }
  out_ << '\n';
  filled_ = 0;
}

}  // namespace seqode
