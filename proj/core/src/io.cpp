#include "osla/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace osla::io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_csv_table(std::ostream& os, const std::string& comment,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
  if (columns.empty() || header.size() != columns.size()) {
    throw std::invalid_argument("write_csv_table: header/column mismatch");
  }
  const std::size_t rows = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) {
      throw std::invalid_argument("write_csv_table: ragged columns");
    }
  }
  if (!comment.empty()) os << "# " << comment << '\n';
  for (std::size_t j = 0; j < header.size(); ++j) {
    os << header[j] << (j + 1 < header.size() ? ',' : '\n');
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      os << format_double(columns[j][i]) << (j + 1 < columns.size() ? ',' : '\n');
    }
  }
}

}  // namespace osla::io
