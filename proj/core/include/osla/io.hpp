#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace osla::io {

// 15 significant digits, locale-independent.
std::string format_double(double v);

// Writes a CSV table: optional '#'-prefixed comment line (ignored by
// gnuplot), a header row, then rows of 15-significant-digit values.
void write_csv_table(std::ostream& os, const std::string& comment,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

}  // namespace osla::io
