#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qrnn {

using CsvCell = std::variant<std::int64_t, double, std::string>;
using CsvRow = std::vector<CsvCell>;

/// Formats a double with 17 significant digits (bit-exact round trip).
std::string format_double(double v);

/// Writes a header plus rows; every row must match the schema width.
/// UTF-8, comma separators, LF line endings. Throws std::runtime_error on
/// I/O failure and std::invalid_argument on a schema mismatch.
void emit_csv(const std::vector<std::string>& schema,
              const std::vector<CsvRow>& rows, const std::string& path);

struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Minimal reader for files produced by emit_csv (no quoting).
CsvFile parse_csv(const std::string& path);

}  // namespace qrnn
