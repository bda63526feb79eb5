#include "qrnn/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qrnn {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_cell(std::string& out, const CsvCell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    out += std::to_string(*i);
  } else if (const auto* d = std::get_if<double>(&cell)) {
    out += format_double(*d);
  } else {
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") != std::string::npos)
      throw std::invalid_argument("emit_csv: cell needs quoting: " + s);
    out += s;
  }
}

}  // namespace

void emit_csv(const std::vector<std::string>& schema,
              const std::vector<CsvRow>& rows, const std::string& path) {
  if (schema.empty()) throw std::invalid_argument("emit_csv: empty schema");
  std::string body;
  for (size_t c = 0; c < schema.size(); ++c) {
    if (c) body += ',';
    body += schema[c];
  }
  body += '\n';
  for (const CsvRow& row : rows) {
    if (row.size() != schema.size())
      throw std::invalid_argument("emit_csv: row width does not match schema");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) body += ',';
      append_cell(body, row[c]);
    }
    body += '\n';
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << body;
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

CsvFile parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("parse_csv: cannot open " + path);
  CsvFile file;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      file.header = std::move(cells);
      first = false;
    } else {
      file.rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::runtime_error("parse_csv: empty file " + path);
  return file;
}

}  // namespace qrnn
