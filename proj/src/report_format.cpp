#include "pqbsk/report_format.hpp"

#include <cstdio>

#include "pqbsk/errors.hpp"

namespace pqbsk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  raw_row(header);
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    out_ += cells[i];
  }
  out_ += '\n';
}

nlohmann::ordered_json config_json(const SchurerConfig& config) {
  return {{"n", config.n},
          {"ell", config.ell},
          {"basis_variant", std::string(to_string(config.basis_variant))},
          {"quad_tol", config.quad_tol}};
}

}  // namespace pqbsk
