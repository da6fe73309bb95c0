#pragma once

// Shared CSV/JSON output conventions: comma separated, '.' decimal point,
// 17 significant digits, LF line endings, mandatory header row.

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

#include "pqbsk/operator.hpp"

namespace pqbsk {

/// %.17g; round-trips every double.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Mixed cells, already formatted.
  void raw_row(const std::vector<std::string>& cells);

  std::size_t columns() const noexcept { return columns_; }
  const std::string& str() const noexcept { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

nlohmann::ordered_json config_json(const SchurerConfig& config);

}  // namespace pqbsk
