#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cli {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Column-ordered table rendered as CSV (17 significant digits, LF) or as a
/// JSON array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string csv() const;
  json rows_json() const;
};

std::string format_double(double x);

/// Exit status carried out of a command.
struct Exit {
  int code;
  std::string message;
};

/// Writes `data` to `path` ("" = stdout). Files are written in binary mode so
/// line endings stay LF.
void write_output(const std::string& path, const std::string& data);

std::string utc_timestamp();

}  // namespace cli
