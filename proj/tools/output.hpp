#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qmp::cli {

// Integers too wide for int64 (exact LUE moments) travel as decimal strings.
struct BigInt {
  std::string digits;
};

using Cell = std::variant<double, std::int64_t, std::string, bool, BigInt>;

struct Table {
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, Cell value) { meta.emplace_back(std::move(key), std::move(value)); }
};

enum class Format { Csv, Json };

// 17 significant digits, '.' separator, independent of the global locale
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
void write_table(std::ostream& os, const Table& t, Format f);

}  // namespace qmp::cli
