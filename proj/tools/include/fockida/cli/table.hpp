#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace fockida::cli {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

// Fixed column order; reals are written with 17 significant digits, booleans as 0/1.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::size_t index(const std::string& column) const;
  double number(std::size_t row, const std::string& column) const;
  bool flag(std::size_t row, const std::string& column) const;
  const std::string& text(std::size_t row, const std::string& column) const;
  void write_csv(std::ostream& os) const;
};

std::string format_real(double v);

}  // namespace fockida::cli
