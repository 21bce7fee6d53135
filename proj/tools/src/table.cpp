#include "fockida/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fockida/error.hpp"

namespace fockida::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidInput("Table::add: row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t Table::index(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == column) return i;
  throw InvalidInput("Table: no column '" + column + "'");
}

double Table::number(std::size_t row, const std::string& column) const {
  const Cell& c = rows.at(row).at(index(column));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw InvalidInput("Table: column '" + column + "' is not numeric");
}

bool Table::flag(std::size_t row, const std::string& column) const {
  const Cell& c = rows.at(row).at(index(column));
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  throw InvalidInput("Table: column '" + column + "' is not a flag");
}

const std::string& Table::text(std::size_t row, const std::string& column) const {
  const Cell& c = rows.at(row).at(index(column));
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  throw InvalidInput("Table: column '" + column + "' is not text");
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CellWriter {
  std::string operator()(const std::string& s) const { return quote(s); }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(bool b) const { return b ? "1" : "0"; }
};

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << std::visit(CellWriter{}, row[i]);
    os << '\n';
  }
}

}  // namespace fockida::cli
