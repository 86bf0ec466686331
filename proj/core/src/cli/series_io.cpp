#include "polaron/cli/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "polaron/error.hpp"

namespace polaron::cli {

std::size_t Column::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InvalidArgument("cannot format number");
  return std::string(buf, ptr);
}

void write_table(const Table& table, std::ostream& out) {
  if (table.empty()) throw InvalidArgument("write_table: no columns");
  const std::size_t rows = table.front().size();
  for (const auto& c : table) {
    if (c.size() != rows) throw InvalidArgument("write_table: column '" + c.name + "' has wrong length");
    if (const auto* v = std::get_if<std::vector<double>>(&c.data)) {
      for (double x : *v) {
        if (!std::isfinite(x)) throw InvalidArgument("write_table: non-finite value in column '" + c.name + "'");
      }
    }
  }
  for (std::size_t j = 0; j < table.size(); ++j) out << (j ? "," : "") << table[j].name;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (j) out << ',';
      if (const auto* v = std::get_if<std::vector<double>>(&table[j].data)) {
        out << format_double((*v)[i]);
      } else {
        out << std::get<std::vector<std::string>>(table[j].data)[i];
      }
    }
    out << '\n';
  }
}

void write_table(const Table& table, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_table(table, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << buffer.str();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_series(const SeriesOutput& series, const std::filesystem::path& path,
                  const std::string& t_column, const std::string& value_column) {
  write_table(Table{{t_column, series.t}, {value_column, series.value}}, path);
}

}  // namespace polaron::cli
