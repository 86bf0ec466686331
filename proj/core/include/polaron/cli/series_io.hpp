#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "polaron/free_dynamics.hpp"

namespace polaron::cli {

struct Column {
  std::string name;
  std::variant<std::vector<double>, std::vector<std::string>> data;

  std::size_t size() const;
};

using Table = std::vector<Column>;

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

/// CSV with a header row and one line per record. Numbers use the shortest
/// round-trip representation, so equal inputs give byte-identical files.
/// Non-finite values and ragged columns are rejected.
void write_table(const Table& table, std::ostream& out);
void write_table(const Table& table, const std::filesystem::path& path);

/// Two-column CSV of a series.
void write_series(const SeriesOutput& series, const std::filesystem::path& path,
                  const std::string& t_column, const std::string& value_column);

}  // namespace polaron::cli
