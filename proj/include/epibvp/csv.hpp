#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace epibvp {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// A missing cell is written as an empty CSV field or a JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { Csv, Json };

/// Comma separated, header first, '\n' line endings. Strings containing a
/// comma, quote or newline are quoted.
void write_csv(std::ostream& os, const Table& table);
/// Array of objects keyed by the header, in header order.
void write_json(std::ostream& os, const Table& table);

/// Writes dir/stem.csv or dir/stem.json and returns the path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, OutputFormat format);

}  // namespace epibvp
