#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace fcs::cli {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<long long, double, std::string>;

/// One result set: a metadata block plus a rectangular table.
///
/// CSV: `# fcs schema_version=1 command=...` first, then one `# key=value`
/// line per metadata entry, then the column header and rows. JSON: an object
/// with schema_version, command, params (the metadata) and rows.
struct Table {
  std::string command;
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Columns holding probabilities: values in [-1e-12, 0) are exported as 0.
  std::vector<std::string> probability_columns;

  void add_meta(std::string key, Cell value) { meta.emplace_back(std::move(key), std::move(value)); }
};

enum class Format { Csv, Json };

/// %.17g, with NaN/inf spelled nan/inf/-inf.
std::string format_number(double x);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write(const Table& table, Format format, std::ostream& out);

}  // namespace fcs::cli
