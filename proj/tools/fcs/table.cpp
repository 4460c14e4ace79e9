#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace fcs::cli {
namespace {

constexpr double kClampFloor = -1e-12;

double clamp_probability(double x) { return (x < 0.0 && x >= kClampFloor) ? 0.0 : x; }

std::vector<bool> probability_mask(const Table& table) {
  std::vector<bool> mask(table.columns.size(), false);
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const auto& cols = table.probability_columns;
    mask[c] = std::find(cols.begin(), cols.end(), table.columns[c]) != cols.end();
  }
  return mask;
}

std::string csv_cell(const Cell& cell, bool probability) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) {
    return format_number(probability ? clamp_probability(*d) : *d);
  }
  return std::get<std::string>(cell);
}

nlohmann::ordered_json json_cell(const Cell& cell, bool probability) {
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    const double v = probability ? clamp_probability(*d) : *d;
    if (!std::isfinite(v)) return nullptr;
    return v;
  }
  return std::get<std::string>(cell);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  out << "# fcs schema_version=" << kSchemaVersion << " command=" << table.command << '\n';
  for (const auto& [key, value] : table.meta) out << "# " << key << '=' << csv_cell(value, false) << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  const auto mask = probability_mask(table);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c], mask[c]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = table.command;
  auto& params = doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) params[key] = json_cell(value, false);
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  const auto mask = probability_mask(table);
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c], mask[c]);
    rows.push_back(std::move(obj));
  }
  out << doc.dump(1) << '\n';
}

void write(const Table& table, Format format, std::ostream& out) {
  if (format == Format::Json) {
    write_json(table, out);
  } else {
    write_csv(table, out);
  }
}

}  // namespace fcs::cli
