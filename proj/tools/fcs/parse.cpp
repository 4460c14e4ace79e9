#include "parse.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace fcs::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (;;) {
    const auto pos = text.find(sep, begin);
    parts.push_back(text.substr(begin, pos - begin));
    if (pos == std::string::npos) return parts;
    begin = pos + 1;
  }
}

}  // namespace

double parse_double(const std::string& flag, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw InputError(flag, "expected a number, got '" + text + "'");
  }
  if (!std::isfinite(value)) throw InputError(flag, "value must be finite");
  return value;
}

int parse_int(const std::string& flag, const std::string& text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError(flag, "expected an integer, got '" + text + "'");
  }
  return value;
}

std::vector<double> parse_grid(const std::string& flag, const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InputError(flag, "range must be start:stop:count");
    const double start = parse_double(flag, parts[0]);
    const double stop = parse_double(flag, parts[1]);
    const int count = parse_int(flag, parts[2]);
    if (count < 1) throw InputError(flag, "range count must be >= 1");
    if (start > stop) throw InputError(flag, "range needs start <= stop");
    if (count == 1 && start != stop) throw InputError(flag, "count 1 needs start == stop");
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      values[static_cast<std::size_t>(i)] =
          count == 1 ? start : start + (stop - start) * i / (count - 1);
    }
    values.back() = stop;
    return values;
  }
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_double(flag, part));
  return values;
}

InitialState parse_state(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InputError("--state", "expected KIND:VALUE, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  if (kind == "coherent") {
    const double nbar = parse_double("--state", value);
    if (nbar < 0.0) throw InputError("--state", "coherent NBAR must be >= 0");
    return CoherentState{nbar};
  }
  if (kind == "fock") {
    const int n = parse_int("--state", value);
    if (n < 0) throw InputError("--state", "fock N must be >= 0");
    return FockState{n};
  }
  if (kind == "squeezed") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) throw InputError("--state", "squeezed needs MAG,THETA");
    const double mag = parse_double("--state", parts[0]);
    if (mag < 0.0) throw InputError("--state", "squeezed MAG must be >= 0");
    return SqueezedState{mag, parse_double("--state", parts[1])};
  }
  if (kind == "custom") {
    if (value.empty()) throw InputError("--state", "custom needs a file path");
    return read_custom_state(value);
  }
  throw InputError("--state", "unknown state kind '" + kind + "'");
}

CustomState read_custom_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("--state", "cannot open custom state file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("--state", "custom state file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array() || doc.empty()) {
    throw InputError("--state", "custom state file must be a nonempty array of [re, im] pairs");
  }
  std::vector<Complex> amps;
  for (const auto& entry : doc) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw InputError("--state", "each custom amplitude must be a [re, im] pair of numbers");
    }
    amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return CustomState(std::move(amps));
}

Channel parse_channel(const std::string& flag, const std::string& text) {
  if (text == "r") return Channel::Forward;
  if (text == "l") return Channel::Backward;
  throw InputError(flag, "expected r or l, got '" + text + "'");
}

}  // namespace fcs::cli
