#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fcs/continuum.hpp"

namespace fcs::cli {

/// Invalid command-line input; the message starts with the offending flag.
class InputError : public std::invalid_argument {
public:
  InputError(const std::string& flag, const std::string& what)
      : std::invalid_argument(flag + ": " + what) {}
};

double parse_double(const std::string& flag, const std::string& text);
int parse_int(const std::string& flag, const std::string& text);

/// `start:stop:count` (inclusive linear range), `a,b,c`, or a single value.
std::vector<double> parse_grid(const std::string& flag, const std::string& text);

/// coherent:NBAR | fock:N | squeezed:MAG,THETA | custom:FILE
InitialState parse_state(const std::string& text);

/// JSON array of [re, im] pairs indexed by n. Throws NormalizationError when
/// the amplitudes are not normalized.
CustomState read_custom_state(const std::string& path);

Channel parse_channel(const std::string& flag, const std::string& text);

}  // namespace fcs::cli
