#pragma once

// JSON instance and extension files. Numbers are written with 17
// significant digits so that a write/parse cycle reproduces every double.

#include "quadext/core.hpp"
#include "quadext/extend.hpp"

#include <string>

namespace quadext {

inline constexpr int kFormatVersion = 1;

struct Instance {
  TwoEllipsoidSpace space;
  QuadOnSubspace quad;
};

struct ExtensionFile {
  Matrix extended;
  double original_norm = 0.0;
  double extended_norm = 0.0;
};

std::string format_number(double x);

std::string serialize_instance(const TwoEllipsoidSpace& space, const QuadOnSubspace& quad);
/// Throws InvalidInput naming the failed check.
Instance parse_instance(const std::string& text);

std::string serialize_extension(const ExtensionReport& report);
ExtensionFile parse_extension(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace quadext
