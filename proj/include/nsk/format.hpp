#pragma once

#include <string>

namespace nsk {

/// Number formatting shared by every text output: 17 significant digits, '.' separator,
/// independent of the global locale. Appends to `out`.
void append_number(std::string& out, double value);
std::string format_number(double value);

}  // namespace nsk
