#include "nsk/format.hpp"

#include <charconv>
#include <cmath>

namespace nsk {

void append_number(std::string& out, double value) {
  if (value == 0.0) value = 0.0;  // fold -0 so identical runs never differ by a sign bit
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

std::string format_number(double value) {
  std::string s;
  append_number(s, value);
  return s;
}

}  // namespace nsk
