#include "bmspec/format.hpp"

#include <charconv>
#include <cstdio>

namespace bmspec {

std::string shortest_repr(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string repr17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace bmspec
