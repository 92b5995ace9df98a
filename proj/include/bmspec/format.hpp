#pragma once

#include <string>

namespace bmspec {

// Shortest decimal that parses back to the same double.
std::string shortest_repr(double v);
// 17 significant digits.
std::string repr17(double v);

}  // namespace bmspec
