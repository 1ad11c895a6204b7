#pragma once

#include <string>

namespace dualgeo {

// Shortest decimal form that parses back to exactly the same double.
// Serialized geometry must survive a round trip bit for bit, and golden
// files need one canonical spelling per value.
std::string format_double(double value);

}  // namespace dualgeo
