#pragma once

#include <string>

namespace oscspectra {

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

}  // namespace oscspectra
