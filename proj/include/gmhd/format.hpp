#pragma once

#include <string>
#include <string_view>

namespace gmhd {

/// Shortest round-trip decimal form of `v` ("nan"/"inf"/"-inf" for non-finite values).
std::string format_double(double v);
/// Inverse of format_double; throws IoError on malformed text.
double parse_double(std::string_view text);

} // namespace gmhd
