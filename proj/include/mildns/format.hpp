#pragma once

#include <string>

namespace mildns {

/// Locale-independent rendering with 17 significant digits, used for every
/// CSV and report number.
std::string format_double(double value);

/// Shortest string that reads back to the same double; used in labels and
/// file names.
std::string short_number(double value);

} // namespace mildns
