#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace centralspin {

/// 17 significant digits, shortest of fixed/scientific, independent of the global locale.
std::string format_double(double value);

/// Writes one comma-separated row terminated by '\n'. Fields are emitted verbatim.
void write_csv_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace centralspin
