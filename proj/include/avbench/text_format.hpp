#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avbench::text {

/// Splits on commas. At most `max_fields` fields are produced; the last one
/// keeps any remaining commas. `max_fields == 0` means unlimited.
std::vector<std::string_view> split_fields(std::string_view line,
                                           std::size_t max_fields = 0);

/// Whole-field decimal parse; rejects empty fields, trailing junk,
/// whitespace, and non-finite spellings (nan, inf).
std::optional<double> parse_double(std::string_view field);
std::optional<std::int64_t> parse_int(std::string_view field);

/// Shortest decimal text that parses back to the same double.
std::string format_shortest(double value);

/// Fixed notation with `decimals` digits after the point, locale-free.
std::string format_fixed(double value, int decimals = 6);

/// True for blank lines and `#` comments.
bool is_ignorable(std::string_view line);

}  // namespace avbench::text
