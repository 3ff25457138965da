#include "avbench/text_format.hpp"

#include <charconv>
#include <cmath>

namespace avbench::text {

std::vector<std::string_view> split_fields(std::string_view line,
                                           std::size_t max_fields) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    if (max_fields != 0 && fields.size() + 1 == max_fields) {
      fields.push_back(line.substr(start));
      break;
    }
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view field) {
  if (field.empty()) { return std::nullopt; }
  // from_chars rejects a leading '+', which is fine for our formats.
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> parse_int(std::string_view field) {
  if (field.empty()) { return std::nullopt; }
  std::int64_t value = 0;
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (ec != std::errc() || ptr != last) { return std::nullopt; }
  return value;
}

std::string format_shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
  // Avoid printing "-0.000000" for tiny negatives.
  const double scale = std::pow(10.0, decimals);
  if (std::abs(value) * scale < 0.5) { value = 0.0; }
  char buf[400];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::fixed, decimals);
  return std::string(buf, ptr);
}

bool is_ignorable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

}  // namespace avbench::text
