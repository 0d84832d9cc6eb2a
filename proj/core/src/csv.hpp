#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsradar::csv {

/// Splits one CSV record on commas. Double-quoted fields may contain commas and "" escapes.
/// Returns nullopt for an unterminated quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

/// Whole-field decimal parse; nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

} // namespace tsradar::csv
