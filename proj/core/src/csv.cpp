#include "csv.hpp"

#include <charconv>
#include <system_error>

namespace tsradar::csv {

std::optional<std::vector<std::string>> split_line(std::string_view line) {
	if (!line.empty() && line.back() == '\r') {
		line.remove_suffix(1);
	}
	std::vector<std::string> fields;
	std::string current;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		const char c = line[i];
		if (quoted) {
			if (c == '"') {
				if (i + 1 < line.size() && line[i + 1] == '"') {
					current.push_back('"');
					++i;
				} else {
					quoted = false;
				}
			} else {
				current.push_back(c);
			}
		} else if (c == '"') {
			quoted = true;
		} else if (c == ',') {
			fields.push_back(std::move(current));
			current.clear();
		} else {
			current.push_back(c);
		}
	}
	if (quoted) {
		return std::nullopt;
	}
	fields.push_back(std::move(current));
	return fields;
}

namespace {

std::string_view trim(std::string_view s) {
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
		s.remove_prefix(1);
	}
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
		s.remove_suffix(1);
	}
	return s;
}

} // namespace

std::optional<double> parse_double(std::string_view text) {
	text = trim(text);
	if (!text.empty() && text.front() == '+') {
		text.remove_prefix(1);
	}
	if (text.empty()) {
		return std::nullopt;
	}
	double value = 0.0;
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (ec != std::errc() || ptr != text.data() + text.size()) {
		return std::nullopt;
	}
	return value;
}

std::optional<long long> parse_int(std::string_view text) {
	text = trim(text);
	if (text.empty()) {
		return std::nullopt;
	}
	long long value = 0;
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (ec != std::errc() || ptr != text.data() + text.size()) {
		return std::nullopt;
	}
	return value;
}

std::string format_double(double value) {
	char buf[64];
	const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
	return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string escape(std::string_view field) {
	if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
		return std::string(field);
	}
	std::string out = "\"";
	for (char c : field) {
		if (c == '"') {
			out += "\"\"";
		} else {
			out.push_back(c);
		}
	}
	out.push_back('"');
	return out;
}

} // namespace tsradar::csv
