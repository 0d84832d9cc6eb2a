#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsradar {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
	using Error::Error;
};

/// A series is too short for the requested operation.
class SeriesTooShort : public Error {
public:
	SeriesTooShort(std::string series_id, std::size_t length, std::size_t required, const std::string &what);

	const std::string &seriesId() const noexcept {
		return series_id_;
	}
	std::size_t length() const noexcept {
		return length_;
	}
	std::size_t required() const noexcept {
		return required_;
	}

private:
	std::string series_id_;
	std::size_t length_;
	std::size_t required_;
};

/// Actuals, forecasts, bands or score columns do not line up.
class ReconciliationError : public Error {
public:
	using Error::Error;
};

/// Malformed input data (bad rows, duplicate keys).
class DataError : public Error {
public:
	using Error::Error;
};

class IoError : public Error {
public:
	using Error::Error;
};

/// Serialized report does not match the expected schema.
class SchemaError : public Error {
public:
	using Error::Error;
};

/// A stratum requested for aggregation has no members.
class EmptyStratum : public Error {
public:
	using Error::Error;
};

} // namespace tsradar
