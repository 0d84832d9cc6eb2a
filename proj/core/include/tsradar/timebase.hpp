#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsradar {

/// Sampling frequency: seasonal period and default forecast horizon.
struct Frequency {
	std::string name;
	int m = 1;
	int default_h = 1;

	static Frequency monthly();
	static Frequency quarterly();
	static Frequency yearly();
	static Frequency custom(int m, int h);
	/// Looks up one of the presets (monthly, quarterly, yearly).
	static std::optional<Frequency> preset(std::string_view name);

	bool operator==(const Frequency &) const = default;
};

/// Immutable, identified univariate series of finite values.
class TimeSeries {
public:
	/// Throws InvalidArgument on an empty id, empty values or non-finite entries.
	TimeSeries(std::string id, Frequency freq, std::vector<double> values,
	           std::optional<std::string> origin = std::nullopt);

	const std::string &id() const noexcept {
		return id_;
	}
	const Frequency &frequency() const noexcept {
		return freq_;
	}
	std::span<const double> values() const noexcept {
		return values_;
	}
	std::size_t size() const noexcept {
		return values_.size();
	}
	const std::optional<std::string> &origin() const noexcept {
		return origin_;
	}

	/// Copy of this series restricted to [first, first + count).
	TimeSeries slice(std::size_t first, std::size_t count) const;

private:
	std::string id_;
	Frequency freq_;
	std::vector<double> values_;
	std::optional<std::string> origin_;
};

/// Series keyed by id, iterated in id order.
class SeriesCollection {
public:
	using Map = std::map<std::string, TimeSeries, std::less<>>;

	/// Throws DataError if a series with the same id already exists.
	void add(TimeSeries series);

	std::size_t size() const noexcept {
		return series_.size();
	}
	bool empty() const noexcept {
		return series_.empty();
	}
	const TimeSeries *find(std::string_view id) const;
	const TimeSeries &at(std::string_view id) const;

	Map::const_iterator begin() const noexcept {
		return series_.begin();
	}
	Map::const_iterator end() const noexcept {
		return series_.end();
	}

private:
	Map series_;
};

struct SplitSeries {
	TimeSeries train;
	TimeSeries test;
	int h;
};

using SplitCollection = std::map<std::string, SplitSeries, std::less<>>;

/// One supervised row: lags ordered most recent first, and the target.
struct EmbeddedRow {
	std::vector<double> lags;
	double target;
	std::string source_id;
};

struct EmbeddedDataset {
	std::size_t p = 0;
	std::vector<EmbeddedRow> rows;
	/// Empty when rows come from more than one series.
	std::string source_id;
};

/// ceil(1.25 * max(h, m)).
int input_size_heuristic(int h, int m);

/// Holds out the last h values as the test window.
SplitSeries train_test_split(const TimeSeries &series, int h);

/// Splits every member using its frequency's default horizon, or `h` when given.
/// Series that are too short are reported through `failures` as (id, message) instead of
/// throwing when the pointer is non-null.
SplitCollection split_collection(const SeriesCollection &collection, std::optional<int> h = std::nullopt,
                                 std::vector<std::pair<std::string, std::string>> *failures = nullptr);

EmbeddedDataset time_delay_embed(const TimeSeries &series, std::size_t p);

/// Global dataset: per-series embeddings concatenated in id order.
EmbeddedDataset concat_embeddings(const SeriesCollection &collection,
                                  const std::function<std::size_t(const TimeSeries &)> &lags_for);
EmbeddedDataset concat_embeddings(const SeriesCollection &collection, std::size_t p);

} // namespace tsradar
