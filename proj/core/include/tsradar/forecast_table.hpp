#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsradar {

/// Point forecasts for horizons 1..H of one (series, model) pair.
struct ForecastVector {
	std::string series_id;
	std::string model_id;
	std::vector<double> yhat;

	int horizon() const noexcept {
		return static_cast<int>(yhat.size());
	}
};

/// Forecast vectors keyed by (series id, model id); iteration follows that order.
class ForecastTable {
public:
	using Key = std::pair<std::string, std::string>;
	using Map = std::map<Key, ForecastVector>;

	/// Throws DataError on a duplicate (series, model) key, InvalidArgument on an empty or non-finite vector.
	void add(ForecastVector forecast);
	/// Adds every entry of `other`; duplicate keys are a DataError.
	void merge(const ForecastTable &other);

	const ForecastVector *find(std::string_view series_id, std::string_view model_id) const;
	std::set<std::string> models() const;
	std::set<std::string> series_ids() const;

	std::size_t size() const noexcept {
		return entries_.size();
	}
	bool empty() const noexcept {
		return entries_.empty();
	}
	Map::const_iterator begin() const noexcept {
		return entries_.begin();
	}
	Map::const_iterator end() const noexcept {
		return entries_.end();
	}

private:
	Map entries_;
};

} // namespace tsradar
