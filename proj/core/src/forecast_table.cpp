#include "tsradar/forecast_table.hpp"

#include "tsradar/errors.hpp"

#include <cmath>

namespace tsradar {

void ForecastTable::add(ForecastVector forecast) {
	if (forecast.yhat.empty()) {
		throw InvalidArgument("forecast for ('" + forecast.series_id + "', '" + forecast.model_id + "') is empty");
	}
	for (double v : forecast.yhat) {
		if (!std::isfinite(v)) {
			throw InvalidArgument("forecast for ('" + forecast.series_id + "', '" + forecast.model_id +
			                      "') contains a non-finite value");
		}
	}
	Key key{forecast.series_id, forecast.model_id};
	auto [it, inserted] = entries_.emplace(std::move(key), std::move(forecast));
	if (!inserted) {
		throw DataError("duplicate forecast for series '" + it->first.first + "', model '" + it->first.second + "'");
	}
}

void ForecastTable::merge(const ForecastTable &other) {
	for (const auto &[key, fv] : other) {
		add(fv);
	}
}

const ForecastVector *ForecastTable::find(std::string_view series_id, std::string_view model_id) const {
	auto it = entries_.find(Key{std::string(series_id), std::string(model_id)});
	return it == entries_.end() ? nullptr : &it->second;
}

std::set<std::string> ForecastTable::models() const {
	std::set<std::string> out;
	for (const auto &[key, fv] : entries_) {
		out.insert(key.second);
	}
	return out;
}

std::set<std::string> ForecastTable::series_ids() const {
	std::set<std::string> out;
	for (const auto &[key, fv] : entries_) {
		out.insert(key.first);
	}
	return out;
}

} // namespace tsradar
