#include "tsradar/metrics.hpp"

#include "tsradar/errors.hpp"

#include <cmath>
#include <set>

namespace tsradar {

std::string_view to_string(Metric metric) {
	return metric == Metric::smape ? "smape" : "mase";
}

double smape_point(double y, double yhat) {
	const double denom = (std::abs(yhat) + std::abs(y)) / 2.0;
	if (denom == 0.0) {
		return 0.0;
	}
	// Ratio first: it cannot round above 2, so the point score never exceeds 200.
	return 100.0 * (std::abs(yhat - y) / denom);
}

double smape(std::span<const double> y, std::span<const double> yhat) {
	if (y.size() != yhat.size() || y.empty()) {
		throw InvalidArgument("smape: inputs must be nonempty and of equal length");
	}
	double acc = 0.0;
	for (std::size_t i = 0; i < y.size(); ++i) {
		acc += smape_point(y[i], yhat[i]);
	}
	return acc / static_cast<double>(y.size());
}

double mase_scale(std::span<const double> y_train, int m) {
	if (m < 1) {
		throw InvalidArgument("mase: seasonal period must be positive");
	}
	const auto mm = static_cast<std::size_t>(m);
	if (y_train.size() <= mm) {
		throw InvalidArgument("mase: training series must be longer than the seasonal period");
	}
	double acc = 0.0;
	for (std::size_t i = mm; i < y_train.size(); ++i) {
		acc += std::abs(y_train[i] - y_train[i - mm]);
	}
	return acc / static_cast<double>(y_train.size() - mm);
}

std::optional<double> mase(std::span<const double> y_test, std::span<const double> yhat,
                           std::span<const double> y_train, int m) {
	if (y_test.size() != yhat.size() || y_test.empty()) {
		throw InvalidArgument("mase: test and forecast must be nonempty and of equal length");
	}
	const double scale = mase_scale(y_train, m);
	if (scale == 0.0) {
		return std::nullopt;
	}
	double acc = 0.0;
	for (std::size_t i = 0; i < y_test.size(); ++i) {
		acc += std::abs(y_test[i] - yhat[i]);
	}
	return (acc / static_cast<double>(y_test.size())) / scale;
}

std::vector<std::string> ScoreFrame::models() const {
	std::vector<std::string> out;
	out.reserve(per_series.size());
	for (const auto &[model, scores] : per_series) {
		out.push_back(model);
	}
	return out;
}

const std::map<std::string, double> &ScoreFrame::series_scores(std::string_view model) const {
	for (const auto &[name, scores] : per_series) {
		if (name == model) {
			return scores;
		}
	}
	throw InvalidArgument("model '" + std::string(model) + "' is not present in the score frame");
}

namespace {

std::string pair_name(const std::string &series, const std::string &model) {
	return "(series '" + series + "', model '" + model + "')";
}

} // namespace

ScoreFrame score_table(const SplitCollection &actuals, const ForecastTable &forecasts, Metric metric,
                       Validation validation) {
	ScoreFrame sf;
	sf.metric = metric;
	const bool strict = validation == Validation::strict;

	auto reject = [&](const std::string &series, const std::string &model, const std::string &reason) {
		if (strict) {
			throw ReconciliationError(pair_name(series, model) + ": " + reason);
		}
		sf.excluded.push_back({series, model, reason});
	};

	// Pass 1: pairs that reconcile with actuals.
	std::map<std::string, std::set<std::string>> usable; // model -> series
	for (const auto &model : forecasts.models()) {
		usable[model];
	}
	for (const auto &[key, fv] : forecasts) {
		const auto &[series, model] = key;
		auto it = actuals.find(series);
		if (it == actuals.end()) {
			reject(series, model, "no actuals for this series");
			continue;
		}
		if (fv.horizon() != it->second.h) {
			reject(series, model,
			       "forecast horizon " + std::to_string(fv.horizon()) + " does not match test window " +
			           std::to_string(it->second.h));
			continue;
		}
		usable[model].insert(series);
	}

	// Pass 2: every model must cover the same series.
	std::set<std::string> common;
	for (const auto &[id, split] : actuals) {
		common.insert(id);
	}
	for (const auto &[model, covered] : usable) {
		for (const auto &[id, split] : actuals) {
			if (!covered.contains(id)) {
				if (strict) {
					throw ReconciliationError(pair_name(id, model) + ": model has no forecast for this series");
				}
				common.erase(id);
			}
		}
	}
	if (!strict) {
		for (const auto &[model, covered] : usable) {
			for (const auto &id : covered) {
				if (!common.contains(id)) {
					sf.excluded.push_back({id, model, "series not forecast by every model"});
				}
			}
		}
	}

	for (const auto &[model, covered] : usable) {
		auto &series_col = sf.per_series[model];
		auto &point_col = sf.per_point[model];
		for (const auto &id : covered) {
			if (!common.contains(id)) {
				continue;
			}
			const SplitSeries &split = actuals.find(id)->second;
			const auto y = split.test.values();
			const auto &yhat = forecasts.find(id, model)->yhat;
			std::vector<double> points(y.size());
			if (metric == Metric::smape) {
				for (std::size_t i = 0; i < y.size(); ++i) {
					points[i] = smape_point(y[i], yhat[i]);
				}
				series_col[id] = smape(y, yhat);
			} else {
				const int m = split.train.frequency().m;
				if (split.train.size() <= static_cast<std::size_t>(m)) {
					sf.excluded.push_back({id, model, "undefined MASE: training series not longer than m"});
					continue;
				}
				const double scale = mase_scale(split.train.values(), m);
				if (scale == 0.0) {
					sf.excluded.push_back({id, model, "undefined MASE: in-sample seasonal naive error is zero"});
					continue;
				}
				for (std::size_t i = 0; i < y.size(); ++i) {
					points[i] = std::abs(y[i] - yhat[i]) / scale;
				}
				series_col[id] = *mase(y, yhat, split.train.values(), m);
			}
			point_col[id] = std::move(points);
		}
	}
	return sf;
}

} // namespace tsradar
