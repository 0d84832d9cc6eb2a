#pragma once

#include "tsradar/forecast_table.hpp"
#include "tsradar/timebase.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsradar {

enum class Metric { smape, mase };

std::string_view to_string(Metric metric);

/// Symmetric MAPE in percent, bounded in [0, 200]. A term with y = yhat = 0 contributes 0.
double smape(std::span<const double> y, std::span<const double> yhat);

/// SMAPE of a single point (the n = 1 case).
double smape_point(double y, double yhat);

/// In-sample seasonal naive MAE of the training series, the MASE scale.
/// Throws InvalidArgument when the training series is not longer than m.
double mase_scale(std::span<const double> y_train, int m);

/// Test MAE over the in-sample seasonal naive MAE; nullopt when that scale is zero.
std::optional<double> mase(std::span<const double> y_test, std::span<const double> yhat,
                           std::span<const double> y_train, int m);

/// Per-(series, model) and per-(series, model, h) scores for one metric.
struct ScoreFrame {
	Metric metric = Metric::smape;
	/// model -> series -> score.
	std::map<std::string, std::map<std::string, double>> per_series;
	/// model -> series -> pointwise scores, index h - 1.
	std::map<std::string, std::map<std::string, std::vector<double>>> per_point;

	struct Exclusion {
		std::string series_id;
		std::string model_id;
		std::string reason;
	};
	/// Pairs left out of the frame (undefined scores, lenient reconciliation drops).
	std::vector<Exclusion> excluded;

	std::vector<std::string> models() const;
	/// Series scored for `model`; throws InvalidArgument for an unknown model.
	const std::map<std::string, double> &series_scores(std::string_view model) const;
};

enum class Validation { strict, lenient };

/// Scores every (series, model) pair in `forecasts` against the held-out actuals.
///
/// Strict mode throws ReconciliationError when a forecast has no actuals, a horizon differs from the
/// test window, or a model does not cover every series in `actuals`. Lenient mode drops those pairs
/// (and any series not covered by every model, so all models share one series set) and records them
/// in `excluded`.
ScoreFrame score_table(const SplitCollection &actuals, const ForecastTable &forecasts, Metric metric,
                       Validation validation = Validation::strict);

} // namespace tsradar
