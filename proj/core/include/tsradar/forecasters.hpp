#pragma once

#include "tsradar/forecast_table.hpp"
#include "tsradar/timebase.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsradar {

/// Per-horizon interval [lower, upper] at a confidence level.
struct PredictionBand {
	std::string series_id;
	double level = 0.0;
	std::vector<double> lower;
	std::vector<double> upper;
};

struct SesFit {
	double alpha = 0.0;
	double level_final = 0.0;
	/// In-sample sum of squared one-step errors.
	double sse = 0.0;
};

/// Search interval for the SES smoothing parameter.
struct SesBounds {
	double lo = 0.01;
	double hi = 0.99;
};

struct SesResult {
	SesFit fit;
	ForecastVector forecast;
};

struct ThetaResult {
	ForecastVector forecast;
	bool deseasonalized = false;
	/// Multiplicative indices by position modulo m (empty unless deseasonalized).
	std::vector<double> seasonal_indices;
	double intercept = 0.0;
	double slope = 0.0;
	SesFit ses;
	/// Set when the seasonal adjustment was skipped for a reason other than the test.
	std::string note;
};

ForecastVector snaive_forecast(const TimeSeries &train, int m, int h);

/// Normal-theory band around the seasonal naive forecast built from seasonal differences.
PredictionBand snaive_band(const TimeSeries &train, int m, int h, double level);

/// Random walk with drift (y_t - y_1) / (t - 1).
ForecastVector rwd_forecast(const TimeSeries &train, int h);

/// SSE of one-step SES predictions with the level initialised at y_1.
/// Writes the final level to `level_out` when non-null.
double ses_sse(std::span<const double> y, double alpha, double *level_out = nullptr);

/// Fits alpha on `bounds` by a 19-point grid scan refined with golden-section search, then forecasts flat.
SesResult ses_fit_forecast(const TimeSeries &train, int h, SesBounds bounds = {});

/// Theta(0, 2) with an optional multiplicative seasonal adjustment.
ThetaResult theta_fit_forecast(const TimeSeries &train, int m, int h);
ForecastVector theta_forecast(const TimeSeries &train, int m, int h);

/// Sample autocorrelation at lags 1..max_lag (index 0 holds lag 1). All zeros for constant input.
std::vector<double> autocorrelation(std::span<const double> y, int max_lag);

/// 90% autocorrelation test at lag m used by the Theta method.
bool seasonality_detected(std::span<const double> y, int m);

/// Classical multiplicative decomposition indices (mean 1), by position modulo m.
/// Returns nullopt when the series or its moving average is not strictly positive.
std::optional<std::vector<double>> multiplicative_seasonal_indices(std::span<const double> y, int m);

enum class Baseline { snaive, rwd, ses, theta };

std::string_view to_string(Baseline model);
std::optional<Baseline> parse_baseline(std::string_view name);
std::span<const Baseline> all_baselines();

struct BaselineFailure {
	std::string series_id;
	std::string model_id;
	std::string message;
};

struct BaselineRun {
	ForecastTable table;
	std::vector<BaselineFailure> failures;
};

/// Forecasts every series with every requested model. Each series uses its own seasonal period
/// and, unless `h` is given, its frequency's default horizon. Failures are collected, not thrown.
BaselineRun run_baselines(const SeriesCollection &collection, std::span<const Baseline> models,
                          std::optional<int> h = std::nullopt);

} // namespace tsradar
