#include "tsradar/forecasters.hpp"

#include "tsradar/errors.hpp"
#include "tsradar/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace tsradar {

namespace {

void require_horizon(int h) {
	if (h < 1) {
		throw InvalidArgument("forecast horizon must be positive");
	}
}

void require_period(int m) {
	if (m < 1) {
		throw InvalidArgument("seasonal period must be positive");
	}
}

void require_length(const TimeSeries &s, std::size_t need, const char *what) {
	if (s.size() < need) {
		throw SeriesTooShort(s.id(), s.size(), need, what);
	}
}

std::vector<double> snaive_points(std::span<const double> y, int m, int h) {
	const std::size_t t = y.size();
	const auto mm = static_cast<std::size_t>(m);
	std::vector<double> out(static_cast<std::size_t>(h));
	for (std::size_t j = 1; j <= out.size(); ++j) {
		// 1-based index t + j - m * (floor((j - 1) / m) + 1)
		const std::size_t idx = t + j - mm * ((j - 1) / mm + 1);
		out[j - 1] = y[idx - 1];
	}
	return out;
}

} // namespace

ForecastVector snaive_forecast(const TimeSeries &train, int m, int h) {
	require_period(m);
	require_horizon(h);
	require_length(train, static_cast<std::size_t>(m), "seasonal naive");
	return {train.id(), "snaive", snaive_points(train.values(), m, h)};
}

PredictionBand snaive_band(const TimeSeries &train, int m, int h, double level) {
	require_period(m);
	require_horizon(h);
	const double z = central_z(level);
	require_length(train, 2 * static_cast<std::size_t>(m), "a seasonal naive interval");

	const auto y = train.values();
	const auto mm = static_cast<std::size_t>(m);
	std::vector<double> resid;
	resid.reserve(y.size() - mm);
	for (std::size_t i = mm; i < y.size(); ++i) {
		resid.push_back(y[i] - y[i - mm]);
	}
	double sigma = 0.0;
	if (resid.size() >= 2) {
		const double mean = std::accumulate(resid.begin(), resid.end(), 0.0) / static_cast<double>(resid.size());
		double ss = 0.0;
		for (double e : resid) {
			ss += (e - mean) * (e - mean);
		}
		sigma = std::sqrt(ss / static_cast<double>(resid.size() - 1));
	}

	const auto point = snaive_points(y, m, h);
	PredictionBand band{train.id(), level, std::vector<double>(point.size()), std::vector<double>(point.size())};
	for (std::size_t j = 0; j < point.size(); ++j) {
		const double cycles = static_cast<double>(j / mm + 1);
		const double half = z * sigma * std::sqrt(cycles);
		band.lower[j] = point[j] - half;
		band.upper[j] = point[j] + half;
	}
	return band;
}

ForecastVector rwd_forecast(const TimeSeries &train, int h) {
	require_horizon(h);
	require_length(train, 2, "random walk with drift");
	const auto y = train.values();
	const double last = y.back();
	const double drift = (last - y.front()) / static_cast<double>(y.size() - 1);
	ForecastVector out{train.id(), "rwd", std::vector<double>(static_cast<std::size_t>(h))};
	for (std::size_t j = 0; j < out.yhat.size(); ++j) {
		out.yhat[j] = last + static_cast<double>(j + 1) * drift;
	}
	return out;
}

double ses_sse(std::span<const double> y, double alpha, double *level_out) {
	if (y.empty()) {
		throw InvalidArgument("ses_sse: empty input");
	}
	double level = y[0];
	double sse = 0.0;
	for (std::size_t i = 1; i < y.size(); ++i) {
		const double err = y[i] - level;
		sse += err * err;
		level += alpha * err;
	}
	if (level_out != nullptr) {
		*level_out = level;
	}
	return sse;
}

namespace {

SesFit fit_ses(std::span<const double> y, SesBounds bounds) {
	if (!(bounds.lo >= 0.0 && bounds.lo <= bounds.hi && bounds.hi <= 1.0)) {
		throw InvalidArgument("SES bounds must satisfy 0 <= lo <= hi <= 1");
	}
	const auto sse_at = [y](double a) { return ses_sse(y, a); };

	double best_alpha = bounds.lo;
	double best_sse = sse_at(bounds.lo);
	if (bounds.hi > bounds.lo) {
		constexpr int kGrid = 19;
		const double step = (bounds.hi - bounds.lo) / (kGrid - 1);
		std::array<double, kGrid> grid{};
		int best_k = 0;
		for (int k = 0; k < kGrid; ++k) {
			grid[static_cast<std::size_t>(k)] = k == kGrid - 1 ? bounds.hi : bounds.lo + step * k;
			const double s = sse_at(grid[static_cast<std::size_t>(k)]);
			if (s < best_sse) {
				best_sse = s;
				best_k = k;
			}
		}
		best_alpha = grid[static_cast<std::size_t>(best_k)];
		const double lo = grid[static_cast<std::size_t>(std::max(best_k - 1, 0))];
		const double hi = grid[static_cast<std::size_t>(std::min(best_k + 1, kGrid - 1))];
		const auto refined = golden_section_minimize(sse_at, lo, hi, 1e-10);
		if (refined.fx < best_sse) {
			best_alpha = refined.x;
			best_sse = refined.fx;
		}
	}
	SesFit fit;
	fit.alpha = best_alpha;
	fit.sse = ses_sse(y, best_alpha, &fit.level_final);
	return fit;
}

} // namespace

SesResult ses_fit_forecast(const TimeSeries &train, int h, SesBounds bounds) {
	require_horizon(h);
	require_length(train, 2, "simple exponential smoothing");
	SesResult out;
	out.fit = fit_ses(train.values(), bounds);
	out.forecast = {train.id(), "ses", std::vector<double>(static_cast<std::size_t>(h), out.fit.level_final)};
	return out;
}

std::vector<double> autocorrelation(std::span<const double> y, int max_lag) {
	std::vector<double> r(static_cast<std::size_t>(std::max(max_lag, 0)), 0.0);
	if (y.empty()) {
		return r;
	}
	const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
	double denom = 0.0;
	for (double v : y) {
		denom += (v - mean) * (v - mean);
	}
	if (denom == 0.0) {
		return r;
	}
	for (std::size_t k = 1; k <= r.size() && k < y.size(); ++k) {
		double num = 0.0;
		for (std::size_t i = 0; i + k < y.size(); ++i) {
			num += (y[i] - mean) * (y[i + k] - mean);
		}
		r[k - 1] = num / denom;
	}
	return r;
}

bool seasonality_detected(std::span<const double> y, int m) {
	if (m <= 1 || y.size() <= static_cast<std::size_t>(m)) {
		return false;
	}
	const auto r = autocorrelation(y, m);
	double acc = 0.0;
	for (int k = 1; k < m; ++k) {
		acc += r[static_cast<std::size_t>(k - 1)] * r[static_cast<std::size_t>(k - 1)];
	}
	const double bound = 1.645 * std::sqrt((1.0 + 2.0 * acc) / static_cast<double>(y.size()));
	return std::abs(r[static_cast<std::size_t>(m - 1)]) > bound;
}

std::optional<std::vector<double>> multiplicative_seasonal_indices(std::span<const double> y, int m) {
	const auto mm = static_cast<std::size_t>(m);
	if (m < 2 || y.size() < 2 * mm) {
		throw InvalidArgument("multiplicative decomposition needs m >= 2 and two full cycles");
	}
	if (std::any_of(y.begin(), y.end(), [](double v) { return v <= 0.0; })) {
		return std::nullopt;
	}
	// Centred moving average: plain m-term for odd m, 2x m for even m.
	const std::size_t half = mm / 2;
	std::vector<double> sums(mm, 0.0);
	std::vector<std::size_t> counts(mm, 0);
	for (std::size_t i = half; i + half < y.size(); ++i) {
		double ma;
		if (mm % 2 == 1) {
			double s = 0.0;
			for (std::size_t k = i - half; k <= i + half; ++k) {
				s += y[k];
			}
			ma = s / static_cast<double>(mm);
		} else {
			double s = 0.5 * (y[i - half] + y[i + half]);
			for (std::size_t k = i - half + 1; k < i + half; ++k) {
				s += y[k];
			}
			ma = s / static_cast<double>(mm);
		}
		if (ma <= 0.0) {
			return std::nullopt;
		}
		sums[i % mm] += y[i] / ma;
		++counts[i % mm];
	}
	std::vector<double> idx(mm);
	for (std::size_t s = 0; s < mm; ++s) {
		idx[s] = sums[s] / static_cast<double>(counts[s]);
	}
	const double total = std::accumulate(idx.begin(), idx.end(), 0.0);
	for (double &v : idx) {
		v *= static_cast<double>(mm) / total;
	}
	return idx;
}

ThetaResult theta_fit_forecast(const TimeSeries &train, int m, int h) {
	require_period(m);
	require_horizon(h);
	require_length(train, std::max<std::size_t>(4, 2 * static_cast<std::size_t>(m)), "the Theta method");

	const auto y = train.values();
	const std::size_t t = y.size();
	ThetaResult out;

	std::vector<double> x(y.begin(), y.end());
	if (seasonality_detected(y, m)) {
		if (auto idx = multiplicative_seasonal_indices(y, m)) {
			out.deseasonalized = true;
			out.seasonal_indices = std::move(*idx);
			for (std::size_t i = 0; i < t; ++i) {
				x[i] /= out.seasonal_indices[i % static_cast<std::size_t>(m)];
			}
		} else {
			out.note = "seasonality detected but series is not strictly positive; seasonal adjustment skipped";
		}
	}

	// theta = 0 line: OLS trend over positions 1..t.
	const double n = static_cast<double>(t);
	const double mean_i = (n + 1.0) / 2.0;
	const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
	double sxy = 0.0;
	double sxx = 0.0;
	for (std::size_t i = 0; i < t; ++i) {
		const double di = static_cast<double>(i + 1) - mean_i;
		sxy += di * (x[i] - mean_x);
		sxx += di * di;
	}
	out.slope = sxy / sxx;
	out.intercept = mean_x - out.slope * mean_i;

	// theta = 2 line, extrapolated flat by SES.
	std::vector<double> theta2(t);
	for (std::size_t i = 0; i < t; ++i) {
		theta2[i] = 2.0 * x[i] - (out.intercept + out.slope * static_cast<double>(i + 1));
	}
	out.ses = fit_ses(theta2, SesBounds{});

	out.forecast = {train.id(), "theta", std::vector<double>(static_cast<std::size_t>(h))};
	for (std::size_t j = 1; j <= out.forecast.yhat.size(); ++j) {
		const double trend = out.intercept + out.slope * static_cast<double>(t + j);
		double f = 0.5 * trend + 0.5 * out.ses.level_final;
		if (out.deseasonalized) {
			f *= out.seasonal_indices[(t + j - 1) % static_cast<std::size_t>(m)];
		}
		out.forecast.yhat[j - 1] = f;
	}
	return out;
}

ForecastVector theta_forecast(const TimeSeries &train, int m, int h) {
	return theta_fit_forecast(train, m, h).forecast;
}

std::string_view to_string(Baseline model) {
	switch (model) {
	case Baseline::snaive:
		return "snaive";
	case Baseline::rwd:
		return "rwd";
	case Baseline::ses:
		return "ses";
	case Baseline::theta:
		return "theta";
	}
	return "unknown";
}

std::optional<Baseline> parse_baseline(std::string_view name) {
	for (Baseline b : all_baselines()) {
		if (to_string(b) == name) {
			return b;
		}
	}
	return std::nullopt;
}

std::span<const Baseline> all_baselines() {
	static constexpr std::array<Baseline, 4> kAll = {Baseline::snaive, Baseline::rwd, Baseline::ses,
	                                                 Baseline::theta};
	return kAll;
}

BaselineRun run_baselines(const SeriesCollection &collection, std::span<const Baseline> models,
                          std::optional<int> h) {
	BaselineRun run;
	for (const auto &[id, series] : collection) {
		const int m = series.frequency().m;
		const int horizon = h.value_or(series.frequency().default_h);
		for (Baseline model : models) {
			try {
				switch (model) {
				case Baseline::snaive:
					run.table.add(snaive_forecast(series, m, horizon));
					break;
				case Baseline::rwd:
					run.table.add(rwd_forecast(series, horizon));
					break;
				case Baseline::ses:
					run.table.add(ses_fit_forecast(series, horizon).forecast);
					break;
				case Baseline::theta:
					run.table.add(theta_forecast(series, m, horizon));
					break;
				}
			} catch (const Error &e) {
				run.failures.push_back({id, std::string(to_string(model)), e.what()});
			}
		}
	}
	return run;
}

} // namespace tsradar
