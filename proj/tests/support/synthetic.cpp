#include "synthetic.hpp"

#include <cmath>
#include <numbers>

namespace tsradar::testing {

double Rng::normal() {
	if (has_spare_) {
		has_spare_ = false;
		return spare_;
	}
	double u1 = uniform();
	while (u1 <= 0.0) {
		u1 = uniform();
	}
	const double u2 = uniform();
	const double r = std::sqrt(-2.0 * std::log(u1));
	spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
	has_spare_ = true;
	return r * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

struct Shape {
	Frequency freq;
	std::string prefix;
	std::size_t cycles_train;
};

} // namespace

GoldenData make_golden(std::uint64_t seed) {
	Rng rng(seed);
	GoldenData out;
	const std::vector<Shape> shapes = {
	    {Frequency::monthly(), "M", 6},
	    {Frequency::quarterly(), "Q", 10},
	    {Frequency::yearly(), "Y", 30},
	};
	for (const auto &shape : shapes) {
		FrequencyGroup group{shape.freq, {}};
		const int m = shape.freq.m;
		const int h = shape.freq.default_h;
		const std::size_t length = shape.cycles_train * static_cast<std::size_t>(m) + static_cast<std::size_t>(h);
		for (int k = 0; k < 20; ++k) {
			const std::string id = shape.prefix + (k < 10 ? "0" : "") + std::to_string(k);
			const double level = rng.uniform(80.0, 400.0);
			const double trend = rng.uniform(-0.2, 0.6) * level / 100.0;
			const double amplitude = m > 1 ? rng.uniform(0.05, 0.3) * level : 0.0;
			const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
			const double noise = rng.uniform(0.005, 0.05) * level;
			std::vector<double> values(length);
			for (std::size_t i = 0; i < length; ++i) {
				const double season =
				    m > 1 ? amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / m + phase) : 0.0;
				values[i] = level + trend * static_cast<double>(i) + season + noise * rng.normal();
			}
			// Two spiked series per frequency: the first ids of each group.
			if (k < 2) {
				const int step = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(h)));
				const std::size_t pos = length - static_cast<std::size_t>(h) + static_cast<std::size_t>(step - 1);
				values[pos] += 0.8 * level;
				out.spikes.push_back({id, step, values[pos]});
			}
			group.series.add(TimeSeries(id, shape.freq, std::move(values)));
		}
		out.groups.push_back(std::move(group));
	}
	return out;
}

std::vector<FrequencyGroup> make_seasonal_controls() {
	std::vector<FrequencyGroup> out;
	const std::vector<std::pair<Frequency, std::vector<double>>> patterns = {
	    {Frequency::monthly(), {50, 55, 62, 70, 81, 95, 110, 104, 88, 72, 60, 52}},
	    {Frequency::quarterly(), {120, 180, 150, 90}},
	};
	for (const auto &[freq, pattern] : patterns) {
		FrequencyGroup group{freq, {}};
		for (int k = 0; k < 3; ++k) {
			const double scale = 1.0 + 0.5 * k;
			std::vector<double> values;
			const std::size_t length = 6 * pattern.size() + static_cast<std::size_t>(freq.default_h);
			for (std::size_t i = 0; i < length; ++i) {
				values.push_back(scale * pattern[i % pattern.size()]);
			}
			group.series.add(TimeSeries("C" + freq.name.substr(0, 1) + std::to_string(k), freq, std::move(values)));
		}
		out.push_back(std::move(group));
	}
	return out;
}

RandomFrame random_score_frame(Rng &rng) {
	RandomFrame out;
	out.frame.metric = Metric::smape;
	const std::size_t n_series = 1 + rng.index(40);
	const std::size_t n_models = 1 + rng.index(5);
	const bool coarse = rng.uniform() < 0.35;
	const std::vector<std::pair<std::string, int>> freqs = {{"monthly", 18}, {"quarterly", 8}, {"yearly", 6}};
	std::vector<std::pair<std::string, int>> tags;
	for (std::size_t k = 0; k < n_series; ++k) {
		const auto &f = freqs[rng.index(freqs.size())];
		const std::string id = "s" + std::to_string(1000 + k);
		out.frequency_of[id] = f.first;
		tags.emplace_back(id, f.second);
	}
	for (std::size_t mdl = 0; mdl < n_models; ++mdl) {
		const std::string model = "model" + std::to_string(mdl);
		auto &series_col = out.frame.per_series[model];
		auto &point_col = out.frame.per_point[model];
		for (const auto &[id, h] : tags) {
			std::vector<double> points(static_cast<std::size_t>(h));
			double acc = 0.0;
			for (auto &p : points) {
				p = coarse ? static_cast<double>(rng.index(4)) : rng.uniform(0.0, 60.0);
				acc += p;
			}
			series_col[id] = acc / static_cast<double>(points.size());
			point_col[id] = std::move(points);
		}
	}
	return out;
}

} // namespace tsradar::testing
