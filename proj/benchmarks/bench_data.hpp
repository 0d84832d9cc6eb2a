#pragma once

#include "tsradar/timebase.hpp"

#include <random>
#include <string>
#include <vector>

namespace bench {

inline std::vector<double> seasonal_walk(std::mt19937_64 &rng, std::size_t n, int m) {
	std::normal_distribution<double> noise(0.0, 1.0);
	std::vector<double> v(n);
	double level = 100.0;
	for (std::size_t i = 0; i < n; ++i) {
		level += 0.1 * noise(rng);
		v[i] = level + 10.0 * static_cast<double>(static_cast<int>(i) % m) + noise(rng);
	}
	return v;
}

inline tsradar::SeriesCollection collection(std::size_t count, std::size_t length, const tsradar::Frequency &f) {
	std::mt19937_64 rng(42);
	tsradar::SeriesCollection c;
	for (std::size_t k = 0; k < count; ++k) {
		c.add(tsradar::TimeSeries("s" + std::to_string(k), f, seasonal_walk(rng, length, f.m)));
	}
	return c;
}

} // namespace bench
