#include "oracles.hpp"
#include "synthetic.hpp"
#include "tsradar/errors.hpp"
#include "tsradar/forecasters.hpp"
#include "tsradar/numeric.hpp"

#include <doctest.h>

#include <cmath>

using namespace tsradar;

namespace {

TimeSeries ts(std::vector<double> v, Frequency f = Frequency::yearly(), const std::string &id = "s") {
	return TimeSeries(id, std::move(f), std::move(v));
}

std::vector<double> random_walk(testing::Rng &rng, std::size_t n, double start = 100.0) {
	std::vector<double> v(n);
	double x = start;
	for (auto &y : v) {
		x += rng.normal();
		y = x;
	}
	return v;
}

} // namespace

TEST_SUITE("forecasters") {
	TEST_CASE("normal quantile") {
		CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-12));
		CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
		CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
		CHECK(normal_quantile(0.001) == doctest::Approx(-3.090232306167814).epsilon(1e-12));
		CHECK(central_z(0.99) == doctest::Approx(2.5758).epsilon(1e-4));
		CHECK_THROWS_AS(normal_quantile(0.0), InvalidArgument);
		CHECK_THROWS_AS(central_z(1.0), InvalidArgument);
	}

	TEST_CASE("seasonal naive") {
		CHECK(snaive_forecast(ts({1, 2, 3, 4}), 2, 3).yhat == std::vector<double>{3, 4, 3});
		CHECK(snaive_forecast(ts({7, 8, 9}), 1, 2).yhat == std::vector<double>{9, 9});
		CHECK_THROWS_AS(snaive_forecast(ts({1, 2}), 4, 3), SeriesTooShort);
		CHECK(snaive_forecast(ts({1, 2, 3, 4}), 2, 3).model_id == "snaive");
	}

	TEST_CASE("seasonal naive repeats the last cycle") {
		testing::Rng rng(3);
		for (int trial = 0; trial < 200; ++trial) {
			const int m = 1 + static_cast<int>(rng.index(12));
			const std::size_t n = static_cast<std::size_t>(m) + rng.index(30);
			const int h = 1 + static_cast<int>(rng.index(40));
			const auto y = random_walk(rng, n);
			const auto f = snaive_forecast(ts(y), m, h).yhat;
			for (std::size_t j = 0; j < f.size(); ++j) {
				REQUIRE(f[j] == y[n - static_cast<std::size_t>(m) + j % static_cast<std::size_t>(m)]);
				if (j + static_cast<std::size_t>(m) < f.size()) {
					REQUIRE(f[j] == f[j + static_cast<std::size_t>(m)]);
				}
			}
		}
	}

	TEST_CASE("seasonal naive band") {
		const auto flat = snaive_band(ts({5, 5, 5, 5}), 1, 3, 0.99);
		CHECK(flat.lower == std::vector<double>{5, 5, 5});
		CHECK(flat.upper == std::vector<double>{5, 5, 5});

		const auto alt = snaive_band(ts({1, 2, 1, 2, 1, 2}), 2, 1, 0.99);
		CHECK(alt.lower == std::vector<double>{1});
		CHECK(alt.upper == std::vector<double>{1});

		// residuals 2,-1,3,-1: mean 0.75, sum of squared deviations 12.75, sd sqrt(12.75/3).
		const auto b = snaive_band(ts({1, 3, 2, 5, 4}), 1, 2, 0.95);
		const double sd = std::sqrt(12.75 / 3.0);
		CHECK(b.lower[0] == doctest::Approx(4 - 1.959963984540054 * sd));
		CHECK(b.upper[1] == doctest::Approx(4 + 1.959963984540054 * sd * std::sqrt(2.0)));
		CHECK(b.level == 0.95);

		CHECK_THROWS_AS(snaive_band(ts({1, 2, 3}), 2, 2, 0.99), SeriesTooShort);
		CHECK_THROWS_AS(snaive_band(ts({1, 2, 3, 4}), 2, 2, 1.5), InvalidArgument);
	}

	TEST_CASE("seasonal naive band nests across levels") {
		testing::Rng rng(5);
		for (int trial = 0; trial < 100; ++trial) {
			const int m = 1 + static_cast<int>(rng.index(6));
			const std::size_t n = 2 * static_cast<std::size_t>(m) + rng.index(30);
			const auto y = random_walk(rng, n);
			const int h = 1 + static_cast<int>(rng.index(20));
			const auto narrow = snaive_band(ts(y), m, h, 0.95);
			const auto wide = snaive_band(ts(y), m, h, 0.99);
			const auto point = snaive_forecast(ts(y), m, h).yhat;
			for (std::size_t j = 0; j < point.size(); ++j) {
				REQUIRE(wide.lower[j] <= narrow.lower[j]);
				REQUIRE(narrow.upper[j] <= wide.upper[j]);
				REQUIRE(narrow.lower[j] <= point[j]);
				REQUIRE(point[j] <= narrow.upper[j]);
			}
		}
	}

	TEST_CASE("random walk with drift") {
		CHECK(rwd_forecast(ts({1, 2, 3}), 2).yhat == std::vector<double>{4, 5});
		CHECK(rwd_forecast(ts({6, 6, 6, 6}), 3).yhat == std::vector<double>{6, 6, 6});
		CHECK_THROWS_AS(rwd_forecast(ts({3}), 1), SeriesTooShort);
	}

	TEST_CASE("ses degenerate cases") {
		const auto flat = ses_fit_forecast(ts({4, 4, 4, 4}), 3);
		CHECK(flat.forecast.yhat == std::vector<double>{4, 4, 4});
		CHECK(flat.fit.sse == 0.0);

		const auto naive = ses_fit_forecast(ts({3, 9, 1, 7}), 2, SesBounds{1.0, 1.0});
		CHECK(naive.fit.alpha == 1.0);
		CHECK(naive.forecast.yhat == std::vector<double>{7, 7});

		CHECK_THROWS_AS(ses_fit_forecast(ts({1}), 1), SeriesTooShort);
		CHECK_THROWS_AS(ses_fit_forecast(ts({1, 2}), 1, SesBounds{0.5, 0.2}), InvalidArgument);
	}

	TEST_CASE("ses on an alternating series prefers heavy smoothing") {
		std::vector<double> y(50);
		for (std::size_t i = 0; i < y.size(); ++i) {
			y[i] = static_cast<double>(i % 2);
		}
		CHECK(oracle::ses_sse(y, 0.01) < oracle::ses_sse(y, 0.99));
		double best_alpha = 0.0;
		double best = 1e300;
		for (int k = 0; k <= 9800; ++k) {
			const double a = 0.01 + 0.0001 * k;
			if (const double s = oracle::ses_sse(y, a); s < best) {
				best = s;
				best_alpha = a;
			}
		}
		const auto fit = ses_fit_forecast(ts(y), 1).fit;
		CHECK(fit.alpha == doctest::Approx(best_alpha).epsilon(1e-3));
		CHECK(fit.alpha < 0.1);
		CHECK(fit.sse <= best + 1e-9);
	}

	TEST_CASE("ses dominates a uniform alpha grid") {
		testing::Rng rng(17);
		for (int trial = 0; trial < 100; ++trial) {
			const auto y = random_walk(rng, 10 + rng.index(60));
			const auto fit = ses_fit_forecast(ts(y), 1).fit;
			REQUIRE(fit.alpha >= 0.01);
			REQUIRE(fit.alpha <= 0.99);
			REQUIRE(fit.sse == doctest::Approx(oracle::ses_sse(y, fit.alpha)).epsilon(1e-10));
			for (int k = 1; k <= 99; ++k) {
				const double a = k / 100.0;
				REQUIRE(fit.sse <= ses_sse(y, a));
			}
		}
	}

	TEST_CASE("theta constant fixpoint") {
		const auto f = theta_forecast(ts({3, 3, 3, 3, 3}), 1, 4);
		for (double v : f.yhat) {
			CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
		}
	}

	TEST_CASE("theta on a linear series composes OLS and SES") {
		std::vector<double> y(20);
		for (std::size_t i = 0; i < y.size(); ++i) {
			y[i] = static_cast<double>(i + 1);
		}
		const auto [a, b] = oracle::ols(y);
		std::vector<double> line2(y.size());
		for (std::size_t i = 0; i < y.size(); ++i) {
			line2[i] = 2.0 * y[i] - (a + b * static_cast<double>(i + 1));
		}
		const double level = ses_fit_forecast(ts(line2), 1).fit.level_final;
		const auto res = theta_fit_forecast(ts(y), 1, 6);
		CHECK_FALSE(res.deseasonalized);
		for (int h = 1; h <= 6; ++h) {
			const double expected = 0.5 * (a + b * (20.0 + h)) + 0.5 * level;
			CHECK(res.forecast.yhat[static_cast<std::size_t>(h - 1)] == doctest::Approx(expected).epsilon(1e-10));
		}
	}

	TEST_CASE("theta on a periodic series matches a hand-rolled decomposition") {
		const std::vector<double> pattern = {10, 12, 11, 20};
		const int m = 4;
		std::vector<double> y;
		for (int c = 0; c < 4; ++c) {
			y.insert(y.end(), pattern.begin(), pattern.end());
		}
		const std::size_t t = y.size();

		const auto idx = oracle::seasonal_indices_even(y, 4);
		std::vector<double> adj(t);
		for (std::size_t i = 0; i < t; ++i) {
			adj[i] = y[i] / idx[i % 4];
		}
		const auto [a, b] = oracle::ols(adj);
		std::vector<double> line2(t);
		for (std::size_t i = 0; i < t; ++i) {
			line2[i] = 2.0 * adj[i] - (a + b * static_cast<double>(i + 1));
		}
		const double level = ses_fit_forecast(ts(line2), 1).fit.level_final;

		const auto res = theta_fit_forecast(ts(y, Frequency::quarterly()), m, 8);
		REQUIRE(res.deseasonalized);
		REQUIRE(res.seasonal_indices.size() == 4);
		for (std::size_t s = 0; s < 4; ++s) {
			CHECK(res.seasonal_indices[s] == doctest::Approx(idx[s]).epsilon(1e-12));
		}
		for (std::size_t j = 1; j <= 8; ++j) {
			const double flat = 0.5 * (a + b * static_cast<double>(t + j)) + 0.5 * level;
			const double expected = flat * idx[(t + j - 1) % 4];
			CHECK(res.forecast.yhat[j - 1] == doctest::Approx(expected).epsilon(1e-10));
			// The flat deseasonalised forecast is the pattern mean, so the pattern comes back.
			CHECK(res.forecast.yhat[j - 1] == doctest::Approx(pattern[(j - 1) % 4]).epsilon(1e-9));
		}
	}

	TEST_CASE("theta skips seasonal adjustment for non-positive data") {
		std::vector<double> y;
		for (int c = 0; c < 5; ++c) {
			for (double v : {-2.0, 0.0, -1.0, 8.0}) {
				y.push_back(v);
			}
		}
		REQUIRE(seasonality_detected(y, 4));
		const auto res = theta_fit_forecast(ts(y, Frequency::quarterly()), 4, 4);
		CHECK_FALSE(res.deseasonalized);
		CHECK_FALSE(res.note.empty());
		CHECK(multiplicative_seasonal_indices(y, 4) == std::nullopt);
	}

	TEST_CASE("theta preconditions") {
		CHECK_THROWS_AS(theta_forecast(ts({1, 2, 3}), 1, 2), SeriesTooShort);
		CHECK_THROWS_AS(theta_forecast(ts({1, 2, 3, 4, 5, 6, 7}), 4, 2), SeriesTooShort);
	}

	TEST_CASE("forecasters are equivariant under positive affine maps") {
		testing::Rng rng(23);
		for (int trial = 0; trial < 50; ++trial) {
			const auto y = random_walk(rng, 30 + rng.index(20), 50.0);
			const double c = rng.uniform(0.2, 5.0);
			const double d = rng.uniform(-20.0, 20.0);
			std::vector<double> z(y.size());
			for (std::size_t i = 0; i < y.size(); ++i) {
				z[i] = c * y[i] + d;
			}
			const int h = 6;
			const auto check = [&](const std::vector<double> &fy, const std::vector<double> &fz) {
				for (std::size_t j = 0; j < fy.size(); ++j) {
					REQUIRE(fz[j] == doctest::Approx(c * fy[j] + d).epsilon(1e-8));
				}
			};
			check(snaive_forecast(ts(y), 3, h).yhat, snaive_forecast(ts(z), 3, h).yhat);
			check(rwd_forecast(ts(y), h).yhat, rwd_forecast(ts(z), h).yhat);
			check(ses_fit_forecast(ts(y), h).forecast.yhat, ses_fit_forecast(ts(z), h).forecast.yhat);
			check(theta_forecast(ts(y), 1, h).yhat, theta_forecast(ts(z), 1, h).yhat);
		}
	}

	TEST_CASE("seasonal theta is scale equivariant") {
		testing::Rng rng(29);
		for (int trial = 0; trial < 30; ++trial) {
			std::vector<double> y(48);
			for (std::size_t i = 0; i < y.size(); ++i) {
				y[i] = 100.0 + 30.0 * std::sin(static_cast<double>(i) * 3.14159265358979 / 6.0) + 2.0 * rng.normal();
			}
			const double c = rng.uniform(0.1, 10.0);
			std::vector<double> z(y.size());
			for (std::size_t i = 0; i < y.size(); ++i) {
				z[i] = c * y[i];
			}
			const auto ry = theta_fit_forecast(ts(y, Frequency::monthly()), 12, 18);
			const auto rz = theta_fit_forecast(ts(z, Frequency::monthly()), 12, 18);
			REQUIRE(ry.deseasonalized);
			REQUIRE(rz.deseasonalized);
			for (std::size_t j = 0; j < ry.forecast.yhat.size(); ++j) {
				REQUIRE(rz.forecast.yhat[j] == doctest::Approx(c * ry.forecast.yhat[j]).epsilon(1e-8));
			}
		}
	}

	TEST_CASE("run_baselines") {
		SeriesCollection c;
		c.add(ts({1, 2, 3, 4, 5, 6, 7, 8}, Frequency::yearly(), "a"));
		c.add(ts({8, 6, 7, 5, 3, 0, 9, 4}, Frequency::yearly(), "b"));
		const std::vector<Baseline> three = {Baseline::snaive, Baseline::rwd, Baseline::ses};
		auto run = run_baselines(c, three, 2);
		CHECK(run.table.size() == 6);
		CHECK(run.failures.empty());
		CHECK(run.table.find("b", "rwd") != nullptr);

		CHECK(run_baselines(c, std::vector<Baseline>{}, 2).table.empty());

		c.add(ts({1, 2}, Frequency::yearly(), "c"));
		const std::vector<Baseline> theta = {Baseline::theta};
		auto partial = run_baselines(c, theta, 2);
		CHECK(partial.table.size() == 2);
		REQUIRE(partial.failures.size() == 1);
		CHECK(partial.failures[0].series_id == "c");
		CHECK(partial.failures[0].model_id == "theta");
	}

	TEST_CASE("baseline names round trip") {
		for (Baseline b : all_baselines()) {
			CHECK(parse_baseline(to_string(b)) == b);
		}
		CHECK(parse_baseline("arima") == std::nullopt);
	}

	TEST_CASE("forecasts are deterministic") {
		testing::Rng rng(31);
		const auto y = random_walk(rng, 60);
		const auto s = ts(y, Frequency::monthly());
		CHECK(theta_forecast(s, 12, 18).yhat == theta_forecast(s, 12, 18).yhat);
		CHECK(ses_fit_forecast(s, 18).forecast.yhat == ses_fit_forecast(s, 18).forecast.yhat);
		CHECK(snaive_band(s, 12, 18, 0.99).upper == snaive_band(s, 12, 18, 0.99).upper);
	}
}
