#include "cli.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"
#include "tsradar/ingest.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace tsradar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
	int code;
	std::string out;
	std::string err;
};

Outcome call(const std::vector<std::string> &args) {
	std::ostringstream out, err;
	const int code = cli::run(args, out, err);
	return {code, out.str(), err.str()};
}

/// First `count` monthly series of the synthetic collection.
fs::path monthly_file(const fs::path &dir, std::size_t count) {
	const auto golden = testing::make_golden();
	SeriesCollection subset;
	for (const auto &[id, s] : golden.groups[0].series) {
		if (subset.size() == count) {
			break;
		}
		subset.add(s);
	}
	const auto p = dir / "monthly.csv";
	write_series_csv(subset, p);
	return p;
}

std::size_t data_lines(const std::string &text) {
	std::size_t n = 0;
	for (char c : text) {
		n += c == '\n';
	}
	return n - 1;
}

} // namespace

TEST_SUITE("cli") {
	TEST_CASE("forecast writes every row and a manifest") {
		const auto dir = testing::scratch_dir("cli_forecast");
		const auto input = monthly_file(dir, 10);
		const auto res = call({"forecast", "--input", input.string(), "--freq", "monthly", "--models", "snaive,theta",
		                       "--output", (dir / "f.csv").string()});
		REQUIRE(res.code == 0);
		CHECK(data_lines(read_text_file(dir / "f.csv")) == 10 * 2 * 18);
		const auto manifest = nlohmann::json::parse(read_text_file(dir / "f.csv.manifest.json"));
		CHECK(manifest.at("status") == "ok");
		CHECK(manifest.at("series").size() == 10);
		CHECK(manifest.at("forecast_rows") == 360);
	}

	TEST_CASE("configuration errors exit 2") {
		const auto dir = testing::scratch_dir("cli_config");
		const auto input = monthly_file(dir, 2);
		const auto bad_model = call({"forecast", "--input", input.string(), "--models", "snaive,prophet", "--output",
		                             (dir / "f.csv").string()});
		CHECK(bad_model.code == 2);
		CHECK(bad_model.err.find("snaive, rwd, ses, theta") != std::string::npos);
		CHECK(call({"forecast", "--input", input.string(), "--freq", "custom", "--output", (dir / "f.csv").string()})
		          .code == 2);
		CHECK(call({"forecast", "--input", input.string(), "--freq", "weekly", "--output", (dir / "f.csv").string()})
		          .code == 2);
		CHECK(call({"forecast", "--input", input.string(), "--m", "3", "--output", (dir / "f.csv").string()}).code ==
		      2);
		CHECK(call({"forecast", "--input", input.string()}).code == 2);
		CHECK(call({"evaluate", "--input", input.string(), "--forecasts", "x.csv", "--alpha", "0"}).code == 2);
		CHECK(call({"bogus"}).code == 2);
	}

	TEST_CASE("short series: strict fails, lenient skips") {
		const auto dir = testing::scratch_dir("cli_short");
		write_text_file(dir / "s.csv", "unique_id,ds,y\nlong,1,1\nlong,2,2\nlong,3,4\nlong,4,3\nlong,5,5\nlong,6,4\nlong,7,6\nlong,8,7\n"
		                                  "short,1,5\nshort,2,6\n");
		const std::vector<std::string> base = {"forecast", "--input", (dir / "s.csv").string(), "--freq", "custom",
		                                       "--m", "1", "--horizon", "2", "--output", (dir / "f.csv").string()};
		CHECK(call(base).code == 3);
		auto lenient = base;
		lenient.push_back("--lenient");
		REQUIRE(call(lenient).code == 0);
		const auto manifest = nlohmann::json::parse(read_text_file(dir / "f.csv.manifest.json"));
		CHECK(manifest.at("status") == "partial");
		CHECK(manifest.at("series").at("short").at("status") == "skipped");
		CHECK(manifest.at("series").at("long").at("status") == "ok");
	}

	TEST_CASE("evaluate native and external forecasts") {
		const auto dir = testing::scratch_dir("cli_evaluate");
		const auto input = monthly_file(dir, 10);
		REQUIRE(call({"forecast", "--input", input.string(), "--output", (dir / "native.csv").string()}).code == 0);

		// External model: seasonal naive shifted by 2%.
		const auto native = load_forecast_csv(dir / "native.csv").table;
		ForecastTable external;
		for (const auto &[key, fv] : native) {
			if (fv.model_id == "snaive") {
				auto v = fv.yhat;
				for (auto &x : v) {
					x *= 1.02;
				}
				external.add({fv.series_id, "nhits", v});
			}
		}
		write_forecast_csv(external, dir / "nhits.csv");

		const auto res = call({"evaluate", "--input", input.string(), "--freq", "monthly", "--forecasts",
		                       (dir / "native.csv").string() + "," + (dir / "nhits.csv").string(), "--report",
		                       (dir / "r.json").string(), "--plot-dir", (dir / "plots").string(), "--rope", "7.5"});
		REQUIRE(res.code == 0);
		const auto report = report_from_json(read_text_file(dir / "r.json"));
		CHECK(report.models.size() == 5);
		CHECK(report.n_series == 10);
		CHECK(report.config.rope_pct == 7.5);
		CHECK(report.config.alpha == 0.05);
		CHECK(report.rope.size() == 4);
		CHECK(report.echo.at("forecasts").find("nhits.csv") != std::string::npos);
		CHECK(fs::exists(dir / "plots" / "win_probability.csv"));

		const auto to_stdout = call({"evaluate", "--input", input.string(), "--forecasts",
		                             (dir / "native.csv").string(), "--format", "markdown"});
		REQUIRE(to_stdout.code == 0);
		CHECK(to_stdout.out.rfind("# Forecast evaluation report", 0) == 0);
	}

	TEST_CASE("disjoint forecast files fail in strict mode") {
		const auto dir = testing::scratch_dir("cli_disjoint");
		const auto input = monthly_file(dir, 4);
		REQUIRE(call({"forecast", "--input", input.string(), "--models", "snaive", "--output",
		              (dir / "all.csv").string()})
		            .code == 0);
		const auto all = load_forecast_csv(dir / "all.csv").table;
		ForecastTable a, b;
		int k = 0;
		for (const auto &[key, fv] : all) {
			auto copy = fv;
			copy.model_id = k < 2 ? "left" : "right";
			(k++ < 2 ? a : b).add(copy);
		}
		write_forecast_csv(a, dir / "a.csv");
		write_forecast_csv(b, dir / "b.csv");
		const auto res = call({"evaluate", "--input", input.string(), "--forecasts",
		                       (dir / "a.csv").string() + "," + (dir / "b.csv").string()});
		CHECK(res.code == 3);
		CHECK(res.err.find("left") != std::string::npos);
	}

	TEST_CASE("report subcommand") {
		const auto dir = testing::scratch_dir("cli_report");
		const auto input = monthly_file(dir, 6);
		REQUIRE(call({"forecast", "--input", input.string(), "--models", "ses", "--output", (dir / "f.csv").string()})
		            .code == 0);
		REQUIRE(call({"evaluate", "--input", input.string(), "--forecasts", (dir / "f.csv").string(), "--report",
		              (dir / "r.json").string()})
		            .code == 0);
		REQUIRE(call({"report", "--from", (dir / "r.json").string(), "--out", (dir / "a.md").string()}).code == 0);
		REQUIRE(call({"report", "--from", (dir / "r.json").string(), "--out", (dir / "b.md").string()}).code == 0);
		const auto md = read_text_file(dir / "a.md");
		CHECK(md == read_text_file(dir / "b.md"));
		CHECK(md.find("Practical equivalence") == std::string::npos);

		auto text = read_text_file(dir / "r.json");
		write_text_file(dir / "broken.json", text.substr(0, text.size() / 2));
		CHECK(call({"report", "--from", (dir / "broken.json").string()}).code == 4);
		const auto pos = text.find("\"schema_version\": 1");
		text.replace(pos, 19, "\"schema_version\": 9");
		write_text_file(dir / "future.json", text);
		CHECK(call({"report", "--from", (dir / "future.json").string()}).code == 4);
		CHECK(call({"report", "--from", (dir / "missing.json").string()}).code == 3);
	}
}
