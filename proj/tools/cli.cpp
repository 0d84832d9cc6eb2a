#include "cli.hpp"

#include "tsradar/errors.hpp"
#include "tsradar/forecasters.hpp"
#include "tsradar/ingest.hpp"
#include "tsradar/metrics.hpp"
#include "tsradar/radar.hpp"
#include "tsradar/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

namespace tsradar::cli {

namespace {

using nlohmann::json;

/// Configuration problem detected after parsing.
struct ConfigError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string> &parts, const char *sep = ",") {
	std::string out;
	for (const auto &p : parts) {
		out += (out.empty() ? "" : sep) + p;
	}
	return out;
}

std::string valid_models() {
	std::vector<std::string> names;
	for (Baseline b : all_baselines()) {
		names.emplace_back(to_string(b));
	}
	return join(names, ", ");
}

std::vector<DatasetGroup> dataset_groups(const RunConfig &c) {
	if (c.inputs.empty()) {
		throw ConfigError("--input is required");
	}
	std::vector<std::string> freqs = c.freqs.empty() ? std::vector<std::string>{"monthly"} : c.freqs;
	if (freqs.size() == 1 && c.inputs.size() > 1) {
		freqs.assign(c.inputs.size(), freqs.front());
	}
	if (freqs.size() != c.inputs.size()) {
		throw ConfigError("--freq must list one frequency per --input file (or a single shared one)");
	}
	std::vector<DatasetGroup> groups;
	for (std::size_t i = 0; i < c.inputs.size(); ++i) {
		Frequency f;
		if (freqs[i] == "custom") {
			if (!c.m || !c.horizon) {
				throw ConfigError("--freq custom requires --m and --horizon");
			}
			if (*c.m < 1 || *c.horizon < 1) {
				throw ConfigError("--m and --horizon must be positive");
			}
			f = Frequency::custom(*c.m, *c.horizon);
		} else if (auto preset = Frequency::preset(freqs[i])) {
			if (c.m) {
				throw ConfigError("--m is only valid with --freq custom");
			}
			f = *preset;
			if (c.horizon) {
				if (*c.horizon < 1) {
					throw ConfigError("--horizon must be positive");
				}
				f.default_h = *c.horizon;
			}
		} else {
			throw ConfigError("unknown frequency '" + freqs[i] + "' (valid: monthly, quarterly, yearly, custom)");
		}
		groups.push_back({c.inputs[i], f});
	}
	return groups;
}

std::vector<Baseline> parse_models(const std::vector<std::string> &names) {
	std::vector<Baseline> out;
	if (names.empty()) {
		auto all = all_baselines();
		return {all.begin(), all.end()};
	}
	for (const auto &n : names) {
		auto b = parse_baseline(n);
		if (!b) {
			throw ConfigError("unknown model '" + n + "' (valid models: " + valid_models() + ")");
		}
		if (std::find(out.begin(), out.end(), *b) == out.end()) {
			out.push_back(*b);
		}
	}
	return out;
}

json stats_json(const ParseStats &s) {
	json rej = json::array();
	for (const auto &r : s.rejections) {
		rej.push_back({{"line", r.line}, {"reason", r.reason}});
	}
	return {{"rejections", rej},
	        {"rows_accepted", s.rows_accepted},
	        {"rows_read", s.rows_read},
	        {"rows_rejected", s.rows_rejected}};
}

json manifest_json(const DatasetManifest &m) {
	json groups = json::array();
	for (const auto &g : m.groups) {
		groups.push_back({{"frequency", g.freq.name},
		                  {"h", g.freq.default_h},
		                  {"m", g.freq.m},
		                  {"path", g.path.string()},
		                  {"series_built", g.series_built},
		                  {"stats", stats_json(g.stats)},
		                  {"warning", g.warning ? json(*g.warning) : json(nullptr)}});
	}
	return groups;
}

void check_thresholds(const RunConfig &c) {
	if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
		throw ConfigError("--alpha must lie in (0, 1]");
	}
	if (!(c.rope_pct >= 0.0)) {
		throw ConfigError("--rope must be non-negative");
	}
	if (!(c.difficulty_q > 0.0 && c.difficulty_q < 1.0)) {
		throw ConfigError("--difficulty-q must lie in (0, 1)");
	}
	if (!(c.band_level > 0.0 && c.band_level < 1.0)) {
		throw ConfigError("--band-level must lie in (0, 1)");
	}
	if (c.format != "json" && c.format != "markdown") {
		throw ConfigError("--format must be json or markdown");
	}
}

template <class Body>
int guarded(std::ostream &err, Body &&body) {
	try {
		return body();
	} catch (const ConfigError &e) {
		err << "error: " << e.what() << "\n";
		return kConfigError;
	} catch (const SchemaError &e) {
		err << "schema error: " << e.what() << "\n";
		return kSchemaError;
	} catch (const Error &e) {
		err << "data error: " << e.what() << "\n";
		return kDataError;
	}
}

} // namespace

int cmd_forecast(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		const auto groups = dataset_groups(config);
		const auto models = parse_models(config.models);
		if (config.output.empty()) {
			throw ConfigError("--output is required");
		}
		auto data = load_dataset(groups);

		json series_status = json::object();
		std::vector<std::string> split_failures;
		SeriesCollection train;
		for (const auto &[id, s] : data.series) {
			try {
				train.add(train_test_split(s, s.frequency().default_h).train);
			} catch (const SeriesTooShort &e) {
				split_failures.push_back(id);
				series_status[id] = {{"status", "skipped"}, {"message", e.what()}};
			}
		}
		auto run = run_baselines(train, models);
		for (const auto &[id, s] : train) {
			series_status[id] = {{"status", "ok"}, {"message", nullptr}};
		}
		json failures = json::array();
		for (const auto &f : run.failures) {
			failures.push_back({{"message", f.message}, {"model", f.model_id}, {"series", f.series_id}});
			series_status[f.series_id] = {{"status", "partial"}, {"message", f.message}};
		}

		const bool partial = !split_failures.empty() || !run.failures.empty();
		std::vector<std::string> model_names;
		for (Baseline b : models) {
			model_names.emplace_back(to_string(b));
		}
		json manifest = {{"failures", failures},
		                 {"forecast_rows", 0},
		                 {"inputs", manifest_json(data.manifest)},
		                 {"lenient", config.lenient},
		                 {"models", model_names},
		                 {"output", config.output},
		                 {"series", series_status}};
		const std::string manifest_path = config.manifest.empty() ? config.output + ".manifest.json" : config.manifest;

		if (partial && !config.lenient) {
			manifest["status"] = "failed";
			write_text_file(manifest_path, manifest.dump(2) + "\n");
			err << "data error: " << split_failures.size() << " series too short, " << run.failures.size()
			    << " model failures (see " << manifest_path << "; use --lenient to skip them)\n";
			return static_cast<int>(kDataError);
		}
		std::size_t rows = 0;
		for (const auto &[key, fv] : run.table) {
			rows += fv.yhat.size();
		}
		write_forecast_csv(run.table, config.output);
		manifest["forecast_rows"] = rows;
		manifest["status"] = partial ? "partial" : "ok";
		write_text_file(manifest_path, manifest.dump(2) + "\n");
		out << "wrote " << rows << " forecast rows for " << train.size() << " series to " << config.output << "\n";
		return static_cast<int>(kOk);
	});
}

int cmd_evaluate(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		const auto groups = dataset_groups(config);
		check_thresholds(config);
		if (config.forecasts.empty()) {
			throw ConfigError("--forecasts is required");
		}
		const auto validation = config.lenient ? Validation::lenient : Validation::strict;
		auto data = load_dataset(groups);

		std::vector<std::pair<std::string, std::string>> split_failures;
		auto actuals = split_collection(data.series, std::nullopt, &split_failures);
		if (!split_failures.empty() && !config.lenient) {
			throw DataError(split_failures.front().second);
		}

		ForecastTable forecasts;
		std::vector<ScoreFrame::Exclusion> dropped;
		for (const auto &path : config.forecasts) {
			auto loaded = load_forecast_csv(path, validation);
			forecasts.merge(loaded.table);
			dropped.insert(dropped.end(), loaded.dropped.begin(), loaded.dropped.end());
		}

		auto frame = score_table(actuals, forecasts, Metric::smape, validation);
		auto mase_frame = score_table(actuals, forecasts, Metric::mase, validation);

		// Seasonal naive drives the difficulty and anomaly conditions whether or not it is evaluated.
		StrataInputs strata;
		std::map<std::string, PredictionBand> bands;
		std::set<std::string> kept;
		std::vector<ScoreFrame::Exclusion> baseline_drops;
		std::set<std::string> scored;
		for (const auto &[model, scores] : frame.per_series) {
			for (const auto &[id, s] : scores) {
				scored.insert(id);
			}
		}
		for (const auto &id : scored) {
			const auto &split = actuals.at(id);
			const int m = split.train.frequency().m;
			try {
				const auto point = snaive_forecast(split.train, m, split.h);
				auto band = snaive_band(split.train, m, split.h, config.band_level);
				strata.baseline_scores[id] = smape(split.test.values(), point.yhat);
				bands.emplace(id, std::move(band));
				strata.frequency_of[id] = split.train.frequency().name;
				kept.insert(id);
			} catch (const SeriesTooShort &e) {
				if (!config.lenient) {
					throw;
				}
				baseline_drops.push_back({id, "snaive", std::string("excluded: ") + e.what()});
			}
		}
		if (kept.size() != scored.size()) {
			frame = restrict_series(frame, kept);
			mase_frame = restrict_series(mase_frame, kept);
		}
		SplitCollection kept_actuals;
		for (const auto &id : kept) {
			kept_actuals.emplace(id, actuals.at(id));
		}
		strata.anomalies = anomaly_mask(kept_actuals, bands);

		frame.excluded.insert(frame.excluded.begin(), dropped.begin(), dropped.end());
		frame.excluded.insert(frame.excluded.end(), baseline_drops.begin(), baseline_drops.end());
		for (const auto &[id, message] : split_failures) {
			frame.excluded.push_back({id, "", "excluded: " + message});
		}

		ReportConfig rc;
		rc.alpha = config.alpha;
		rc.rope_pct = config.rope_pct;
		rc.difficulty_q = config.difficulty_q;
		rc.band_level = config.band_level;
		rc.reference = config.reference;
		auto report = build_report(rc, frame, strata, &mase_frame);

		std::vector<std::string> freq_labels;
		for (const auto &g : groups) {
			freq_labels.push_back(g.freq.name + "(m=" + std::to_string(g.freq.m) + ",h=" +
			                      std::to_string(g.freq.default_h) + ")");
		}
		report.echo = {{"inputs", join(config.inputs)},
		               {"freq", join(freq_labels)},
		               {"forecasts", join(config.forecasts)},
		               {"lenient", config.lenient ? "true" : "false"},
		               {"format", config.format}};
		if (config.seed) {
			report.echo["seed"] = std::to_string(*config.seed);
		}

		const auto format = config.format == "markdown" ? ReportFormat::markdown : ReportFormat::json;
		if (config.report.empty()) {
			out << (format == ReportFormat::json ? report_to_json(report) : render_markdown(report));
		} else {
			write_report(report, config.report, format);
			out << "wrote report for " << report.models.size() << " models over " << report.n_series
			    << " series to " << config.report << "\n";
		}
		if (!config.plot_dir.empty()) {
			write_plot_data(report, config.plot_dir);
		}
		return static_cast<int>(kOk);
	});
}

int cmd_report(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		if (config.from.empty()) {
			throw ConfigError("--from is required");
		}
		const auto report = report_from_json(read_text_file(config.from));
		const auto md = render_markdown(report);
		if (config.out.empty()) {
			out << md;
		} else {
			write_text_file(config.out, md);
		}
		return static_cast<int>(kOk);
	});
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
	RunConfig c;
	CLI::App app{"Aspect-based evaluation of univariate forecasting models", "tsradar"};
	app.require_subcommand(1);

	const auto add_inputs = [&](CLI::App *sub) {
		sub->add_option("--input", c.inputs, "Series CSV (unique_id,ds,y); comma-separated for several files")
		    ->delimiter(',')
		    ->required();
		sub->add_option("--freq", c.freqs, "monthly|quarterly|yearly|custom, one per input or shared")
		    ->delimiter(',');
		sub->add_option("--m", c.m, "Seasonal period for --freq custom");
		sub->add_option("--horizon", c.horizon, "Forecast horizon (required for custom, overrides presets)");
		sub->add_flag("--lenient", c.lenient, "Skip failing series/pairs instead of stopping");
		sub->add_option("--seed", c.seed, "Reserved");
	};

	auto *forecast = app.add_subcommand("forecast", "Run the built-in baselines on the held-out split");
	add_inputs(forecast);
	forecast->add_option("--models", c.models, "snaive,rwd,ses,theta")->delimiter(',');
	forecast->add_option("--output", c.output, "Forecast CSV to write")->required();
	forecast->add_option("--manifest", c.manifest, "Manifest JSON (default: <output>.manifest.json)");

	auto *evaluate = app.add_subcommand("evaluate", "Score forecasts and build the aspect report");
	add_inputs(evaluate);
	evaluate->add_option("--forecasts", c.forecasts, "Forecast CSV(s) (unique_id,model,h,yhat)")
	    ->delimiter(',')
	    ->required();
	evaluate->add_option("--alpha", c.alpha, "Expected shortfall tail fraction")->capture_default_str();
	evaluate->add_option("--rope", c.rope_pct, "Region of practical equivalence, percent")->capture_default_str();
	evaluate->add_option("--difficulty-q", c.difficulty_q, "Seasonal naive quantile for difficult series")
	    ->capture_default_str();
	evaluate->add_option("--band-level", c.band_level, "Seasonal naive band level for anomalies")
	    ->capture_default_str();
	evaluate->add_option("--reference", c.reference, "Reference model for ROPE (default: best overall)");
	evaluate->add_option("--report", c.report, "Report path (default: stdout)");
	evaluate->add_option("--format", c.format, "json|markdown")->capture_default_str();
	evaluate->add_option("--plot-dir", c.plot_dir, "Directory for per-figure CSV data");

	auto *report = app.add_subcommand("report", "Render Markdown from a JSON report");
	report->add_option("--from", c.from, "JSON report")->required();
	report->add_option("--out", c.out, "Markdown output (default: stdout)");

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::ParseError &e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kConfigError);
	}

	if (forecast->parsed()) {
		c.subcommand = "forecast";
		return cmd_forecast(c, out, err);
	}
	if (evaluate->parsed()) {
		c.subcommand = "evaluate";
		return cmd_evaluate(c, out, err);
	}
	c.subcommand = "report";
	return cmd_report(c, out, err);
}

} // namespace tsradar::cli
