#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tsradar::cli {

enum ExitCode : int {
	kOk = 0,
	kConfigError = 2,
	kDataError = 3,
	kSchemaError = 4,
};

/// Parsed command line for every subcommand. Defaults are the evaluation settings used throughout:
/// alpha 0.05, ROPE 5%, difficulty quantile 0.95, band level 0.99.
struct RunConfig {
	std::string subcommand;

	std::vector<std::string> inputs;
	/// One label per input, or a single label shared by all inputs.
	std::vector<std::string> freqs;
	std::optional<int> m;
	std::optional<int> horizon;
	std::vector<std::string> models;
	std::vector<std::string> forecasts;

	double alpha = 0.05;
	double rope_pct = 5.0;
	double difficulty_q = 0.95;
	double band_level = 0.99;
	std::optional<std::string> reference;

	std::string output;
	std::string manifest;
	std::string report;
	std::string format = "json";
	std::string plot_dir;
	std::string from;
	std::string out;

	bool lenient = false;
	/// Reserved; the built-in baselines are deterministic.
	std::optional<std::uint64_t> seed;
};

/// Parses and runs one invocation (`args` excludes the program name). Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int cmd_forecast(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_evaluate(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_report(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace tsradar::cli
