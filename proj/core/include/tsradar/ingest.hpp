#pragma once

#include "tsradar/forecast_table.hpp"
#include "tsradar/metrics.hpp"
#include "tsradar/report.hpp"
#include "tsradar/timebase.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsradar {

struct RowRejection {
	std::size_t line = 0;
	std::string reason;
};

/// rows_read == rows_accepted + rows_rejected.
struct ParseStats {
	std::size_t rows_read = 0;
	std::size_t rows_accepted = 0;
	std::size_t rows_rejected = 0;
	std::vector<RowRejection> rejections;
};

struct SeriesLoad {
	SeriesCollection series;
	ParseStats stats;
};

/// Long-format `unique_id,ds,y`. Rows are grouped by id and ordered by ds, numerically when every
/// ds of a series is a number and lexicographically otherwise. Malformed rows and non-finite values
/// are rejected and counted; a duplicate (unique_id, ds) is a DataError.
SeriesLoad load_series_csv(const std::filesystem::path &path, const Frequency &freq);

/// Writes `unique_id,ds,y` with ds = 1..t and shortest round-trip values.
void write_series_csv(const SeriesCollection &series, const std::filesystem::path &path);

struct DatasetGroup {
	std::filesystem::path path;
	Frequency freq;
};

struct DatasetManifest {
	struct Group {
		std::filesystem::path path;
		Frequency freq;
		ParseStats stats;
		std::size_t series_built = 0;
		std::optional<std::string> warning;
	};
	std::vector<Group> groups;
};

struct DatasetLoad {
	SeriesCollection series;
	DatasetManifest manifest;
};

/// Loads one file per frequency group into a single collection. Ids must be unique across groups.
DatasetLoad load_dataset(std::span<const DatasetGroup> groups);

struct ForecastLoad {
	ForecastTable table;
	ParseStats stats;
	/// (series, model) pairs dropped in lenient mode, with the reason.
	std::vector<ScoreFrame::Exclusion> dropped;
};

/// Long-format `unique_id,model,h,yhat`. Each (series, model) must cover h = 1..H exactly.
/// Strict mode raises DataError for malformed rows and ReconciliationError for horizon gaps;
/// lenient mode rejects the row or drops the pair. Duplicate keys are always a DataError.
ForecastLoad load_forecast_csv(const std::filesystem::path &path, Validation validation = Validation::strict);

void write_forecast_csv(const ForecastTable &table, const std::filesystem::path &path);

enum class ReportFormat { json, markdown };

/// Canonical JSON (sorted keys, two-space indent, shortest round-trip numbers).
std::string report_to_json(const AspectReport &report);
/// Throws SchemaError for malformed documents or a schema version mismatch.
AspectReport report_from_json(std::string_view text);
std::string render_markdown(const AspectReport &report);

void write_report(const AspectReport &report, const std::filesystem::path &path, ReportFormat format);

/// One CSV per figure type plus index.json. Returns the CSV file names written, in order.
std::vector<std::string> write_plot_data(const AspectReport &report, const std::filesystem::path &dir);

/// Writes `text` to `path`, raising IoError on failure.
void write_text_file(const std::filesystem::path &path, std::string_view text);
std::string read_text_file(const std::filesystem::path &path);

} // namespace tsradar
