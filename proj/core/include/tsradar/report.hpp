#pragma once

#include "tsradar/metrics.hpp"
#include "tsradar/radar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsradar {

inline constexpr int kReportSchemaVersion = 1;

/// Thresholds that drive the aspects. Defaults are the usual settings:
/// 5% shortfall tail, 5% ROPE, 95th percentile difficulty cut, 99% anomaly band.
struct ReportConfig {
	double alpha = 0.05;
	double rope_pct = 5.0;
	double difficulty_q = 0.95;
	double band_level = 0.99;
	/// Model compared against all others for ROPE; the best overall model when unset.
	std::optional<std::string> reference;
};

/// Everything build_report needs besides the score frame.
struct StrataInputs {
	/// series id -> frequency label.
	std::map<std::string, std::string> frequency_of;
	/// series id -> seasonal naive per-series score (difficulty baseline).
	std::map<std::string, double> baseline_scores;
	AnomalyMask anomalies;
};

struct RopeEntry {
	std::string reference;
	std::string opponent;
	RopeTriple no_rope;
	RopeTriple rope;
};

struct HorizonSection {
	HorizonBucket first;
	HorizonBucket last;
	std::vector<HorizonBucket> curve;
};

struct ConditionSection {
	/// Members of the stratum (series ids).
	std::vector<std::string> series;
	std::map<std::string, double> mean;
	std::map<std::string, double> shortfall;
	bool empty() const noexcept {
		return series.empty();
	}
};

struct DifficultySection {
	double q = 0.0;
	double threshold = 0.0;
	ConditionSection scores;
};

struct AnomalySection {
	double band_level = 0.0;
	std::vector<PointKey> points;
	/// Point count behind each series' masked score.
	std::map<std::string, std::size_t> points_per_series;
	ConditionSection scores;
};

struct MaseSummary {
	std::map<std::string, double> mean;
	std::map<std::string, std::size_t> count;
	std::size_t undefined = 0;
};

struct AspectReport {
	int schema_version = kReportSchemaVersion;
	std::string metric;
	ReportConfig config;
	std::string reference;
	std::vector<std::string> models;
	std::size_t n_series = 0;

	std::map<std::string, double> overall;
	std::map<std::string, double> shortfall;
	std::map<std::string, StratumStat> pointwise;

	std::vector<WinLossCell> win_loss;
	std::vector<RopeEntry> rope;

	std::vector<FrequencyStratum> frequency;
	HorizonSection horizon;
	DifficultySection difficulty;
	AnomalySection anomalies;
	std::optional<MaseSummary> mase;

	/// Conventions behind every number (quantile rule, shortfall tail, ROPE base, MASE scale, ...).
	std::map<std::string, std::string> conventions;
	/// Free-form run description (input paths, flags) echoed verbatim.
	std::map<std::string, std::string> echo;
	std::vector<ScoreFrame::Exclusion> exclusions;
};

/// Assembles every aspect for the models in `frame`. `mase_frame`, when given, adds a MASE summary.
AspectReport build_report(const ReportConfig &config, const ScoreFrame &frame, const StrataInputs &strata,
                          const ScoreFrame *mase_frame = nullptr);

} // namespace tsradar
