#pragma once

#include "tsradar/forecasters.hpp"
#include "tsradar/metrics.hpp"
#include "tsradar/timebase.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsradar {

/// Pairwise tally of per-series scores; "win" means model_a scored strictly lower.
struct WinLossCell {
	std::string model_a;
	std::string model_b;
	std::size_t wins = 0;
	std::size_t ties = 0;
	std::size_t losses = 0;
	std::size_t n = 0;
};

/// Fractions of series where model a wins, is practically equivalent, or loses.
struct RopeTriple {
	double p_win = 0.0;
	double p_rope = 0.0;
	double p_loss = 0.0;
	double rope_pct = 0.0;
};

struct StratumStat {
	double mean = 0.0;
	std::size_t count = 0;
};

/// Arithmetic mean of a model's per-series scores.
double overall_mean(const ScoreFrame &frame, std::string_view model);

/// Mean of the ceil(alpha * N) largest per-series scores of `model`.
double expected_shortfall(const ScoreFrame &frame, std::string_view model, double alpha);

WinLossCell win_loss(const ScoreFrame &frame, std::string_view a, std::string_view b);

/// 100 * |a - b| / ((a + b) / 2); 0 when both are 0.
double percent_difference(double a, double b);

/// Per series: practically equivalent when percent_difference <= rope_pct, otherwise win/loss by score.
RopeTriple rope_compare(const ScoreFrame &frame, std::string_view a, std::string_view b, double rope_pct);

struct FrequencyStratum {
	std::string frequency;
	std::vector<std::string> members;
	std::map<std::string, double> means;
};

/// Partitions the frame's series by frequency label and averages each model within each part.
/// Throws InvalidArgument when a scored series has no entry in `frequency_of`.
std::vector<FrequencyStratum> stratify_frequency(const ScoreFrame &frame,
                                                 const std::map<std::string, std::string> &frequency_of);

enum class HorizonMode { first, last, all };

struct HorizonBucket {
	/// "first", "last" or "h=<k>".
	std::string label;
	/// Forecast step for "first" and "h=<k>" buckets; 0 for "last" (each series' own final step).
	int h = 0;
	std::map<std::string, StratumStat> per_model;
};

/// Pointwise means at the first step, at each series' last step, or the full per-step curve.
std::vector<HorizonBucket> stratify_horizon(const ScoreFrame &frame, HorizonMode mode);

/// Mean of all pointwise scores of `model` (every series, every step).
StratumStat pointwise_mean(const ScoreFrame &frame, std::string_view model);

struct DifficultySplit {
	double threshold = 0.0;
	std::set<std::string> difficult_ids;
};

/// Series whose baseline score lies strictly above the linearly interpolated q-quantile.
DifficultySplit difficulty_split(const std::map<std::string, double> &baseline_scores, double q);

/// (series id, forecast step starting at 1).
using PointKey = std::pair<std::string, int>;
using AnomalyMask = std::set<PointKey>;

/// Test points lying outside their band. Throws ReconciliationError when a series has no band
/// or the band is shorter than the test window.
AnomalyMask anomaly_mask(const SplitCollection &actuals, const std::map<std::string, PredictionBand> &bands);

struct MaskedScores {
	/// per_series and per_point restricted to masked points; series without masked points are absent.
	/// per_point vectors hold only the masked steps, in step order.
	ScoreFrame frame;
	/// Masked points per series.
	std::map<std::string, std::size_t> points;
	std::size_t total_points = 0;
};

/// Per-series means over masked points only. Throws EmptyStratum when no scored point is masked.
MaskedScores masked_scores(const ScoreFrame &frame, const AnomalyMask &mask);

/// Copy of `frame` keeping only the given series.
ScoreFrame restrict_series(const ScoreFrame &frame, const std::set<std::string> &ids);

} // namespace tsradar
