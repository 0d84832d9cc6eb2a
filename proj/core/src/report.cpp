#include "tsradar/report.hpp"

#include "tsradar/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace tsradar {

namespace {

void validate(const ReportConfig &c) {
	if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
		throw InvalidArgument("alpha must lie in (0, 1]");
	}
	if (!(c.rope_pct >= 0.0)) {
		throw InvalidArgument("rope_pct must be non-negative");
	}
	if (!(c.difficulty_q > 0.0 && c.difficulty_q < 1.0)) {
		throw InvalidArgument("difficulty_q must lie in (0, 1)");
	}
	if (!(c.band_level > 0.0 && c.band_level < 1.0)) {
		throw InvalidArgument("band_level must lie in (0, 1)");
	}
}

ConditionSection condition(const ScoreFrame &frame, double alpha) {
	ConditionSection out;
	std::set<std::string> ids;
	for (const auto &[model, scores] : frame.per_series) {
		if (scores.empty()) {
			continue;
		}
		out.mean[model] = overall_mean(frame, model);
		out.shortfall[model] = expected_shortfall(frame, model, alpha);
		for (const auto &[id, s] : scores) {
			ids.insert(id);
		}
	}
	out.series.assign(ids.begin(), ids.end());
	return out;
}

} // namespace

AspectReport build_report(const ReportConfig &config, const ScoreFrame &frame, const StrataInputs &strata,
                          const ScoreFrame *mase_frame) {
	validate(config);
	AspectReport r;
	r.metric = std::string(to_string(frame.metric));
	r.config = config;
	r.exclusions = frame.excluded;

	for (const auto &[model, scores] : frame.per_series) {
		if (!scores.empty()) {
			r.models.push_back(model);
		}
	}
	if (r.models.empty()) {
		throw InvalidArgument("build_report: score frame holds no scored model");
	}
	const auto &universe = frame.series_scores(r.models.front());
	r.n_series = universe.size();
	std::set<std::string> series_ids;
	for (const auto &[id, s] : universe) {
		series_ids.insert(id);
	}

	for (const auto &model : r.models) {
		r.overall[model] = overall_mean(frame, model);
		r.shortfall[model] = expected_shortfall(frame, model, config.alpha);
		r.pointwise[model] = pointwise_mean(frame, model);
	}

	for (const auto &a : r.models) {
		for (const auto &b : r.models) {
			if (a != b) {
				r.win_loss.push_back(win_loss(frame, a, b));
			}
		}
	}

	if (config.reference) {
		if (std::find(r.models.begin(), r.models.end(), *config.reference) == r.models.end()) {
			throw ReconciliationError("reference model '" + *config.reference + "' has no scores");
		}
		r.reference = *config.reference;
	} else {
		double best = std::numeric_limits<double>::infinity();
		for (const auto &model : r.models) {
			if (r.overall[model] < best) {
				best = r.overall[model];
				r.reference = model;
			}
		}
	}
	if (r.models.size() > 1) {
		for (const auto &other : r.models) {
			if (other == r.reference) {
				continue;
			}
			r.rope.push_back({r.reference, other, rope_compare(frame, r.reference, other, 0.0),
			                  rope_compare(frame, r.reference, other, config.rope_pct)});
		}
	}

	r.frequency = stratify_frequency(frame, strata.frequency_of);

	r.horizon.first = stratify_horizon(frame, HorizonMode::first).front();
	r.horizon.last = stratify_horizon(frame, HorizonMode::last).front();
	r.horizon.curve = stratify_horizon(frame, HorizonMode::all);

	std::map<std::string, double> baseline;
	for (const auto &id : series_ids) {
		auto it = strata.baseline_scores.find(id);
		if (it == strata.baseline_scores.end()) {
			throw ReconciliationError("no difficulty baseline score for series '" + id + "'");
		}
		baseline.emplace(id, it->second);
	}
	const auto split = difficulty_split(baseline, config.difficulty_q);
	r.difficulty.q = config.difficulty_q;
	r.difficulty.threshold = split.threshold;
	if (!split.difficult_ids.empty()) {
		r.difficulty.scores = condition(restrict_series(frame, split.difficult_ids), config.alpha);
	}

	r.anomalies.band_level = config.band_level;
	AnomalyMask mask;
	for (const auto &key : strata.anomalies) {
		if (series_ids.contains(key.first)) {
			mask.insert(key);
		}
	}
	r.anomalies.points.assign(mask.begin(), mask.end());
	if (!mask.empty()) {
		try {
			auto masked = masked_scores(frame, mask);
			r.anomalies.points_per_series = masked.points;
			r.anomalies.scores = condition(masked.frame, config.alpha);
		} catch (const EmptyStratum &) {
			// Mask points beyond every scored horizon; the section stays empty.
		}
	}

	if (mase_frame != nullptr) {
		MaseSummary ms;
		for (const auto &[model, scores] : mase_frame->per_series) {
			if (scores.empty()) {
				continue;
			}
			ms.mean[model] = overall_mean(*mase_frame, model);
			ms.count[model] = scores.size();
		}
		for (const auto &ex : mase_frame->excluded) {
			if (ex.reason.rfind("undefined MASE", 0) == 0) {
				++ms.undefined;
			}
		}
		r.mase = std::move(ms);
	}

	r.conventions = {
	    {"anomaly", "test point strictly outside the seasonal naive normal band at band_level"},
	    {"difficulty", "seasonal naive score strictly above the difficulty_q quantile"},
	    {"mase_scale", "in-sample seasonal naive MAE of the training series; zero scale excluded"},
	    {"quantile", "linear interpolation between order statistics, position q*(n-1)"},
	    {"reference", config.reference ? "user supplied" : "lowest overall mean"},
	    {"rope_difference", "100*|a-b|/((a+b)/2), both zero counts as equivalent, equivalent when <= rope_pct"},
	    {"shortfall_tail", "mean of the ceil(alpha*N) largest per-series scores"},
	    {"smape_zero_terms", "terms with y = yhat = 0 contribute 0"},
	    {"win_loss", "strictly lower per-series score wins, exact equality is a tie"},
	};
	return r;
}

} // namespace tsradar
