#include "tsradar/radar.hpp"

#include "tsradar/errors.hpp"
#include "tsradar/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace tsradar {

namespace {

const std::map<std::string, double> &nonempty_scores(const ScoreFrame &frame, std::string_view model) {
	const auto &scores = frame.series_scores(model);
	if (scores.empty()) {
		throw InvalidArgument("model '" + std::string(model) + "' has no scored series");
	}
	return scores;
}

void require_same_series(const std::map<std::string, double> &a, const std::map<std::string, double> &b,
                         std::string_view name_a, std::string_view name_b) {
	const bool same = a.size() == b.size() &&
	                  std::equal(a.begin(), a.end(), b.begin(), [](const auto &x, const auto &y) {
		                  return x.first == y.first;
	                  });
	if (!same) {
		throw ReconciliationError("models '" + std::string(name_a) + "' and '" + std::string(name_b) +
		                          "' were scored on different series sets");
	}
}

} // namespace

double overall_mean(const ScoreFrame &frame, std::string_view model) {
	const auto &scores = nonempty_scores(frame, model);
	double acc = 0.0;
	for (const auto &[id, s] : scores) {
		acc += s;
	}
	return acc / static_cast<double>(scores.size());
}

double expected_shortfall(const ScoreFrame &frame, std::string_view model, double alpha) {
	if (!(alpha > 0.0 && alpha <= 1.0)) {
		throw InvalidArgument("expected_shortfall: alpha must lie in (0, 1]");
	}
	const auto &scores = nonempty_scores(frame, model);
	std::vector<double> values;
	values.reserve(scores.size());
	for (const auto &[id, s] : scores) {
		values.push_back(s);
	}
	const auto n = values.size();
	auto k = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n)));
	k = std::clamp<std::size_t>(k, 1, n);
	std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end(),
	                  std::greater<>());
	double acc = 0.0;
	for (std::size_t i = 0; i < k; ++i) {
		acc += values[i];
	}
	return acc / static_cast<double>(k);
}

WinLossCell win_loss(const ScoreFrame &frame, std::string_view a, std::string_view b) {
	const auto &sa = frame.series_scores(a);
	const auto &sb = frame.series_scores(b);
	require_same_series(sa, sb, a, b);
	WinLossCell cell{std::string(a), std::string(b)};
	for (auto ia = sa.begin(), ib = sb.begin(); ia != sa.end(); ++ia, ++ib) {
		if (ia->second < ib->second) {
			++cell.wins;
		} else if (ia->second > ib->second) {
			++cell.losses;
		} else {
			++cell.ties;
		}
	}
	cell.n = sa.size();
	return cell;
}

double percent_difference(double a, double b) {
	const double base = (a + b) / 2.0;
	if (a == b) {
		return 0.0;
	}
	return 100.0 * std::abs(a - b) / std::abs(base);
}

RopeTriple rope_compare(const ScoreFrame &frame, std::string_view a, std::string_view b, double rope_pct) {
	if (!(rope_pct >= 0.0)) {
		throw InvalidArgument("rope_compare: rope_pct must be non-negative");
	}
	const auto &sa = frame.series_scores(a);
	const auto &sb = frame.series_scores(b);
	require_same_series(sa, sb, a, b);
	if (sa.empty()) {
		throw InvalidArgument("rope_compare: no series to compare");
	}
	std::size_t wins = 0;
	std::size_t rope = 0;
	std::size_t losses = 0;
	for (auto ia = sa.begin(), ib = sb.begin(); ia != sa.end(); ++ia, ++ib) {
		if (percent_difference(ia->second, ib->second) <= rope_pct) {
			++rope;
		} else if (ia->second < ib->second) {
			++wins;
		} else {
			++losses;
		}
	}
	const double n = static_cast<double>(sa.size());
	RopeTriple t;
	t.rope_pct = rope_pct;
	t.p_win = static_cast<double>(wins) / n;
	t.p_loss = static_cast<double>(losses) / n;
	t.p_rope = static_cast<double>(rope) / n;
	return t;
}

std::vector<FrequencyStratum> stratify_frequency(const ScoreFrame &frame,
                                                 const std::map<std::string, std::string> &frequency_of) {
	std::map<std::string, FrequencyStratum> groups;
	std::set<std::string> universe;
	for (const auto &[model, scores] : frame.per_series) {
		for (const auto &[id, s] : scores) {
			universe.insert(id);
		}
	}
	for (const auto &id : universe) {
		auto it = frequency_of.find(id);
		if (it == frequency_of.end() || it->second.empty()) {
			throw InvalidArgument("series '" + id + "' carries no frequency tag");
		}
		auto &g = groups[it->second];
		g.frequency = it->second;
		g.members.push_back(id);
	}
	std::vector<FrequencyStratum> out;
	for (auto &[label, g] : groups) {
		for (const auto &[model, scores] : frame.per_series) {
			double acc = 0.0;
			std::size_t count = 0;
			for (const auto &id : g.members) {
				if (auto s = scores.find(id); s != scores.end()) {
					acc += s->second;
					++count;
				}
			}
			if (count > 0) {
				g.means[model] = acc / static_cast<double>(count);
			}
		}
		out.push_back(std::move(g));
	}
	return out;
}

std::vector<HorizonBucket> stratify_horizon(const ScoreFrame &frame, HorizonMode mode) {
	std::size_t max_h = 0;
	for (const auto &[model, series] : frame.per_point) {
		for (const auto &[id, points] : series) {
			max_h = std::max(max_h, points.size());
		}
	}
	if (max_h == 0) {
		throw InvalidArgument("stratify_horizon: no pointwise scores");
	}

	auto bucket = [&](std::string label, int h, auto &&pick) {
		HorizonBucket b{std::move(label), h, {}};
		for (const auto &[model, series] : frame.per_point) {
			double acc = 0.0;
			std::size_t count = 0;
			for (const auto &[id, points] : series) {
				if (const double *v = pick(points)) {
					acc += *v;
					++count;
				}
			}
			if (count > 0) {
				b.per_model[model] = {acc / static_cast<double>(count), count};
			}
		}
		return b;
	};
	auto at_step = [](std::size_t idx) {
		return [idx](const std::vector<double> &p) -> const double * { return idx < p.size() ? &p[idx] : nullptr; };
	};

	std::vector<HorizonBucket> out;
	switch (mode) {
	case HorizonMode::first:
		out.push_back(bucket("first", 1, at_step(0)));
		break;
	case HorizonMode::last:
		out.push_back(bucket("last", 0, [](const std::vector<double> &p) -> const double * {
			return p.empty() ? nullptr : &p.back();
		}));
		break;
	case HorizonMode::all:
		for (std::size_t k = 0; k < max_h; ++k) {
			out.push_back(bucket("h=" + std::to_string(k + 1), static_cast<int>(k + 1), at_step(k)));
		}
		break;
	}
	return out;
}

StratumStat pointwise_mean(const ScoreFrame &frame, std::string_view model) {
	for (const auto &[name, series] : frame.per_point) {
		if (name != model) {
			continue;
		}
		double acc = 0.0;
		std::size_t count = 0;
		for (const auto &[id, points] : series) {
			for (double v : points) {
				acc += v;
				++count;
			}
		}
		if (count == 0) {
			break;
		}
		return {acc / static_cast<double>(count), count};
	}
	throw InvalidArgument("model '" + std::string(model) + "' has no pointwise scores");
}

DifficultySplit difficulty_split(const std::map<std::string, double> &baseline_scores, double q) {
	if (!(q > 0.0 && q < 1.0)) {
		throw InvalidArgument("difficulty_split: q must lie in (0, 1)");
	}
	if (baseline_scores.empty()) {
		throw InvalidArgument("difficulty_split: no baseline scores");
	}
	std::vector<double> sorted;
	sorted.reserve(baseline_scores.size());
	for (const auto &[id, s] : baseline_scores) {
		sorted.push_back(s);
	}
	std::sort(sorted.begin(), sorted.end());
	DifficultySplit out;
	out.threshold = linear_quantile(sorted, q);
	for (const auto &[id, s] : baseline_scores) {
		if (s > out.threshold) {
			out.difficult_ids.insert(id);
		}
	}
	return out;
}

AnomalyMask anomaly_mask(const SplitCollection &actuals, const std::map<std::string, PredictionBand> &bands) {
	AnomalyMask mask;
	for (const auto &[id, split] : actuals) {
		auto it = bands.find(id);
		if (it == bands.end()) {
			throw ReconciliationError("no prediction band for series '" + id + "'");
		}
		const auto y = split.test.values();
		const auto &band = it->second;
		if (band.lower.size() < y.size() || band.upper.size() < y.size()) {
			throw ReconciliationError("prediction band for series '" + id + "' is shorter than its test window");
		}
		for (std::size_t j = 0; j < y.size(); ++j) {
			if (y[j] < band.lower[j] || y[j] > band.upper[j]) {
				mask.emplace(id, static_cast<int>(j + 1));
			}
		}
	}
	return mask;
}

MaskedScores masked_scores(const ScoreFrame &frame, const AnomalyMask &mask) {
	MaskedScores out;
	out.frame.metric = frame.metric;
	for (const auto &[model, series] : frame.per_point) {
		auto &col = out.frame.per_series[model];
		auto &pcol = out.frame.per_point[model];
		for (const auto &[id, points] : series) {
			std::vector<double> kept;
			for (std::size_t j = 0; j < points.size(); ++j) {
				if (mask.contains(PointKey{id, static_cast<int>(j + 1)})) {
					kept.push_back(points[j]);
				}
			}
			if (kept.empty()) {
				continue;
			}
			double acc = 0.0;
			for (double v : kept) {
				acc += v;
			}
			col[id] = acc / static_cast<double>(kept.size());
			out.points[id] = kept.size();
			pcol[id] = std::move(kept);
		}
	}
	for (const auto &[id, n] : out.points) {
		out.total_points += n;
	}
	if (out.total_points == 0) {
		throw EmptyStratum("no scored point falls inside the anomaly mask");
	}
	return out;
}

ScoreFrame restrict_series(const ScoreFrame &frame, const std::set<std::string> &ids) {
	ScoreFrame out;
	out.metric = frame.metric;
	out.excluded = frame.excluded;
	for (const auto &[model, scores] : frame.per_series) {
		auto &col = out.per_series[model];
		for (const auto &[id, s] : scores) {
			if (ids.contains(id)) {
				col.emplace(id, s);
			}
		}
	}
	for (const auto &[model, series] : frame.per_point) {
		auto &col = out.per_point[model];
		for (const auto &[id, points] : series) {
			if (ids.contains(id)) {
				col.emplace(id, points);
			}
		}
	}
	return out;
}

} // namespace tsradar
