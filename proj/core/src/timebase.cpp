#include "tsradar/timebase.hpp"

#include "tsradar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace tsradar {

Frequency Frequency::monthly() {
	return {"monthly", 12, 18};
}

Frequency Frequency::quarterly() {
	return {"quarterly", 4, 8};
}

Frequency Frequency::yearly() {
	return {"yearly", 1, 6};
}

Frequency Frequency::custom(int m, int h) {
	if (m < 1 || h < 1) {
		throw InvalidArgument("custom frequency needs m >= 1 and h >= 1");
	}
	return {"custom", m, h};
}

std::optional<Frequency> Frequency::preset(std::string_view name) {
	if (name == "monthly") {
		return monthly();
	}
	if (name == "quarterly") {
		return quarterly();
	}
	if (name == "yearly") {
		return yearly();
	}
	return std::nullopt;
}

TimeSeries::TimeSeries(std::string id, Frequency freq, std::vector<double> values, std::optional<std::string> origin)
    : id_(std::move(id)), freq_(std::move(freq)), values_(std::move(values)), origin_(std::move(origin)) {
	if (id_.empty()) {
		throw InvalidArgument("series id must not be empty");
	}
	if (freq_.m < 1 || freq_.default_h < 1) {
		throw InvalidArgument("series '" + id_ + "': frequency needs m >= 1 and h >= 1");
	}
	if (values_.empty()) {
		throw InvalidArgument("series '" + id_ + "' has no observations");
	}
	for (double v : values_) {
		if (!std::isfinite(v)) {
			throw InvalidArgument("series '" + id_ + "' contains a non-finite value");
		}
	}
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
	std::vector<double> part(values_.begin() + static_cast<std::ptrdiff_t>(first),
	                         values_.begin() + static_cast<std::ptrdiff_t>(first + count));
	return TimeSeries(id_, freq_, std::move(part), first == 0 ? origin_ : std::nullopt);
}

void SeriesCollection::add(TimeSeries series) {
	std::string key = series.id();
	auto [it, inserted] = series_.emplace(std::move(key), std::move(series));
	if (!inserted) {
		throw DataError("duplicate series id '" + it->first + "'");
	}
}

const TimeSeries *SeriesCollection::find(std::string_view id) const {
	auto it = series_.find(id);
	return it == series_.end() ? nullptr : &it->second;
}

const TimeSeries &SeriesCollection::at(std::string_view id) const {
	if (const auto *s = find(id)) {
		return *s;
	}
	throw InvalidArgument("unknown series id '" + std::string(id) + "'");
}

int input_size_heuristic(int h, int m) {
	if (h < 1 || m < 1) {
		throw InvalidArgument("input_size_heuristic: h and m must be positive");
	}
	// ceil(1.25 * x) == ceil(5x / 4), kept in integers.
	const long long x = std::max(h, m);
	return static_cast<int>((5 * x + 3) / 4);
}

SplitSeries train_test_split(const TimeSeries &series, int h) {
	if (h < 1) {
		throw InvalidArgument("train_test_split: horizon must be positive");
	}
	const auto hh = static_cast<std::size_t>(h);
	if (series.size() <= hh) {
		throw SeriesTooShort(series.id(), series.size(), hh + 1, "a train/test split with h=" + std::to_string(h));
	}
	const std::size_t n_train = series.size() - hh;
	return SplitSeries{series.slice(0, n_train), series.slice(n_train, hh), h};
}

SplitCollection split_collection(const SeriesCollection &collection, std::optional<int> h,
                                 std::vector<std::pair<std::string, std::string>> *failures) {
	SplitCollection out;
	for (const auto &[id, series] : collection) {
		try {
			out.emplace(id, train_test_split(series, h.value_or(series.frequency().default_h)));
		} catch (const SeriesTooShort &e) {
			if (failures == nullptr) {
				throw;
			}
			failures->emplace_back(id, e.what());
		}
	}
	return out;
}

EmbeddedDataset time_delay_embed(const TimeSeries &series, std::size_t p) {
	if (p < 1) {
		throw InvalidArgument("time_delay_embed: lag count must be positive");
	}
	if (series.size() <= p) {
		throw SeriesTooShort(series.id(), series.size(), p + 1, "time delay embedding with p=" + std::to_string(p));
	}
	const auto y = series.values();
	EmbeddedDataset out;
	out.p = p;
	out.source_id = series.id();
	out.rows.reserve(y.size() - p);
	for (std::size_t i = p; i < y.size(); ++i) {
		EmbeddedRow row;
		row.lags.reserve(p);
		for (std::size_t k = 1; k <= p; ++k) {
			row.lags.push_back(y[i - k]);
		}
		row.target = y[i];
		row.source_id = series.id();
		out.rows.push_back(std::move(row));
	}
	return out;
}

EmbeddedDataset concat_embeddings(const SeriesCollection &collection,
                                  const std::function<std::size_t(const TimeSeries &)> &lags_for) {
	EmbeddedDataset out;
	std::optional<std::size_t> common_p;
	bool mixed = false;
	for (const auto &[id, series] : collection) {
		const std::size_t p = lags_for(series);
		auto part = time_delay_embed(series, p);
		if (common_p && *common_p != p) {
			mixed = true;
		}
		common_p = p;
		out.rows.insert(out.rows.end(), std::make_move_iterator(part.rows.begin()),
		                std::make_move_iterator(part.rows.end()));
	}
	// p stays 0 when members use different lag counts.
	out.p = (!common_p || mixed) ? 0 : *common_p;
	if (collection.size() == 1) {
		out.source_id = collection.begin()->first;
	}
	return out;
}

EmbeddedDataset concat_embeddings(const SeriesCollection &collection, std::size_t p) {
	return concat_embeddings(collection, [p](const TimeSeries &) { return p; });
}

} // namespace tsradar
