#include "tsradar/ingest.hpp"

#include "csv.hpp"
#include "tsradar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tsradar {

std::string read_text_file(const std::filesystem::path &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw IoError("cannot open '" + path.string() + "' for reading");
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out) {
		throw IoError("cannot open '" + path.string() + "' for writing");
	}
	out.write(text.data(), static_cast<std::streamsize>(text.size()));
	if (!out) {
		throw IoError("failed writing '" + path.string() + "'");
	}
}

namespace {

struct Lines {
	std::ifstream in;
	std::size_t number = 0;

	explicit Lines(const std::filesystem::path &path) : in(path) {
		if (!in) {
			throw IoError("cannot open '" + path.string() + "' for reading");
		}
	}
	bool next(std::string &line) {
		if (!std::getline(in, line)) {
			return false;
		}
		++number;
		return true;
	}
};

void expect_header(Lines &lines, const std::filesystem::path &path, const std::vector<std::string> &expected) {
	std::string line;
	if (!lines.next(line)) {
		throw DataError("'" + path.string() + "' is empty; expected a header");
	}
	if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
		line.erase(0, 3);
	}
	auto fields = csv::split_line(line);
	if (!fields || *fields != expected) {
		std::string want;
		for (const auto &f : expected) {
			want += (want.empty() ? "" : ",") + f;
		}
		throw DataError("'" + path.string() + "': header must be exactly " + want);
	}
}

bool blank(const std::string &line) {
	return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

} // namespace

SeriesLoad load_series_csv(const std::filesystem::path &path, const Frequency &freq) {
	Lines lines(path);
	expect_header(lines, path, {"unique_id", "ds", "y"});

	struct Obs {
		std::string ds;
		double y;
	};
	std::map<std::string, std::vector<Obs>> grouped;
	std::set<std::pair<std::string, std::string>> seen;
	SeriesLoad out;
	auto reject = [&](std::size_t line, std::string reason) {
		++out.stats.rows_rejected;
		out.stats.rejections.push_back({line, std::move(reason)});
	};

	std::string line;
	while (lines.next(line)) {
		if (blank(line)) {
			continue;
		}
		++out.stats.rows_read;
		auto fields = csv::split_line(line);
		if (!fields || fields->size() != 3) {
			reject(lines.number, "expected 3 fields");
			continue;
		}
		auto &id = (*fields)[0];
		auto &ds = (*fields)[1];
		if (id.empty()) {
			reject(lines.number, "empty unique_id");
			continue;
		}
		const auto y = csv::parse_double((*fields)[2]);
		if (!y) {
			reject(lines.number, "y is not a number");
			continue;
		}
		if (!std::isfinite(*y)) {
			reject(lines.number, "y is not finite");
			continue;
		}
		if (!seen.emplace(id, ds).second) {
			throw DataError("'" + path.string() + "' line " + std::to_string(lines.number) +
			                ": duplicate key (unique_id '" + id + "', ds '" + ds + "')");
		}
		grouped[id].push_back({std::move(ds), *y});
		++out.stats.rows_accepted;
	}

	for (auto &[id, obs] : grouped) {
		const bool numeric =
		    std::all_of(obs.begin(), obs.end(), [](const Obs &o) { return csv::parse_double(o.ds).has_value(); });
		if (numeric) {
			std::stable_sort(obs.begin(), obs.end(), [](const Obs &a, const Obs &b) {
				return *csv::parse_double(a.ds) < *csv::parse_double(b.ds);
			});
		} else {
			std::stable_sort(obs.begin(), obs.end(), [](const Obs &a, const Obs &b) { return a.ds < b.ds; });
		}
		std::vector<double> values;
		values.reserve(obs.size());
		for (const auto &o : obs) {
			values.push_back(o.y);
		}
		out.series.add(TimeSeries(id, freq, std::move(values), obs.front().ds));
	}
	return out;
}

void write_series_csv(const SeriesCollection &series, const std::filesystem::path &path) {
	std::string text = "unique_id,ds,y\n";
	for (const auto &[id, s] : series) {
		const auto v = s.values();
		for (std::size_t i = 0; i < v.size(); ++i) {
			text += csv::escape(id) + "," + std::to_string(i + 1) + "," + csv::format_double(v[i]) + "\n";
		}
	}
	write_text_file(path, text);
}

DatasetLoad load_dataset(std::span<const DatasetGroup> groups) {
	DatasetLoad out;
	for (const auto &g : groups) {
		auto loaded = load_series_csv(g.path, g.freq);
		DatasetManifest::Group entry{g.path, g.freq, std::move(loaded.stats), loaded.series.size(), std::nullopt};
		if (loaded.series.empty()) {
			entry.warning = "no series built from '" + g.path.string() + "'";
		}
		for (const auto &[id, s] : loaded.series) {
			if (out.series.find(id) != nullptr) {
				throw DataError("series id '" + id + "' appears in more than one input file");
			}
			out.series.add(s);
		}
		out.manifest.groups.push_back(std::move(entry));
	}
	return out;
}

ForecastLoad load_forecast_csv(const std::filesystem::path &path, Validation validation) {
	const bool strict = validation == Validation::strict;
	Lines lines(path);
	expect_header(lines, path, {"unique_id", "model", "h", "yhat"});

	ForecastLoad out;
	std::map<std::pair<std::string, std::string>, std::map<long long, double>> grouped;
	auto reject = [&](std::size_t line, const std::string &reason) {
		if (strict) {
			throw DataError("'" + path.string() + "' line " + std::to_string(line) + ": " + reason);
		}
		++out.stats.rows_rejected;
		out.stats.rejections.push_back({line, reason});
	};

	std::string line;
	while (lines.next(line)) {
		if (blank(line)) {
			continue;
		}
		++out.stats.rows_read;
		auto fields = csv::split_line(line);
		if (!fields || fields->size() != 4) {
			reject(lines.number, "expected 4 fields");
			continue;
		}
		const auto &id = (*fields)[0];
		const auto &model = (*fields)[1];
		if (id.empty() || model.empty()) {
			reject(lines.number, "empty unique_id or model");
			continue;
		}
		const auto h = csv::parse_int((*fields)[2]);
		if (!h || *h < 1) {
			reject(lines.number, "h must be a positive integer");
			continue;
		}
		const auto yhat = csv::parse_double((*fields)[3]);
		if (!yhat || !std::isfinite(*yhat)) {
			reject(lines.number, "yhat is not a finite number");
			continue;
		}
		auto &steps = grouped[{id, model}];
		if (!steps.emplace(*h, *yhat).second) {
			throw DataError("'" + path.string() + "' line " + std::to_string(lines.number) +
			                ": duplicate key (unique_id '" + id + "', model '" + model + "', h " +
			                std::to_string(*h) + ")");
		}
		++out.stats.rows_accepted;
	}

	for (auto &[key, steps] : grouped) {
		const auto &[id, model] = key;
		const long long horizon = steps.rbegin()->first;
		if (static_cast<long long>(steps.size()) != horizon) {
			long long missing = 1;
			while (steps.contains(missing)) {
				++missing;
			}
			const std::string reason = "horizons are not contiguous from 1 (missing h=" + std::to_string(missing) + ")";
			if (strict) {
				throw ReconciliationError("'" + path.string() + "': (series '" + id + "', model '" + model +
				                          "'): " + reason);
			}
			out.dropped.push_back({id, model, reason});
			continue;
		}
		ForecastVector fv{id, model, {}};
		fv.yhat.reserve(steps.size());
		for (const auto &[h, v] : steps) {
			fv.yhat.push_back(v);
		}
		out.table.add(std::move(fv));
	}
	return out;
}

void write_forecast_csv(const ForecastTable &table, const std::filesystem::path &path) {
	std::string text = "unique_id,model,h,yhat\n";
	for (const auto &[key, fv] : table) {
		for (std::size_t j = 0; j < fv.yhat.size(); ++j) {
			text += csv::escape(fv.series_id) + "," + csv::escape(fv.model_id) + "," + std::to_string(j + 1) + "," +
			        csv::format_double(fv.yhat[j]) + "\n";
		}
	}
	write_text_file(path, text);
}

} // namespace tsradar
