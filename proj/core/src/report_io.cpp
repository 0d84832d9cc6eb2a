#include "csv.hpp"
#include "tsradar/errors.hpp"
#include "tsradar/ingest.hpp"

#include <json.hpp>

#include <cstdio>
#include <set>

namespace tsradar {

using nlohmann::json;

namespace {

json stat_map(const std::map<std::string, StratumStat> &m) {
	json j = json::object();
	for (const auto &[model, s] : m) {
		j[model] = {{"count", s.count}, {"mean", s.mean}};
	}
	return j;
}

std::map<std::string, StratumStat> stat_map_from(const json &j) {
	std::map<std::string, StratumStat> out;
	for (const auto &[model, v] : j.items()) {
		out[model] = {v.at("mean").get<double>(), v.at("count").get<std::size_t>()};
	}
	return out;
}

json bucket_json(const HorizonBucket &b) {
	return {{"h", b.h}, {"label", b.label}, {"per_model", stat_map(b.per_model)}};
}

HorizonBucket bucket_from(const json &j) {
	return {j.at("label").get<std::string>(), j.at("h").get<int>(), stat_map_from(j.at("per_model"))};
}

json triple_json(const RopeTriple &t) {
	return {{"p_loss", t.p_loss}, {"p_rope", t.p_rope}, {"p_win", t.p_win}, {"rope_pct", t.rope_pct}};
}

RopeTriple triple_from(const json &j) {
	return {j.at("p_win").get<double>(), j.at("p_rope").get<double>(), j.at("p_loss").get<double>(),
	        j.at("rope_pct").get<double>()};
}

json condition_json(const ConditionSection &c) {
	return {{"empty", c.empty()}, {"mean", c.mean}, {"series", c.series}, {"shortfall", c.shortfall}};
}

ConditionSection condition_from(const json &j) {
	ConditionSection c;
	c.series = j.at("series").get<std::vector<std::string>>();
	c.mean = j.at("mean").get<std::map<std::string, double>>();
	c.shortfall = j.at("shortfall").get<std::map<std::string, double>>();
	return c;
}

} // namespace

std::string report_to_json(const AspectReport &r) {
	json j;
	j["schema_version"] = r.schema_version;
	j["metric"] = r.metric;
	j["config"] = {{"alpha", r.config.alpha},
	               {"band_level", r.config.band_level},
	               {"difficulty_q", r.config.difficulty_q},
	               {"reference", r.config.reference ? json(*r.config.reference) : json(nullptr)},
	               {"rope_pct", r.config.rope_pct}};
	j["reference"] = r.reference;
	j["models"] = r.models;
	j["n_series"] = r.n_series;
	j["overall"] = r.overall;
	j["shortfall"] = r.shortfall;
	j["pointwise"] = stat_map(r.pointwise);

	json wl = json::array();
	for (const auto &c : r.win_loss) {
		wl.push_back({{"losses", c.losses},
		              {"model_a", c.model_a},
		              {"model_b", c.model_b},
		              {"n", c.n},
		              {"ties", c.ties},
		              {"wins", c.wins}});
	}
	j["win_loss"] = wl;

	json rope = json::array();
	for (const auto &e : r.rope) {
		rope.push_back({{"no_rope", triple_json(e.no_rope)},
		                {"opponent", e.opponent},
		                {"reference", e.reference},
		                {"rope", triple_json(e.rope)}});
	}
	j["rope"] = rope;

	json freq = json::array();
	for (const auto &f : r.frequency) {
		freq.push_back({{"frequency", f.frequency}, {"means", f.means}, {"members", f.members}});
	}
	j["frequency"] = freq;

	json curve = json::array();
	for (const auto &b : r.horizon.curve) {
		curve.push_back(bucket_json(b));
	}
	j["horizon"] = {{"curve", curve}, {"first", bucket_json(r.horizon.first)}, {"last", bucket_json(r.horizon.last)}};

	j["difficulty"] = {{"q", r.difficulty.q},
	                   {"scores", condition_json(r.difficulty.scores)},
	                   {"threshold", r.difficulty.threshold}};

	json points = json::array();
	for (const auto &[id, h] : r.anomalies.points) {
		points.push_back({{"h", h}, {"series", id}});
	}
	j["anomalies"] = {{"band_level", r.anomalies.band_level},
	                  {"points", points},
	                  {"points_per_series", r.anomalies.points_per_series},
	                  {"scores", condition_json(r.anomalies.scores)}};

	if (r.mase) {
		j["mase"] = {{"count", r.mase->count}, {"mean", r.mase->mean}, {"undefined", r.mase->undefined}};
	} else {
		j["mase"] = nullptr;
	}

	j["conventions"] = r.conventions;
	j["echo"] = r.echo;
	json ex = json::array();
	for (const auto &e : r.exclusions) {
		ex.push_back({{"model", e.model_id}, {"reason", e.reason}, {"series", e.series_id}});
	}
	j["exclusions"] = ex;
	return j.dump(2) + "\n";
}

AspectReport report_from_json(std::string_view text) {
	json j;
	try {
		j = json::parse(text);
	} catch (const json::exception &e) {
		throw SchemaError(std::string("report is not valid JSON: ") + e.what());
	}
	try {
		AspectReport r;
		r.schema_version = j.at("schema_version").get<int>();
		if (r.schema_version != kReportSchemaVersion) {
			throw SchemaError("unsupported report schema version " + std::to_string(r.schema_version) +
			                  " (expected " + std::to_string(kReportSchemaVersion) + ")");
		}
		r.metric = j.at("metric").get<std::string>();
		const auto &c = j.at("config");
		r.config.alpha = c.at("alpha").get<double>();
		r.config.band_level = c.at("band_level").get<double>();
		r.config.difficulty_q = c.at("difficulty_q").get<double>();
		r.config.rope_pct = c.at("rope_pct").get<double>();
		if (!c.at("reference").is_null()) {
			r.config.reference = c.at("reference").get<std::string>();
		}
		r.reference = j.at("reference").get<std::string>();
		r.models = j.at("models").get<std::vector<std::string>>();
		r.n_series = j.at("n_series").get<std::size_t>();
		r.overall = j.at("overall").get<std::map<std::string, double>>();
		r.shortfall = j.at("shortfall").get<std::map<std::string, double>>();
		r.pointwise = stat_map_from(j.at("pointwise"));

		for (const auto &w : j.at("win_loss")) {
			r.win_loss.push_back({w.at("model_a").get<std::string>(), w.at("model_b").get<std::string>(),
			                      w.at("wins").get<std::size_t>(), w.at("ties").get<std::size_t>(),
			                      w.at("losses").get<std::size_t>(), w.at("n").get<std::size_t>()});
		}
		for (const auto &e : j.at("rope")) {
			r.rope.push_back({e.at("reference").get<std::string>(), e.at("opponent").get<std::string>(),
			                  triple_from(e.at("no_rope")), triple_from(e.at("rope"))});
		}
		for (const auto &f : j.at("frequency")) {
			r.frequency.push_back({f.at("frequency").get<std::string>(),
			                       f.at("members").get<std::vector<std::string>>(),
			                       f.at("means").get<std::map<std::string, double>>()});
		}
		const auto &hz = j.at("horizon");
		r.horizon.first = bucket_from(hz.at("first"));
		r.horizon.last = bucket_from(hz.at("last"));
		for (const auto &b : hz.at("curve")) {
			r.horizon.curve.push_back(bucket_from(b));
		}
		const auto &d = j.at("difficulty");
		r.difficulty.q = d.at("q").get<double>();
		r.difficulty.threshold = d.at("threshold").get<double>();
		r.difficulty.scores = condition_from(d.at("scores"));
		const auto &a = j.at("anomalies");
		r.anomalies.band_level = a.at("band_level").get<double>();
		for (const auto &p : a.at("points")) {
			r.anomalies.points.emplace_back(p.at("series").get<std::string>(), p.at("h").get<int>());
		}
		r.anomalies.points_per_series = a.at("points_per_series").get<std::map<std::string, std::size_t>>();
		r.anomalies.scores = condition_from(a.at("scores"));
		if (!j.at("mase").is_null()) {
			const auto &m = j.at("mase");
			r.mase = MaseSummary{m.at("mean").get<std::map<std::string, double>>(),
			                     m.at("count").get<std::map<std::string, std::size_t>>(),
			                     m.at("undefined").get<std::size_t>()};
		}
		r.conventions = j.at("conventions").get<std::map<std::string, std::string>>();
		r.echo = j.at("echo").get<std::map<std::string, std::string>>();
		for (const auto &e : j.at("exclusions")) {
			r.exclusions.push_back({e.at("series").get<std::string>(), e.at("model").get<std::string>(),
			                        e.at("reason").get<std::string>()});
		}
		return r;
	} catch (const json::exception &e) {
		throw SchemaError(std::string("report does not match the schema: ") + e.what());
	}
}

namespace {

std::string fixed(double v, int digits = 4) {
	char buf[64];
	std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
	return buf;
}

std::string cell(const std::map<std::string, double> &m, const std::string &key) {
	auto it = m.find(key);
	return it == m.end() ? "-" : fixed(it->second);
}

std::string cell(const std::map<std::string, StratumStat> &m, const std::string &key) {
	auto it = m.find(key);
	return it == m.end() ? "-" : fixed(it->second.mean);
}

void condition_table(std::string &md, const ConditionSection &c) {
	md += "| model | mean | shortfall |\n|---|---:|---:|\n";
	for (const auto &[model, mean] : c.mean) {
		md += "| " + model + " | " + fixed(mean) + " | " + cell(c.shortfall, model) + " |\n";
	}
}

} // namespace

std::string render_markdown(const AspectReport &r) {
	std::string md;
	md += "# Forecast evaluation report\n\n";
	md += "- metric: " + r.metric + "\n";
	md += "- series: " + std::to_string(r.n_series) + "\n";
	md += "- models: " + std::to_string(r.models.size()) + "\n";
	md += "- alpha: " + csv::format_double(r.config.alpha) + ", rope: " + csv::format_double(r.config.rope_pct) +
	      "%, difficulty q: " + csv::format_double(r.config.difficulty_q) +
	      ", band level: " + csv::format_double(r.config.band_level) + "\n";
	if (!r.exclusions.empty()) {
		md += "- excluded pairs: " + std::to_string(r.exclusions.size()) + "\n";
	}

	md += "\n## Overall\n\n| model | mean |\n|---|---:|\n";
	for (const auto &model : r.models) {
		md += "| " + model + " | " + cell(r.overall, model) + " |\n";
	}

	md += "\n## Expected shortfall\n\n| model | shortfall |\n|---|---:|\n";
	for (const auto &model : r.models) {
		md += "| " + model + " | " + cell(r.shortfall, model) + " |\n";
	}

	md += "\n## By frequency\n\n| model |";
	std::string rule = "|---|";
	for (const auto &f : r.frequency) {
		md += " " + f.frequency + " (n=" + std::to_string(f.members.size()) + ") |";
		rule += "---:|";
	}
	md += "\n" + rule + "\n";
	for (const auto &model : r.models) {
		md += "| " + model + " |";
		for (const auto &f : r.frequency) {
			md += " " + cell(f.means, model) + " |";
		}
		md += "\n";
	}

	md += "\n## By horizon\n\n| model | first | last |\n|---|---:|---:|\n";
	for (const auto &model : r.models) {
		md += "| " + model + " | " + cell(r.horizon.first.per_model, model) + " | " +
		      cell(r.horizon.last.per_model, model) + " |\n";
	}

	md += "\n## Difficult series\n\n";
	md += "Threshold " + fixed(r.difficulty.threshold) + " (seasonal naive, q=" +
	      csv::format_double(r.difficulty.q) + "), " + std::to_string(r.difficulty.scores.series.size()) +
	      " series.\n\n";
	if (r.difficulty.scores.empty()) {
		md += "_no difficult series_\n";
	} else {
		condition_table(md, r.difficulty.scores);
	}

	md += "\n## Anomalies\n\n";
	if (r.anomalies.scores.empty()) {
		md += "_no anomalies_\n";
	} else {
		md += std::to_string(r.anomalies.points.size()) + " anomalous points in " +
		      std::to_string(r.anomalies.scores.series.size()) + " series (band level " +
		      csv::format_double(r.anomalies.band_level) + ").\n\n";
		condition_table(md, r.anomalies.scores);
	}

	if (!r.win_loss.empty()) {
		md += "\n## Win/loss\n\n| model | opponent | wins | ties | losses | n |\n|---|---|---:|---:|---:|---:|\n";
		for (const auto &c : r.win_loss) {
			md += "| " + c.model_a + " | " + c.model_b + " | " + std::to_string(c.wins) + " | " +
			      std::to_string(c.ties) + " | " + std::to_string(c.losses) + " | " + std::to_string(c.n) + " |\n";
		}
	}

	if (!r.rope.empty()) {
		md += "\n## Practical equivalence (reference: " + r.reference + ")\n\n";
		md += "| opponent | win | tie | loss | win (ROPE " + csv::format_double(r.config.rope_pct) +
		      "%) | equivalent | loss (ROPE) |\n|---|---:|---:|---:|---:|---:|---:|\n";
		for (const auto &e : r.rope) {
			md += "| " + e.opponent + " | " + fixed(e.no_rope.p_win) + " | " + fixed(e.no_rope.p_rope) + " | " +
			      fixed(e.no_rope.p_loss) + " | " + fixed(e.rope.p_win) + " | " + fixed(e.rope.p_rope) + " | " +
			      fixed(e.rope.p_loss) + " |\n";
		}
	}

	if (r.mase) {
		md += "\n## MASE\n\n| model | mean | series |\n|---|---:|---:|\n";
		for (const auto &[model, mean] : r.mase->mean) {
			md += "| " + model + " | " + fixed(mean) + " | " + std::to_string(r.mase->count.at(model)) + " |\n";
		}
		md += "\nUndefined scores excluded: " + std::to_string(r.mase->undefined) + "\n";
	}
	return md;
}

void write_report(const AspectReport &report, const std::filesystem::path &path, ReportFormat format) {
	write_text_file(path, format == ReportFormat::json ? report_to_json(report) : render_markdown(report));
}

std::vector<std::string> write_plot_data(const AspectReport &r, const std::filesystem::path &dir) {
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if (ec) {
		throw IoError("cannot create plot directory '" + dir.string() + "': " + ec.message());
	}
	std::vector<std::string> written;
	json omitted = json::object();
	json notes = json::object();
	const auto num = [](double v) { return csv::format_double(v); };
	const auto emit = [&](const std::string &name, const std::string &text) {
		write_text_file(dir / name, text);
		written.push_back(name);
	};

	{
		std::string t = "model,mean\n";
		for (const auto &m : r.models) {
			t += csv::escape(m) + "," + num(r.overall.at(m)) + "\n";
		}
		emit("overall.csv", t);
	}
	{
		std::string t = "model,shortfall\n";
		for (const auto &m : r.models) {
			t += csv::escape(m) + "," + num(r.shortfall.at(m)) + "\n";
		}
		emit("shortfall.csv", t);
	}
	{
		std::string t = "model";
		for (const auto &f : r.frequency) {
			t += "," + csv::escape(f.frequency);
		}
		t += "\n";
		for (const auto &m : r.models) {
			t += csv::escape(m);
			for (const auto &f : r.frequency) {
				auto it = f.means.find(m);
				t += "," + (it == f.means.end() ? std::string() : num(it->second));
			}
			t += "\n";
		}
		emit("frequency.csv", t);
	}
	{
		std::string t = "model,first,last\n";
		for (const auto &m : r.models) {
			auto a = r.horizon.first.per_model.find(m);
			auto b = r.horizon.last.per_model.find(m);
			t += csv::escape(m) + "," + (a == r.horizon.first.per_model.end() ? "" : num(a->second.mean)) + "," +
			     (b == r.horizon.last.per_model.end() ? "" : num(b->second.mean)) + "\n";
		}
		emit("horizon.csv", t);
	}
	if (r.rope.empty()) {
		omitted["win_probability.csv"] = "single model: no pairwise comparison";
	} else {
		std::string t = "model,p_win,p_tie,p_loss,p_win_rope,p_rope,p_loss_rope\n";
		for (const auto &e : r.rope) {
			t += csv::escape(e.opponent) + "," + num(e.no_rope.p_win) + "," + num(e.no_rope.p_rope) + "," +
			     num(e.no_rope.p_loss) + "," + num(e.rope.p_win) + "," + num(e.rope.p_rope) + "," +
			     num(e.rope.p_loss) + "\n";
		}
		emit("win_probability.csv", t);
		notes["win_probability.csv"] = "probabilities that '" + r.reference + "' beats each model";
	}
	const auto condition_csv = [&](const std::string &name, const ConditionSection &c, const char *empty_note) {
		std::string t = "model,mean,shortfall\n";
		for (const auto &[m, mean] : c.mean) {
			t += csv::escape(m) + "," + num(mean) + "," + num(c.shortfall.at(m)) + "\n";
		}
		emit(name, t);
		if (c.empty()) {
			notes[name] = empty_note;
		}
	};
	condition_csv("difficulty.csv", r.difficulty.scores, "no difficult series");
	condition_csv("anomalies.csv", r.anomalies.scores, "no anomalies");

	json index = {{"files", written}, {"notes", notes}, {"omitted", omitted}, {"reference", r.reference}};
	write_text_file(dir / "index.json", index.dump(2) + "\n");
	return written;
}

} // namespace tsradar
