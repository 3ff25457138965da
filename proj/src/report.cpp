#include "avbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <system_error>

#include "avbench/errors.hpp"
#include "avbench/parallel.hpp"
#include "avbench/segmentation.hpp"
#include "avbench/text_format.hpp"

namespace avbench {

namespace {

Json number_or_null(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json totals_json(const ModeTotals& t) {
  Json j;
  j["auto_distance"] = t.auto_distance;
  j["manual_distance"] = t.manual_distance;
  j["auto_uptime"] = t.auto_uptime;
  j["manual_uptime"] = t.manual_uptime;
  j["n_interventions"] = static_cast<std::uint64_t>(t.n_interventions);
  return j;
}

Json segment_json(const Segment& s) {
  Json j;
  j["mode"] = std::string(to_string(s.mode));
  j["t_start"] = s.t_start;
  j["t_end"] = s.t_end;
  j["distance"] = s.distance;
  j["uptime"] = s.uptime;
  return j;
}

void dump(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) { out += ",\n"; }
        first = false;
        out += inner;
        out += Json(it.key()).dump();
        out += ": ";
        dump(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) { out += ",\n"; }
        first = false;
        out += inner;
        dump(item, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += text::format_fixed(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

void check_config(const RunConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument(std::string(name) + " must be positive");
    }
  };
  if (!(c.min_dwell >= 0.0) || !std::isfinite(c.min_dwell)) {
    throw InvalidArgument("min_dwell must be non-negative");
  }
  if (!(c.cell_size > 0.0) || !std::isfinite(c.cell_size)) {
    throw NonPositiveCellSize("cell_size must be positive");
  }
  positive(c.match_tolerance, "match_tolerance");
  positive(c.resample_rate, "resample_rate");
  parse_grouping(c.grouping);
}

void sort_by_name(std::vector<NamedLog>& logs) {
  std::stable_sort(logs.begin(), logs.end(),
                   [](const NamedLog& a, const NamedLog& b) { return a.name < b.name; });
}

Json config_json(const RunConfig& c) {
  Json j;
  j["distance_method"] = std::string(to_string(c.distance_method));
  j["min_dwell"] = c.min_dwell;
  j["cell_size"] = c.cell_size;
  j["count_mode"] = std::string(to_string(c.count_mode));
  j["match_tolerance"] = c.match_tolerance;
  j["resample_rate"] = c.resample_rate;
  j["window"] = std::string(to_string(c.window));
  j["grouping"] = to_string(parse_grouping(c.grouping));
  j["channel"] = std::string(to_string(c.channel));
  return j;
}

Json metrics_json(const MetricsReport& r) {
  Json j;
  j["group_key"] = r.group_key;
  j["no_interventions"] = r.no_interventions();
  j["mdbi"] = number_or_null(r.mdbi);
  j["mtbi"] = number_or_null(r.mtbi);
  j["mdbi_a"] = number_or_null(r.mdbi_a);
  j["mtbi_a"] = number_or_null(r.mtbi_a);
  j["mdbi_m"] = r.mdbi_m;
  j["mtbi_m"] = r.mtbi_m;
  const auto totals = totals_json(r.totals);
  for (auto it = totals.begin(); it != totals.end(); ++it) { j[it.key()] = it.value(); }
  return j;
}

Json ground_truth_json(const GroundTruth& truth) {
  Json j;
  j["segments"] = Json::array();
  for (const auto& s : truth.segments) { j["segments"].push_back(segment_json(s)); }
  const auto totals = totals_json(truth.totals);
  for (auto it = totals.begin(); it != totals.end(); ++it) { j[it.key()] = it.value(); }
  return j;
}

Json grid_json(const OccupancyGrid& g) {
  Json j;
  j["origin_x"] = g.origin.x;
  j["origin_y"] = g.origin.y;
  j["cell_size"] = g.cell_size;
  j["count_mode"] = std::string(to_string(g.count_mode));
  j["x_index0"] = g.x_index0;
  j["y_index0"] = g.y_index0;
  j["width"] = static_cast<std::uint64_t>(g.width);
  j["height"] = static_cast<std::uint64_t>(g.height);
  j["total"] = g.total();
  j["max_count"] = g.max_count();
  return j;
}

Json composition_json(const TripComposition& c) {
  Json j;
  j["total_distance"] = c.total_distance();
  j["matched_distance"] = c.matched_distance;
  j["unmatched_distance"] = c.unmatched_distance;
  Json types;
  for (const auto type : kAllRoadTypes) {
    Json t;
    t["distance"] = c.distance_of(type);
    t["fraction"] = c.fraction_of(type);
    types[std::string(to_string(type))] = t;
  }
  j["types"] = types;
  // Private roads are controlled test tracks, reported apart from public use.
  j["private_distance"] = c.distance_of(RoadType::private_);
  j["public_distance"] = c.matched_distance - c.distance_of(RoadType::private_);
  return j;
}

Json spectrum_json(const Spectrum& s) {
  Json j;
  j["resolution_hz"] = s.resolution;
  j["transform_length"] = static_cast<std::uint64_t>(s.transform_length);
  j["peak_hz"] = s.frequency(s.peak_bin());
  j["bins"] = Json::array();
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
    j["bins"].push_back(Json::array({s.frequency(k), s.magnitudes[k]}));
  }
  return j;
}

Json metrics_section(std::span<const NamedLog> logs, const RunConfig& config, unsigned jobs) {
  std::vector<LogSummary> summaries(logs.size());
  std::vector<double> uptimes(logs.size());
  parallel_for(logs.size(), jobs, [&](std::size_t i) {
    summaries[i] = summarize_log(logs[i].log, config.distance_method, config.min_dwell,
                                 logs[i].name);
    summaries[i].log_id = logs[i].name;
    uptimes[i] = trip_uptime(logs[i].log);
  });

  Json j;
  j["logs"] = Json::array();
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    auto entry = metrics_json(compute_metrics(summaries[i].totals, summaries[i].log_id));
    entry["trip_uptime"] = uptimes[i];
    entry["start"] = summaries[i].start;
    entry["route"] = summaries[i].route;
    j["logs"].push_back(entry);
  }
  j["groups"] = Json::array();
  for (const auto& g : group_metrics(summaries, parse_grouping(config.grouping))) {
    j["groups"].push_back(metrics_json(g));
  }
  j["overall"] = metrics_json(overall_metrics(summaries));
  return j;
}

Json map_section(std::span<const NamedLog> logs, const RunConfig& config, const Region* region,
                 unsigned jobs, OccupancyGrid* grid_out) {
  std::vector<DriveLog> plain;
  plain.reserve(logs.size());
  for (const auto& l : logs) { plain.push_back(l.log); }
  GridSpec spec;
  spec.cell_size = config.cell_size;
  spec.count_mode = config.count_mode;
  auto grid = build_grid(plain, spec, jobs);

  Json j;
  j["grid"] = grid_json(grid);
  j["cells"] = Json::array();
  for (std::size_t col = 0; col < grid.width; ++col) {
    for (std::size_t row = 0; row < grid.height; ++row) {
      const auto i = col * grid.height + row;
      if (grid.counts[i] == 0) { continue; }
      Json cell;
      cell["x_index"] = grid.x_index0 + static_cast<std::int64_t>(col);
      cell["y_index"] = grid.y_index0 + static_cast<std::int64_t>(row);
      cell["count"] = grid.counts[i];
      cell["normalized"] = grid.normalized[i];
      j["cells"].push_back(cell);
    }
  }

  if (region != nullptr) {
    std::vector<ModeTotals> parts(logs.size());
    parallel_for(logs.size(), jobs, [&](std::size_t i) {
      const auto segments = build_segments(logs[i].log.engagement, config.min_dwell);
      parts[i] = region_metrics(logs[i].log, segments, *region, config.distance_method).totals;
    });
    ModeTotals sum;
    for (const auto& p : parts) { sum += p; }
    j["region"] = metrics_json(compute_metrics(sum, "region"));
  } else {
    j["region"] = nullptr;
  }
  if (grid_out != nullptr) { *grid_out = std::move(grid); }
  return j;
}

Json roads_section(std::span<const NamedLog> logs, const RoadNetwork& network,
                   const RunConfig& config, unsigned jobs) {
  std::vector<Json> entries(logs.size());
  parallel_for(logs.size(), jobs, [&](std::size_t i) {
    const auto& log = logs[i].log;
    const auto segments = build_segments(log.engagement, config.min_dwell);
    const auto composition = classify_trip(log, network, config.match_tolerance);
    const auto per_type = per_type_metrics(log, segments, network, config.match_tolerance,
                                           config.distance_method);
    Json e;
    e["log_id"] = logs[i].name;
    e["composition"] = composition_json(composition);
    e["per_type"] = Json::array();
    for (const auto& r : per_type.reports) { e["per_type"].push_back(metrics_json(r)); }
    Json warnings = Json::array();
    for (const auto& w : per_type.warnings) { warnings.push_back(w); }
    if (log.speeds.empty()) {
      e["speed_compliance"] = nullptr;
      warnings.push_back("no measured speed samples; speed compliance skipped");
    } else {
      const auto compliance = speed_compliance(log, network, config.match_tolerance);
      Json c;
      c["violations"] = Json::array();
      for (const auto& v : compliance.violations) {
        Json row;
        row["t"] = v.t;
        row["v"] = v.v;
        row["limit"] = v.limit;
        row["segment_id"] = v.segment_id;
        c["violations"].push_back(row);
      }
      c["skipped"] = static_cast<std::uint64_t>(compliance.skipped);
      e["speed_compliance"] = c;
    }
    e["warnings"] = warnings;
    entries[i] = std::move(e);
  });
  Json j = Json::array();
  for (auto& e : entries) { j.push_back(std::move(e)); }
  return j;
}

Json spectrum_section(std::span<const NamedLog> logs, const RunConfig& config, unsigned jobs) {
  std::vector<Json> entries(logs.size());
  parallel_for(logs.size(), jobs, [&](std::size_t i) {
    Json e;
    e["log_id"] = logs[i].name;
    e["channel"] = std::string(to_string(config.channel));
    try {
      const auto segments = build_segments(logs[i].log.engagement, config.min_dwell);
      const auto spectra = compare_modes(logs[i].log, segments, config.channel,
                                         config.resample_rate, config.window);
      e["autonomous"] = spectrum_json(spectra.autonomous);
      e["manual"] = spectrum_json(spectra.manual);
    } catch (const InsufficientModeData& err) {
      e["error"] = err.what();
    }
    entries[i] = std::move(e);
  });
  Json j = Json::array();
  for (auto& e : entries) { j.push_back(std::move(e)); }
  return j;
}

std::string dump_json(const Json& value) {
  std::string out;
  dump(value, out, 0);
  out += '\n';
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) { throw Error("cannot write " + tmp.string()); }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) { throw Error("cannot write " + tmp.string()); }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot write " + path.string());
  }
}

}  // namespace avbench
