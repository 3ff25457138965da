#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "avbench/geometry.hpp"
#include "avbench/intervention_map.hpp"
#include "avbench/metrics.hpp"
#include "avbench/road_network.hpp"
#include "avbench/spectrum.hpp"
#include "avbench/synth.hpp"
#include "avbench/telemetry.hpp"

namespace avbench {

using Json = nlohmann::ordered_json;

/// Every tunable of a run. Printed under "config" in each report.
struct RunConfig {
  DistanceMethod distance_method = DistanceMethod::path;
  double min_dwell = 0.0;
  double cell_size = 1.0;
  CountMode count_mode = CountMode::sample;
  double match_tolerance = kDefaultMatchTolerance;
  double resample_rate = kDefaultResampleRate;
  Window window = Window::hann;
  std::string grouping = "none";
  ControlChannel channel = ControlChannel::speed;
};

/// Throws InvalidArgument naming the first out-of-range field.
void check_config(const RunConfig& config);

/// A parsed input log with the name it is reported under: its log_id, or
/// the file stem when the log carries none.
struct NamedLog {
  std::string name;
  DriveLog log;
};

/// Stable sort by name.
void sort_by_name(std::vector<NamedLog>& logs);

Json config_json(const RunConfig& config);
Json metrics_json(const MetricsReport& report);
Json ground_truth_json(const GroundTruth& truth);
Json grid_json(const OccupancyGrid& grid);
Json composition_json(const TripComposition& composition);
Json spectrum_json(const Spectrum& spec);

// Report sections. Logs must already be sorted by name; `jobs` only
// changes how work is spread across threads, never the result.

/// {"logs": [...], "groups": [...], "overall": {...}}
Json metrics_section(std::span<const NamedLog> logs, const RunConfig& config, unsigned jobs);

/// {"grid": {...}, "cells": [...], "region": {...} | null}
Json map_section(std::span<const NamedLog> logs, const RunConfig& config,
                 const Region* region, unsigned jobs, OccupancyGrid* grid_out = nullptr);

/// One entry per log: composition, per-type metrics, speed compliance.
Json roads_section(std::span<const NamedLog> logs, const RoadNetwork& network,
                   const RunConfig& config, unsigned jobs);

/// One entry per log with both mode spectra, or an "error" string when a
/// mode lacks data.
Json spectrum_section(std::span<const NamedLog> logs, const RunConfig& config, unsigned jobs);

/// Pretty-printed with two-space indent. Floating-point numbers use six
/// fixed decimals; integers print as-is.
std::string dump_json(const Json& value);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace avbench
