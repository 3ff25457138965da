#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avbench/segmentation.hpp"
#include "avbench/telemetry.hpp"

namespace avbench {

enum class DistanceMethod {
  path,   // sum of 3-D chords between consecutive poses
  speed,  // right Riemann sum of measured speed
};

std::string_view to_string(DistanceMethod method);
std::optional<DistanceMethod> parse_distance_method(std::string_view text);

/// Sum of Euclidean chords between consecutive poses with t in [t_i, t_k].
/// A single pose in range gives 0; none throws NoPosesInRange.
double path_distance(std::span<const Pose> poses, Timestamp t_i, Timestamp t_k);

/// sum v_k * (t_k - t_{k-1}) over measured-speed samples with t in
/// [t_i, t_k], starting at the second sample in range. None in range throws
/// NoSpeedInRange.
double speed_distance(std::span<const SpeedSample> speeds, Timestamp t_i,
                      Timestamp t_k);

struct ModeTotals {
  double auto_distance = 0.0;
  double manual_distance = 0.0;
  double auto_uptime = 0.0;
  double manual_uptime = 0.0;
  std::size_t n_interventions = 0;

  ModeTotals& operator+=(const ModeTotals& other);
  friend bool operator==(const ModeTotals&, const ModeTotals&) = default;
};

/// Per-mode distance and uptime over `segments`, filling each
/// Segment::distance.
///
/// Attribution: the chord (or speed interval) that starts at sample j
/// belongs to the segment whose [t_start, t_end) contains t_j, so a chord
/// crossing a boundary is credited to the earlier segment. A
/// positive-length segment lying wholly outside the sampled time span
/// throws SegmentDistanceError.
ModeTotals segment_totals(const DriveLog& log, std::span<Segment> segments,
                          DistanceMethod method);

/// Mean distance/time between interventions, overall and per mode.
/// `std::nullopt` marks the no-intervention state (C/0 -> infinity); the
/// manual ratios are 0 in that state (0/0 -> 0).
struct MetricsReport {
  std::string group_key;
  std::optional<double> mdbi;
  std::optional<double> mtbi;
  std::optional<double> mdbi_a;
  std::optional<double> mtbi_a;
  double mdbi_m = 0.0;
  double mtbi_m = 0.0;
  ModeTotals totals;

  bool no_interventions() const { return totals.n_interventions == 0; }
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport compute_metrics(const ModeTotals& totals, std::string group_key = {});

/// Totals and grouping tags for one log.
struct LogSummary {
  std::string log_id;
  Timestamp start = 0.0;  // first engagement sample
  std::string route;      // from a `route=<name>` note; may be empty
  ModeTotals totals;
};

/// Segments the log and totals it. `fallback_id` is used when the log has
/// no log_id metadata. Throws EmptyChannel without engagement samples.
LogSummary summarize_log(const DriveLog& log, DistanceMethod method,
                         double min_dwell = 0.0, std::string fallback_id = {});

/// Route tag carried in a `route=<name>` note, or empty.
std::string route_of(const DriveLog& log);

/// Inclusive UTC calendar range.
struct CalendarPeriod {
  std::string name;
  std::chrono::sys_days first;
  std::chrono::sys_days last;
};

struct Grouping {
  enum class Kind { none, by_log, by_period, by_route };
  Kind kind = Kind::none;
  std::vector<CalendarPeriod> periods;
};

/// Grammar: `none` | `log` | `route` |
/// `period:<name>=YYYY-MM-DD..YYYY-MM-DD[,<name>=...]`.
/// Throws InvalidArgument.
Grouping parse_grouping(std::string_view spec);
std::string to_string(const Grouping& grouping);

/// One report per group. Totals are summed across members before the
/// ratios are taken. Groups are ordered by log_id, by declaration order of
/// periods, or by route name. A log that falls in no period, or has no
/// route tag under route grouping, throws UnknownGroupKey.
std::vector<MetricsReport> group_metrics(std::span<const LogSummary> logs,
                                         const Grouping& grouping);
std::vector<MetricsReport> group_metrics(std::span<const DriveLog> logs,
                                         const Grouping& grouping,
                                         DistanceMethod method,
                                         double min_dwell = 0.0);

/// Sum over all logs in the given order, keyed "overall".
MetricsReport overall_metrics(std::span<const LogSummary> logs);

}  // namespace avbench
