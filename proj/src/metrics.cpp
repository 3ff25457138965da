#include "avbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "avbench/errors.hpp"
#include "avbench/simd/kernels.hpp"
#include "track.hpp"

namespace avbench {

namespace detail {

Track path_track(std::span<const Pose> poses) {
  Track track;
  const std::size_t n = poses.size();
  track.t.resize(n);
  std::vector<double> xs(n), ys(n), zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    track.t[i] = poses[i].t;
    xs[i] = poses[i].x;
    ys[i] = poses[i].y;
    zs[i] = poses[i].z;
  }
  track.steps.resize(n > 0 ? n - 1 : 0);
  simd::chord_lengths(xs, ys, zs, track.steps);
  return track;
}

Track speed_track(std::span<const SpeedSample> speeds) {
  Track track;
  const std::size_t n = speeds.size();
  track.t.resize(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    track.t[i] = speeds[i].t;
    v[i] = speeds[i].v;
  }
  track.steps.resize(n > 0 ? n - 1 : 0);
  simd::interval_products(v, track.t, track.steps);
  return track;
}

Track make_track(const DriveLog& log, DistanceMethod method) {
  return method == DistanceMethod::path ? path_track(log.poses)
                                        : speed_track(log.speeds);
}

}  // namespace detail

namespace {

template <typename T>
std::pair<std::size_t, std::size_t> closed_range(std::span<const T> samples,
                                                 Timestamp t_i, Timestamp t_k) {
  const auto lo = std::lower_bound(samples.begin(), samples.end(), t_i,
                                   [](const T& s, double t) { return s.t < t; });
  const auto hi = std::upper_bound(samples.begin(), samples.end(), t_k,
                                   [](double t, const T& s) { return t < s.t; });
  return {static_cast<std::size_t>(lo - samples.begin()),
          static_cast<std::size_t>(hi - samples.begin())};
}

void require_ordered(Timestamp t_i, Timestamp t_k) {
  if (!(t_i < t_k)) { throw InvalidArgument("distance range requires t_i < t_k"); }
}

}  // namespace

std::string_view to_string(DistanceMethod method) {
  return method == DistanceMethod::path ? "path" : "speed";
}

std::optional<DistanceMethod> parse_distance_method(std::string_view text) {
  if (text == "path") { return DistanceMethod::path; }
  if (text == "speed") { return DistanceMethod::speed; }
  return std::nullopt;
}

double path_distance(std::span<const Pose> poses, Timestamp t_i, Timestamp t_k) {
  require_ordered(t_i, t_k);
  const auto [lo, hi] = closed_range(poses, t_i, t_k);
  if (lo == hi) { throw NoPosesInRange("no poses in the requested range"); }
  const auto track = detail::path_track(poses.subspan(lo, hi - lo));
  return simd::sum(track.steps);
}

double speed_distance(std::span<const SpeedSample> speeds, Timestamp t_i,
                      Timestamp t_k) {
  require_ordered(t_i, t_k);
  const auto [lo, hi] = closed_range(speeds, t_i, t_k);
  if (lo == hi) { throw NoSpeedInRange("no speed samples in the requested range"); }
  const auto track = detail::speed_track(speeds.subspan(lo, hi - lo));
  return simd::sum(track.steps);
}

ModeTotals& ModeTotals::operator+=(const ModeTotals& other) {
  auto_distance += other.auto_distance;
  manual_distance += other.manual_distance;
  auto_uptime += other.auto_uptime;
  manual_uptime += other.manual_uptime;
  n_interventions += other.n_interventions;
  return *this;
}

ModeTotals segment_totals(const DriveLog& log, std::span<Segment> segments,
                          DistanceMethod method) {
  const auto track = detail::make_track(log, method);
  ModeTotals totals;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    auto& seg = segments[i];
    const bool positive = seg.t_end > seg.t_start;
    if (positive && (track.empty() || seg.t_end < track.t.front() ||
                     seg.t_start > track.t.back())) {
      if (method == DistanceMethod::path) {
        throw SegmentDistanceError(i, NoPosesInRange("no poses cover the segment").what());
      }
      throw SegmentDistanceError(i, NoSpeedInRange("no speed samples cover the segment").what());
    }
    const auto [lo, hi] = track.interval_range(seg.t_start, seg.t_end);
    seg.distance = simd::sum(std::span(track.steps).subspan(lo, hi - lo));
    if (seg.mode == DriveMode::autonomous) {
      totals.auto_distance += seg.distance;
      totals.auto_uptime += seg.uptime;
    } else {
      totals.manual_distance += seg.distance;
      totals.manual_uptime += seg.uptime;
    }
  }
  totals.n_interventions = count_interventions(std::span<const Segment>(segments));
  return totals;
}

MetricsReport compute_metrics(const ModeTotals& totals, std::string group_key) {
  MetricsReport report;
  report.group_key = std::move(group_key);
  report.totals = totals;
  if (totals.n_interventions == 0) { return report; }
  const auto n = static_cast<double>(totals.n_interventions);
  report.mdbi = (totals.auto_distance + totals.manual_distance) / n;
  report.mtbi = (totals.auto_uptime + totals.manual_uptime) / n;
  report.mdbi_a = totals.auto_distance / n;
  report.mtbi_a = totals.auto_uptime / n;
  report.mdbi_m = totals.manual_distance / n;
  report.mtbi_m = totals.manual_uptime / n;
  return report;
}

std::string route_of(const DriveLog& log) {
  std::string route;
  for (const auto& note : log.notes()) {
    if (note.rfind("route=", 0) == 0) { route = note.substr(6); }
  }
  return route;
}

LogSummary summarize_log(const DriveLog& log, DistanceMethod method,
                         double min_dwell, std::string fallback_id) {
  auto segments = build_segments(log.engagement, min_dwell);
  LogSummary summary;
  summary.log_id = log.log_id();
  if (summary.log_id.empty()) { summary.log_id = std::move(fallback_id); }
  summary.start = log.engagement.front().t;
  summary.route = route_of(log);
  summary.totals = segment_totals(log, segments, method);
  return summary;
}

namespace {

std::chrono::sys_days parse_date(std::string_view text) {
  // YYYY-MM-DD
  auto bad = [&] {
    return InvalidArgument("bad date '" + std::string(text) + "', expected YYYY-MM-DD");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') { throw bad(); }
  auto digits = [&](std::size_t pos, std::size_t len) {
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') { throw bad(); }
      value = value * 10 + (text[i] - '0');
    }
    return value;
  };
  const std::chrono::year_month_day ymd{
      std::chrono::year{digits(0, 4)},
      std::chrono::month{static_cast<unsigned>(digits(5, 2))},
      std::chrono::day{static_cast<unsigned>(digits(8, 2))}};
  if (!ymd.ok()) { throw bad(); }
  return std::chrono::sys_days{ymd};
}

std::string format_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::chrono::sys_days utc_day(Timestamp t) {
  const auto secs = std::chrono::sys_seconds{
      std::chrono::seconds{static_cast<std::int64_t>(std::floor(t))}};
  return std::chrono::floor<std::chrono::days>(secs);
}

}  // namespace

Grouping parse_grouping(std::string_view spec) {
  Grouping g;
  if (spec == "none" || spec.empty()) { return g; }
  if (spec == "log") {
    g.kind = Grouping::Kind::by_log;
    return g;
  }
  if (spec == "route") {
    g.kind = Grouping::Kind::by_route;
    return g;
  }
  constexpr std::string_view prefix = "period:";
  if (spec.substr(0, prefix.size()) != prefix) {
    throw InvalidArgument("unknown grouping '" + std::string(spec) + "'");
  }
  g.kind = Grouping::Kind::by_period;
  std::string_view rest = spec.substr(prefix.size());
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    const auto dots = item.find("..");
    if (eq == std::string_view::npos || eq == 0 || dots == std::string_view::npos ||
        dots < eq) {
      throw InvalidArgument("bad period '" + std::string(item) +
                            "', expected name=YYYY-MM-DD..YYYY-MM-DD");
    }
    CalendarPeriod p;
    p.name = std::string(item.substr(0, eq));
    p.first = parse_date(item.substr(eq + 1, dots - eq - 1));
    p.last = parse_date(item.substr(dots + 2));
    if (p.last < p.first) {
      throw InvalidArgument("period '" + p.name + "' ends before it starts");
    }
    g.periods.push_back(std::move(p));
  }
  if (g.periods.empty()) { throw InvalidArgument("period grouping needs at least one range"); }
  return g;
}

std::string to_string(const Grouping& grouping) {
  switch (grouping.kind) {
    case Grouping::Kind::none: return "none";
    case Grouping::Kind::by_log: return "log";
    case Grouping::Kind::by_route: return "route";
    case Grouping::Kind::by_period: break;
  }
  std::string out = "period:";
  for (std::size_t i = 0; i < grouping.periods.size(); ++i) {
    const auto& p = grouping.periods[i];
    if (i > 0) { out += ','; }
    out += p.name + "=" + format_date(p.first) + ".." + format_date(p.last);
  }
  return out;
}

std::vector<MetricsReport> group_metrics(std::span<const LogSummary> logs,
                                         const Grouping& grouping) {
  std::vector<MetricsReport> reports;
  switch (grouping.kind) {
    case Grouping::Kind::none:
      break;
    case Grouping::Kind::by_log:
    case Grouping::Kind::by_route: {
      const bool by_log = grouping.kind == Grouping::Kind::by_log;
      std::map<std::string, ModeTotals> groups;
      for (const auto& log : logs) {
        const std::string& key = by_log ? log.log_id : log.route;
        if (key.empty()) {
          throw UnknownGroupKey("log '" + log.log_id + "' has no " +
                                (by_log ? "log_id" : "route=<name> note"));
        }
        groups[key] += log.totals;
      }
      for (const auto& [key, totals] : groups) {
        reports.push_back(compute_metrics(totals, key));
      }
      break;
    }
    case Grouping::Kind::by_period: {
      std::vector<ModeTotals> totals(grouping.periods.size());
      for (const auto& log : logs) {
        const auto day = utc_day(log.start);
        const auto it = std::find_if(
            grouping.periods.begin(), grouping.periods.end(),
            [&](const CalendarPeriod& p) { return p.first <= day && day <= p.last; });
        if (it == grouping.periods.end()) {
          throw UnknownGroupKey("log '" + log.log_id + "' starts on " +
                                format_date(day) + ", outside every period");
        }
        totals[static_cast<std::size_t>(it - grouping.periods.begin())] += log.totals;
      }
      for (std::size_t i = 0; i < totals.size(); ++i) {
        reports.push_back(compute_metrics(totals[i], grouping.periods[i].name));
      }
      break;
    }
  }
  return reports;
}

std::vector<MetricsReport> group_metrics(std::span<const DriveLog> logs,
                                         const Grouping& grouping,
                                         DistanceMethod method, double min_dwell) {
  std::vector<LogSummary> summaries;
  summaries.reserve(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    summaries.push_back(
        summarize_log(logs[i], method, min_dwell, "log" + std::to_string(i)));
  }
  std::stable_sort(summaries.begin(), summaries.end(),
                   [](const LogSummary& a, const LogSummary& b) {
                     return a.log_id < b.log_id;
                   });
  return group_metrics(std::span<const LogSummary>(summaries), grouping);
}

MetricsReport overall_metrics(std::span<const LogSummary> logs) {
  ModeTotals totals;
  for (const auto& log : logs) { totals += log.totals; }
  return compute_metrics(totals, "overall");
}

}  // namespace avbench
