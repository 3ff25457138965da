#include "avbench/intervention_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "attribution.hpp"
#include "avbench/errors.hpp"
#include "avbench/parallel.hpp"
#include "avbench/text_format.hpp"
#include "track.hpp"

namespace avbench {

namespace {

constexpr std::size_t kMaxCells = 100'000'000;

struct Extent {
  std::int64_t x_min = std::numeric_limits<std::int64_t>::max();
  std::int64_t x_max = std::numeric_limits<std::int64_t>::min();
  std::int64_t y_min = std::numeric_limits<std::int64_t>::max();
  std::int64_t y_max = std::numeric_limits<std::int64_t>::min();

  bool empty() const { return x_min > x_max; }
};

void check_spec(const GridSpec& spec) {
  if (!(spec.cell_size > 0.0) || !std::isfinite(spec.cell_size)) {
    throw NonPositiveCellSize("cell size must be positive");
  }
}

void check_channels(const DriveLog& log) {
  if (log.poses.empty()) { throw EmptyChannel("poses"); }
  if (log.engagement.empty()) { throw EmptyChannel("engagement"); }
}

OccupancyGrid empty_grid(const Extent& extent, const GridSpec& spec) {
  OccupancyGrid grid;
  grid.origin = spec.origin;
  grid.cell_size = spec.cell_size;
  grid.count_mode = spec.count_mode;
  grid.x_index0 = extent.x_min;
  grid.y_index0 = extent.y_min;
  const auto w = static_cast<double>(extent.x_max) - static_cast<double>(extent.x_min) + 1.0;
  const auto h = static_cast<double>(extent.y_max) - static_cast<double>(extent.y_min) + 1.0;
  if (w * h > static_cast<double>(kMaxCells)) {
    throw GridTooLarge("grid of " + text::format_shortest(w) + " x " +
                       text::format_shortest(h) + " cells exceeds the limit");
  }
  grid.width = static_cast<std::size_t>(w);
  grid.height = static_cast<std::size_t>(h);
  grid.counts.assign(grid.width * grid.height, 0);
  return grid;
}

void count_log(const DriveLog& log, OccupancyGrid& grid) {
  const auto pairs = associate_dbw_pose(log);
  bool previous_disabled = false;
  for (const auto& pair : pairs) {
    const bool disabled = !pair.enabled;
    const bool counts = grid.count_mode == CountMode::sample
                            ? disabled
                            : disabled && !previous_disabled;
    previous_disabled = disabled;
    if (!counts) { continue; }
    const auto ix = cell_index(pair.pose.x, grid.origin.x, grid.cell_size);
    const auto iy = cell_index(pair.pose.y, grid.origin.y, grid.cell_size);
    const auto col = static_cast<std::size_t>(ix - grid.x_index0);
    const auto row = static_cast<std::size_t>(iy - grid.y_index0);
    ++grid.counts[col * grid.height + row];
  }
}

void normalize(OccupancyGrid& grid) {
  const auto max = grid.max_count();
  grid.normalized.assign(grid.counts.size(), 0.0);
  if (max == 0) { return; }
  const auto denom = static_cast<double>(max);
  for (std::size_t i = 0; i < grid.counts.size(); ++i) {
    grid.normalized[i] = static_cast<double>(grid.counts[i]) / denom;
  }
}

}  // namespace

std::string_view to_string(CountMode mode) {
  return mode == CountMode::sample ? "sample" : "edge";
}

std::optional<CountMode> parse_count_mode(std::string_view text) {
  if (text == "sample") { return CountMode::sample; }
  if (text == "edge") { return CountMode::edge; }
  return std::nullopt;
}

std::vector<DbwPose> associate_dbw_pose(const DriveLog& log) {
  check_channels(log);
  const std::span<const EngagementSample> engagement(log.engagement);
  std::vector<DbwPose> out;
  out.reserve(log.poses.size());
  for (const auto& pose : log.poses) {
    const auto idx = detail::nearest_index(engagement, pose.t,
                                           [](const EngagementSample& s) { return s.t; });
    out.push_back({pose, engagement[idx].enabled});
  }
  return out;
}

std::int64_t cell_index(double coordinate, double origin, double cell_size) {
  const double idx = std::floor((coordinate - origin) / cell_size);
  constexpr double kLimit = 4.0e18;
  if (!(std::abs(idx) < kLimit)) { throw GridTooLarge("coordinate out of grid range"); }
  return static_cast<std::int64_t>(idx);
}

std::uint64_t OccupancyGrid::count_at(std::int64_t ix, std::int64_t iy) const {
  if (ix < x_index0 || iy < y_index0) { return 0; }
  const auto col = static_cast<std::size_t>(ix - x_index0);
  const auto row = static_cast<std::size_t>(iy - y_index0);
  if (col >= width || row >= height) { return 0; }
  return counts[col * height + row];
}

double OccupancyGrid::normalized_at(std::int64_t ix, std::int64_t iy) const {
  if (ix < x_index0 || iy < y_index0) { return 0.0; }
  const auto col = static_cast<std::size_t>(ix - x_index0);
  const auto row = static_cast<std::size_t>(iy - y_index0);
  if (col >= width || row >= height) { return 0.0; }
  return normalized[col * height + row];
}

std::uint64_t OccupancyGrid::total() const {
  std::uint64_t total = 0;
  for (const auto c : counts) { total += c; }
  return total;
}

std::uint64_t OccupancyGrid::max_count() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

OccupancyGrid build_grid(const DriveLog& log, const GridSpec& spec) {
  return build_grid(std::span<const DriveLog>(&log, 1), spec, 1);
}

OccupancyGrid build_grid(std::span<const DriveLog> logs, const GridSpec& spec,
                         unsigned jobs) {
  check_spec(spec);
  if (logs.empty()) { throw EmptyChannel("poses"); }
  Extent extent;
  for (const auto& log : logs) {
    check_channels(log);
    for (const auto& pose : log.poses) {
      const auto ix = cell_index(pose.x, spec.origin.x, spec.cell_size);
      const auto iy = cell_index(pose.y, spec.origin.y, spec.cell_size);
      extent.x_min = std::min(extent.x_min, ix);
      extent.x_max = std::max(extent.x_max, ix);
      extent.y_min = std::min(extent.y_min, iy);
      extent.y_max = std::max(extent.y_max, iy);
    }
  }

  OccupancyGrid grid = empty_grid(extent, spec);
  if (jobs <= 1 || logs.size() == 1) {
    for (const auto& log : logs) { count_log(log, grid); }
  } else {
    std::vector<OccupancyGrid> partial(logs.size());
    parallel_for(logs.size(), jobs, [&](std::size_t i) {
      partial[i] = empty_grid(extent, spec);
      count_log(logs[i], partial[i]);
    });
    for (const auto& part : partial) {
      for (std::size_t c = 0; c < grid.counts.size(); ++c) { grid.counts[c] += part.counts[c]; }
    }
  }
  normalize(grid);
  return grid;
}

MetricsReport region_metrics(const DriveLog& log, std::span<const Segment> segments,
                             const Region& region, DistanceMethod method,
                             std::string group_key) {
  if (log.poses.empty()) { throw EmptyChannel("poses"); }
  const auto pose_track = detail::path_track(log.poses);
  const std::size_t intervals = std::max<std::size_t>(pose_track.steps.size(), 1);
  std::vector<int> labels(intervals);
  for (std::size_t j = 0; j < intervals; ++j) {
    const auto& p = log.poses[j];
    labels[j] = region.contains({p.x, p.y}) ? 0 : detail::kUnlabeled;
  }
  std::vector<int> edge_labels;
  for (const auto t : detail::falling_edge_times(segments)) {
    const auto& p = log.poses[detail::nearest_pose(log.poses, t)];
    edge_labels.push_back(region.contains({p.x, p.y}) ? 0 : detail::kUnlabeled);
  }
  const auto attribution =
      detail::attribute_totals(log, segments, method, pose_track, labels, edge_labels, 1);
  return compute_metrics(attribution.per_label.front(), std::move(group_key));
}

std::string export_grid(const OccupancyGrid& grid, GridFormat format) {
  std::ostringstream out;
  if (format == GridFormat::csv) {
    out << "x_index,y_index,count,normalized\n";
    for (std::size_t col = 0; col < grid.width; ++col) {
      for (std::size_t row = 0; row < grid.height; ++row) {
        const auto i = col * grid.height + row;
        if (grid.counts[i] == 0) { continue; }
        out << grid.x_index0 + static_cast<std::int64_t>(col) << ','
            << grid.y_index0 + static_cast<std::int64_t>(row) << ',' << grid.counts[i]
            << ',' << text::format_fixed(grid.normalized[i]) << '\n';
      }
    }
    return out.str();
  }

  out << "P2\n" << grid.width << ' ' << grid.height << "\n255\n";
  for (std::size_t r = 0; r < grid.height; ++r) {
    const std::size_t row = grid.height - 1 - r;
    for (std::size_t col = 0; col < grid.width; ++col) {
      const double v = grid.normalized[col * grid.height + row];
      const auto pixel = static_cast<int>(std::floor(v * 255.0 + 0.5));
      if (col > 0) { out << ' '; }
      out << pixel;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace avbench
