#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avbench/geometry.hpp"
#include "avbench/metrics.hpp"
#include "avbench/telemetry.hpp"

namespace avbench {

enum class CountMode {
  sample,  // every disabled pose increments its cell
  edge,    // only the first pose of each contiguous disabled run
};

std::string_view to_string(CountMode mode);
std::optional<CountMode> parse_count_mode(std::string_view text);

struct DbwPose {
  Pose pose;
  bool enabled = false;
};

/// Pairs each pose with the engagement sample nearest in time (ties go to
/// the earlier sample). Throws EmptyChannel if either channel is empty.
std::vector<DbwPose> associate_dbw_pose(const DriveLog& log);

struct GridSpec {
  Point2 origin{0.0, 0.0};
  double cell_size = 1.0;
  CountMode count_mode = CountMode::sample;
};

/// Intervention counts on a regular grid. Cell (ix, iy) covers
/// [origin + ix * cell, origin + (ix + 1) * cell) on each axis; the stored
/// window spans the bounding box of every pose seen, starting at absolute
/// index (x_index0, y_index0).
struct OccupancyGrid {
  Point2 origin;
  double cell_size = 1.0;
  CountMode count_mode = CountMode::sample;
  std::int64_t x_index0 = 0;
  std::int64_t y_index0 = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint64_t> counts;  // x-major: [(ix - x0) * height + (iy - y0)]
  std::vector<double> normalized;     // counts / max(counts), or all zero

  std::uint64_t count_at(std::int64_t ix, std::int64_t iy) const;
  double normalized_at(std::int64_t ix, std::int64_t iy) const;
  std::uint64_t total() const;
  std::uint64_t max_count() const;
};

std::int64_t cell_index(double coordinate, double origin, double cell_size);

/// Throws EmptyChannel, NonPositiveCellSize, or GridTooLarge.
OccupancyGrid build_grid(const DriveLog& log, const GridSpec& spec = {});

/// Accumulates several logs on one grid. Logs are counted on independent
/// partial grids across `jobs` workers and merged by integer addition.
OccupancyGrid build_grid(std::span<const DriveLog> logs, const GridSpec& spec = {},
                         unsigned jobs = 1);

/// Whole-log metrics restricted to a polygon. A chord counts when its
/// starting pose is inside; time is split by the same pose-step rule; an
/// intervention counts when the pose nearest its falling edge is inside.
MetricsReport region_metrics(const DriveLog& log, std::span<const Segment> segments,
                             const Region& region, DistanceMethod method,
                             std::string group_key = "region");

enum class GridFormat { csv, pgm };

/// csv: `x_index,y_index,count,normalized`, non-zero cells, x-major.
/// pgm: plain P2, maxval 255, round-half-up(normalized * 255), top row is
/// the highest y.
std::string export_grid(const OccupancyGrid& grid, GridFormat format);

}  // namespace avbench
