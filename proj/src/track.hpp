#pragma once

// Column views of a log used by the distance integrators.

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "avbench/metrics.hpp"
#include "avbench/telemetry.hpp"

namespace avbench::detail {

/// Sample times plus one quantity per interval between consecutive samples:
/// chord length (path) or v_k * dt (speed). steps.size() == t.size() - 1.
struct Track {
  std::vector<double> t;
  std::vector<double> steps;

  bool empty() const { return t.empty(); }

  /// Intervals [lo, hi) whose starting sample time lies in [t_start, t_end).
  std::pair<std::size_t, std::size_t> interval_range(double t_start,
                                                     double t_end) const {
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(t.begin(), t.end(), t_start) - t.begin());
    auto hi = static_cast<std::size_t>(
        std::lower_bound(t.begin(), t.end(), t_end) - t.begin());
    hi = std::min(hi, steps.size());
    return {std::min(lo, hi), hi};
  }

  /// Index of the interval covering time `at`; the first interval extends
  /// to -inf and the last to +inf. Returns 0 for a single-sample track.
  std::size_t interval_at(double at) const {
    if (steps.empty()) { return 0; }
    const auto it = std::upper_bound(t.begin(), t.end(), at);
    const auto idx = it == t.begin() ? std::size_t{0}
                                     : static_cast<std::size_t>(it - t.begin()) - 1;
    return std::min(idx, steps.size() - 1);
  }
};

Track path_track(std::span<const Pose> poses);
Track speed_track(std::span<const SpeedSample> speeds);
Track make_track(const DriveLog& log, DistanceMethod method);

/// Nearest sample to `at` by timestamp, ties to the earlier sample.
/// `times` must be non-empty and sorted.
template <typename T, typename TimeOf>
std::size_t nearest_index(std::span<const T> samples, double at, TimeOf time_of) {
  const auto it = std::lower_bound(
      samples.begin(), samples.end(), at,
      [&](const T& s, double value) { return time_of(s) < value; });
  if (it == samples.begin()) { return 0; }
  if (it == samples.end()) { return samples.size() - 1; }
  const auto after = static_cast<std::size_t>(it - samples.begin());
  const auto before = after - 1;
  const double d_before = at - time_of(samples[before]);
  const double d_after = time_of(samples[after]) - at;
  return d_after < d_before ? after : before;
}

inline std::size_t nearest_pose(std::span<const Pose> poses, double at) {
  return nearest_index(poses, at, [](const Pose& p) { return p.t; });
}

}  // namespace avbench::detail
