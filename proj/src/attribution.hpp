#pragma once

// Splits per-mode totals across labels (a region, a road type) that are
// assigned to pose intervals. Used by region and road-type metrics.

#include <span>
#include <vector>

#include "avbench/metrics.hpp"
#include "track.hpp"

namespace avbench::detail {

inline constexpr int kUnlabeled = -1;

struct Attribution {
  std::vector<ModeTotals> per_label;
  ModeTotals unlabeled;
};

/// Times of falling edges implied by a segment list, in order.
std::vector<Timestamp> falling_edge_times(std::span<const Segment> segments);

/// `interval_labels[j]` labels pose interval j, i.e. [p_j.t, p_{j+1}.t); the
/// first interval extends back to -inf and the last forward to +inf. With a
/// single pose there is one interval covering all time.
///
/// Distance follows the segment_totals attribution rule; each chord (path)
/// or speed interval (speed) takes the label of the pose interval holding
/// its starting time. Uptime is split by the same step function; a segment
/// lying entirely under one label contributes its exact uptime.
/// `intervention_labels` holds one label per falling edge.
Attribution attribute_totals(const DriveLog& log, std::span<const Segment> segments,
                             DistanceMethod method, const Track& pose_track,
                             std::span<const int> interval_labels,
                             std::span<const int> intervention_labels,
                             std::size_t n_labels);

}  // namespace avbench::detail
