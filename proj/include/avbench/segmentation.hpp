#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "avbench/telemetry.hpp"

namespace avbench {

enum class EdgeDirection {
  falling,  // 1 -> 0: disengagement / intervention
  rising,   // 0 -> 1: re-enable
};

struct EdgeEvent {
  Timestamp t = 0.0;
  EdgeDirection direction = EdgeDirection::falling;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

enum class DriveMode { autonomous, manual };

std::string_view to_string(DriveMode mode);

struct Segment {
  DriveMode mode = DriveMode::autonomous;
  Timestamp t_start = 0.0;
  Timestamp t_end = 0.0;
  double distance = 0.0;  // filled by segment_totals
  double uptime = 0.0;    // t_end - t_start

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Value changes of the right-continuous enable signal, each stamped at the
/// sample that reveals it. With `min_dwell > 0`, an edge that follows the
/// last surviving opposite edge by less than `min_dwell` cancels it; the
/// pass runs left to right.
///
/// Throws EmptyChannel for an empty signal and InvalidArgument for a
/// negative dwell.
std::vector<EdgeEvent> detect_edges(std::span<const EngagementSample> engagement,
                                    double min_dwell = 0.0);

/// Alternating mode segments tiling [first.t, last.t]. The first segment
/// takes the first sample's mode.
///
/// A change revealed by the very last sample yields a zero-length final
/// segment, so that every falling edge keeps a manual segment.
std::vector<Segment> build_segments(std::span<const EngagementSample> engagement,
                                    double min_dwell = 0.0);

std::vector<Segment> segments_from_edges(Timestamp first, Timestamp last,
                                         bool initially_enabled,
                                         std::span<const EdgeEvent> edges);

/// Falling edges only: a log that opens in manual mode was never
/// disengaged, so its first manual period is not counted.
std::size_t count_interventions(std::span<const EdgeEvent> edges);
std::size_t count_interventions(std::span<const Segment> segments);

}  // namespace avbench
