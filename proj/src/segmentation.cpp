#include "avbench/segmentation.hpp"

#include <algorithm>

#include "avbench/errors.hpp"

namespace avbench {

std::string_view to_string(DriveMode mode) {
  return mode == DriveMode::autonomous ? "autonomous" : "manual";
}

std::vector<EdgeEvent> detect_edges(std::span<const EngagementSample> engagement,
                                    double min_dwell) {
  if (engagement.empty()) { throw EmptyChannel("engagement"); }
  if (!(min_dwell >= 0.0)) {
    throw InvalidArgument("min_dwell must be non-negative");
  }

  std::vector<EdgeEvent> edges;
  for (std::size_t i = 1; i < engagement.size(); ++i) {
    if (engagement[i].enabled == engagement[i - 1].enabled) { continue; }
    const EdgeEvent edge{engagement[i].t, engagement[i].enabled
                                              ? EdgeDirection::rising
                                              : EdgeDirection::falling};
    // Surviving edges always alternate, so the last one is opposite.
    if (!edges.empty() && edge.t - edges.back().t < min_dwell) {
      edges.pop_back();
      continue;
    }
    edges.push_back(edge);
  }
  return edges;
}

std::vector<Segment> segments_from_edges(Timestamp first, Timestamp last,
                                         bool initially_enabled,
                                         std::span<const EdgeEvent> edges) {
  std::vector<Segment> segments;
  segments.reserve(edges.size() + 1);
  DriveMode mode = initially_enabled ? DriveMode::autonomous : DriveMode::manual;
  Timestamp start = first;
  for (const auto& edge : edges) {
    segments.push_back({mode, start, edge.t, 0.0, edge.t - start});
    mode = edge.direction == EdgeDirection::falling ? DriveMode::manual
                                                    : DriveMode::autonomous;
    start = edge.t;
  }
  segments.push_back({mode, start, last, 0.0, last - start});
  return segments;
}

std::vector<Segment> build_segments(std::span<const EngagementSample> engagement,
                                    double min_dwell) {
  const auto edges = detect_edges(engagement, min_dwell);
  return segments_from_edges(engagement.front().t, engagement.back().t,
                             engagement.front().enabled, edges);
}

std::size_t count_interventions(std::span<const EdgeEvent> edges) {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const EdgeEvent& e) {
        return e.direction == EdgeDirection::falling;
      }));
}

std::size_t count_interventions(std::span<const Segment> segments) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].mode == DriveMode::manual &&
        segments[i - 1].mode == DriveMode::autonomous) {
      ++n;
    }
  }
  return n;
}

}  // namespace avbench
