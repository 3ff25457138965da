#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avbench/geometry.hpp"
#include "avbench/metrics.hpp"
#include "avbench/telemetry.hpp"

namespace avbench {

enum class RoadType {
  dynamic,   // no lane definitions, shared with pedestrians
  regular,   // public road with right-of-way rules
  freeway,   // continuous lanes, no intersections
  private_,  // controlled test/development road ("private" in files)
};

inline constexpr std::array<RoadType, 4> kAllRoadTypes = {
    RoadType::dynamic, RoadType::regular, RoadType::freeway, RoadType::private_};

std::string_view to_string(RoadType type);
std::optional<RoadType> parse_road_type(std::string_view text);

struct RoadSegment {
  std::string id;
  RoadType road_type = RoadType::regular;
  std::vector<Point2> polyline;
  double speed_limit = 0.0;  // m/s
};

class RoadNetwork {
 public:
  RoadNetwork() = default;
  /// Validates every segment and sorts by id. Throws MalformedSegment or
  /// DuplicateId (line 0).
  explicit RoadNetwork(std::vector<RoadSegment> segments);

  /// Sorted by id.
  const std::vector<RoadSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  struct Match {
    std::size_t segment = 0;  // index into segments()
    double distance = 0.0;
  };

  /// Closest segment within `tolerance`; equal distances go to the
  /// lexicographically smallest id. Throws EmptyNetwork, or InvalidArgument
  /// for a non-positive tolerance.
  std::optional<Match> nearest(Point2 p, double tolerance) const;

 private:
  void flatten();

  std::vector<RoadSegment> segments_;
  // One entry per polyline edge, grouped by segment in id order.
  std::vector<double> ax_, ay_, bx_, by_;
  std::vector<std::size_t> owner_;
};

/// Line format: `segment,<id>,<type>,<speed_limit_mps>` followed by
/// `pt,x,y` lines. Throws MalformedSegment, DuplicateId, UnknownRoadType
/// with the offending line.
RoadNetwork load_network(std::istream& in);
RoadNetwork load_network(std::string_view text);

inline constexpr double kDefaultMatchTolerance = 5.0;

/// Segment id, or nullopt when nothing lies within tolerance.
std::optional<std::string> match_pose(const RoadNetwork& network, const Pose& pose,
                                      double tolerance = kDefaultMatchTolerance);

struct TripComposition {
  std::array<double, 4> distance{};  // indexed by RoadType
  std::array<double, 4> fraction{};  // of matched distance
  double matched_distance = 0.0;
  double unmatched_distance = 0.0;

  double total_distance() const { return matched_distance + unmatched_distance; }
  double distance_of(RoadType t) const { return distance[static_cast<std::size_t>(t)]; }
  double fraction_of(RoadType t) const { return fraction[static_cast<std::size_t>(t)]; }
};

/// Each inter-pose chord goes to the road type matched at its midpoint.
TripComposition classify_trip(const DriveLog& log, const RoadNetwork& network,
                              double tolerance = kDefaultMatchTolerance);

struct RoadTypeMetrics {
  std::vector<MetricsReport> reports;  // one per type present, keyed by type name
  std::vector<std::string> warnings;
};

/// Per-type MDBI/MTBI. Distance and time use chord-midpoint attribution
/// and each intervention goes to the type matched at its falling-edge pose.
RoadTypeMetrics per_type_metrics(const DriveLog& log, std::span<const Segment> segments,
                                 const RoadNetwork& network,
                                 double tolerance = kDefaultMatchTolerance,
                                 DistanceMethod method = DistanceMethod::path);

struct SpeedViolation {
  Timestamp t = 0.0;
  double v = 0.0;
  double limit = 0.0;
  std::string segment_id;

  friend bool operator==(const SpeedViolation&, const SpeedViolation&) = default;
};

struct SpeedCompliance {
  std::vector<SpeedViolation> violations;
  std::size_t skipped = 0;  // samples whose nearest pose matched nothing
};

/// Measured speeds strictly above the limit of the segment matched at the
/// pose nearest in time.
SpeedCompliance speed_compliance(const DriveLog& log, const RoadNetwork& network,
                                 double tolerance = kDefaultMatchTolerance);

}  // namespace avbench
