#include "avbench/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>

#include "attribution.hpp"
#include "avbench/errors.hpp"
#include "avbench/simd/kernels.hpp"
#include "avbench/text_format.hpp"
#include "track.hpp"

namespace avbench {

namespace {

void check_segment(const RoadSegment& seg, std::size_t line_no) {
  if (seg.polyline.size() < 2) {
    throw MalformedSegment(line_no, "segment '" + seg.id + "' needs at least 2 points");
  }
  double length = 0.0;
  for (std::size_t i = 1; i < seg.polyline.size(); ++i) {
    length += std::hypot(seg.polyline[i].x - seg.polyline[i - 1].x,
                         seg.polyline[i].y - seg.polyline[i - 1].y);
  }
  if (!(length > 0.0)) {
    throw MalformedSegment(line_no, "segment '" + seg.id + "' has zero length");
  }
  if (!(seg.speed_limit > 0.0)) {
    throw MalformedSegment(line_no, "segment '" + seg.id + "' needs a positive speed limit");
  }
}

void check_tolerance(double tolerance) {
  if (!(tolerance > 0.0)) { throw InvalidArgument("match tolerance must be positive"); }
}

}  // namespace

std::string_view to_string(RoadType type) {
  switch (type) {
    case RoadType::dynamic: return "dynamic";
    case RoadType::regular: return "regular";
    case RoadType::freeway: return "freeway";
    case RoadType::private_: return "private";
  }
  return "regular";
}

std::optional<RoadType> parse_road_type(std::string_view text) {
  for (const auto type : kAllRoadTypes) {
    if (to_string(type) == text) { return type; }
  }
  return std::nullopt;
}

RoadNetwork::RoadNetwork(std::vector<RoadSegment> segments)
    : segments_(std::move(segments)) {
  std::set<std::string> ids;
  for (const auto& seg : segments_) {
    check_segment(seg, 0);
    if (!ids.insert(seg.id).second) { throw DuplicateId(0, seg.id); }
  }
  std::sort(segments_.begin(), segments_.end(),
            [](const RoadSegment& a, const RoadSegment& b) { return a.id < b.id; });
  flatten();
}

void RoadNetwork::flatten() {
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto& line = segments_[s].polyline;
    for (std::size_t i = 1; i < line.size(); ++i) {
      ax_.push_back(line[i - 1].x);
      ay_.push_back(line[i - 1].y);
      bx_.push_back(line[i].x);
      by_.push_back(line[i].y);
      owner_.push_back(s);
    }
  }
}

std::optional<RoadNetwork::Match> RoadNetwork::nearest(Point2 p, double tolerance) const {
  if (segments_.empty()) { throw EmptyNetwork(); }
  check_tolerance(tolerance);
  std::vector<double> dist2(ax_.size());
  simd::point_segment_dist2(p.x, p.y, ax_, ay_, bx_, by_, dist2);
  std::size_t best = 0;
  for (std::size_t e = 1; e < dist2.size(); ++e) {
    if (dist2[e] < dist2[best]) { best = e; }
  }
  const double distance = std::sqrt(dist2[best]);
  if (!(distance <= tolerance)) { return std::nullopt; }
  return Match{owner_[best], distance};
}

RoadNetwork load_network(std::istream& in) {
  std::vector<RoadSegment> segments;
  std::vector<std::size_t> header_lines;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;

  auto close_segment = [&] {
    if (!segments.empty()) { check_segment(segments.back(), header_lines.back()); }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_ignorable(line)) { continue; }
    const auto fields = text::split_fields(line);
    if (fields[0] == "segment") {
      if (fields.size() != 4) {
        throw MalformedSegment(line_no, "expected 'segment,<id>,<type>,<speed_limit_mps>'");
      }
      close_segment();
      if (fields[1].empty()) { throw MalformedSegment(line_no, "empty id"); }
      const auto type = parse_road_type(fields[2]);
      if (!type) { throw UnknownRoadType(line_no, std::string(fields[2])); }
      const auto limit = text::parse_double(fields[3]);
      if (!limit) { throw MalformedSegment(line_no, "bad speed limit"); }
      if (!ids.insert(std::string(fields[1])).second) {
        throw DuplicateId(line_no, std::string(fields[1]));
      }
      segments.push_back({std::string(fields[1]), *type, {}, *limit});
      header_lines.push_back(line_no);
    } else if (fields[0] == "pt") {
      if (segments.empty()) { throw MalformedSegment(line_no, "point before any segment"); }
      if (fields.size() != 3) { throw MalformedSegment(line_no, "expected 'pt,x,y'"); }
      const auto x = text::parse_double(fields[1]);
      const auto y = text::parse_double(fields[2]);
      if (!x || !y) { throw MalformedSegment(line_no, "bad coordinate"); }
      segments.back().polyline.push_back({*x, *y});
    } else {
      throw MalformedSegment(line_no, "unknown line kind '" + std::string(fields[0]) + "'");
    }
  }
  close_segment();
  return RoadNetwork(std::move(segments));
}

RoadNetwork load_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_network(in);
}

std::optional<std::string> match_pose(const RoadNetwork& network, const Pose& pose,
                                      double tolerance) {
  const auto match = network.nearest({pose.x, pose.y}, tolerance);
  if (!match) { return std::nullopt; }
  return network.segments()[match->segment].id;
}

namespace {

// Road type index per pose interval, keyed at chord midpoints.
std::vector<int> interval_types(const DriveLog& log, const RoadNetwork& network,
                                double tolerance) {
  const auto& poses = log.poses;
  auto type_at = [&](Point2 p) {
    const auto match = network.nearest(p, tolerance);
    if (!match) { return detail::kUnlabeled; }
    return static_cast<int>(network.segments()[match->segment].road_type);
  };
  if (poses.size() == 1) { return {type_at({poses[0].x, poses[0].y})}; }
  std::vector<int> labels(poses.size() - 1);
  for (std::size_t j = 0; j + 1 < poses.size(); ++j) {
    labels[j] = type_at({0.5 * (poses[j].x + poses[j + 1].x),
                         0.5 * (poses[j].y + poses[j + 1].y)});
  }
  return labels;
}

}  // namespace

TripComposition classify_trip(const DriveLog& log, const RoadNetwork& network,
                              double tolerance) {
  if (log.poses.empty()) { throw EmptyChannel("poses"); }
  if (network.empty()) { throw EmptyNetwork(); }
  check_tolerance(tolerance);
  const auto track = detail::path_track(log.poses);
  const auto labels = interval_types(log, network, tolerance);

  TripComposition out;
  const std::span<const double> chords(track.steps);
  std::size_t start = 0;
  while (start < chords.size()) {
    std::size_t end = start + 1;
    while (end < chords.size() && labels[end] == labels[start]) { ++end; }
    const double d = simd::sum(chords.subspan(start, end - start));
    if (labels[start] == detail::kUnlabeled) {
      out.unmatched_distance += d;
    } else {
      out.distance[static_cast<std::size_t>(labels[start])] += d;
    }
    start = end;
  }
  for (const double d : out.distance) { out.matched_distance += d; }
  if (out.matched_distance > 0.0) {
    for (std::size_t i = 0; i < out.distance.size(); ++i) {
      out.fraction[i] = out.distance[i] / out.matched_distance;
    }
  }
  return out;
}

RoadTypeMetrics per_type_metrics(const DriveLog& log, std::span<const Segment> segments,
                                 const RoadNetwork& network, double tolerance,
                                 DistanceMethod method) {
  if (log.poses.empty()) { throw EmptyChannel("poses"); }
  if (network.empty()) { throw EmptyNetwork(); }
  check_tolerance(tolerance);
  const auto pose_track = detail::path_track(log.poses);
  const auto labels = interval_types(log, network, tolerance);

  std::vector<int> edge_labels;
  for (const auto t : detail::falling_edge_times(segments)) {
    const auto& p = log.poses[detail::nearest_pose(log.poses, t)];
    const auto match = network.nearest({p.x, p.y}, tolerance);
    edge_labels.push_back(match ? static_cast<int>(network.segments()[match->segment].road_type)
                                : detail::kUnlabeled);
  }

  const auto attribution = detail::attribute_totals(log, segments, method, pose_track,
                                                    labels, edge_labels, kAllRoadTypes.size());
  std::array<bool, 4> present{};
  for (const int l : labels) {
    if (l != detail::kUnlabeled) { present[static_cast<std::size_t>(l)] = true; }
  }
  for (const int l : edge_labels) {
    if (l != detail::kUnlabeled) { present[static_cast<std::size_t>(l)] = true; }
  }

  RoadTypeMetrics out;
  for (const auto type : kAllRoadTypes) {
    const auto i = static_cast<std::size_t>(type);
    if (!present[i]) { continue; }
    out.reports.push_back(compute_metrics(attribution.per_label[i], std::string(to_string(type))));
  }
  if (out.reports.empty()) {
    out.warnings.push_back("no poses matched any road segment within " +
                           text::format_fixed(tolerance) + " m");
  }
  const auto unmatched_edges = std::count(edge_labels.begin(), edge_labels.end(), detail::kUnlabeled);
  if (!out.reports.empty() && unmatched_edges > 0) {
    out.warnings.push_back(std::to_string(unmatched_edges) +
                           " intervention(s) occurred off the road network");
  }
  return out;
}

SpeedCompliance speed_compliance(const DriveLog& log, const RoadNetwork& network,
                                 double tolerance) {
  if (log.speeds.empty()) { throw EmptyChannel("speeds"); }
  if (log.poses.empty()) { throw EmptyChannel("poses"); }
  if (network.empty()) { throw EmptyNetwork(); }
  check_tolerance(tolerance);
  SpeedCompliance out;
  for (const auto& s : log.speeds) {
    const auto& p = log.poses[detail::nearest_pose(log.poses, s.t)];
    const auto match = network.nearest({p.x, p.y}, tolerance);
    if (!match) {
      ++out.skipped;
      continue;
    }
    const auto& seg = network.segments()[match->segment];
    if (s.v > seg.speed_limit) { out.violations.push_back({s.t, s.v, seg.speed_limit, seg.id}); }
  }
  return out;
}

}  // namespace avbench
