#include "attribution.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "avbench/errors.hpp"
#include "avbench/simd/kernels.hpp"

namespace avbench::detail {

namespace {

ModeTotals& bucket(Attribution& out, int label) {
  return label == kUnlabeled ? out.unlabeled
                             : out.per_label[static_cast<std::size_t>(label)];
}

void add(ModeTotals& totals, DriveMode mode, double distance, double uptime) {
  if (mode == DriveMode::autonomous) {
    totals.auto_distance += distance;
    totals.auto_uptime += uptime;
  } else {
    totals.manual_distance += distance;
    totals.manual_uptime += uptime;
  }
}

}  // namespace

std::vector<Timestamp> falling_edge_times(std::span<const Segment> segments) {
  std::vector<Timestamp> times;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].mode == DriveMode::manual &&
        segments[i - 1].mode == DriveMode::autonomous) {
      times.push_back(segments[i].t_start);
    }
  }
  return times;
}

Attribution attribute_totals(const DriveLog& log, std::span<const Segment> segments,
                             DistanceMethod method, const Track& pose_track,
                             std::span<const int> interval_labels,
                             std::span<const int> intervention_labels,
                             std::size_t n_labels) {
  if (pose_track.empty()) { throw EmptyChannel("poses"); }
  assert(interval_labels.size() == std::max<std::size_t>(pose_track.steps.size(), 1));

  Attribution out;
  out.per_label.resize(n_labels);

  const Track speed = method == DistanceMethod::speed ? speed_track(log.speeds) : Track{};
  const Track& dist_track = method == DistanceMethod::path ? pose_track : speed;

  auto label_of_step = [&](std::size_t k) {
    if (method == DistanceMethod::path) { return interval_labels[k]; }
    return interval_labels[pose_track.interval_at(dist_track.t[k])];
  };

  const std::span<const double> steps(dist_track.steps);
  for (const auto& seg : segments) {
    // Distance, in runs of equal label.
    const auto [lo, hi] = dist_track.interval_range(seg.t_start, seg.t_end);
    std::size_t run_start = lo;
    while (run_start < hi) {
      const int label = label_of_step(run_start);
      std::size_t run_end = run_start + 1;
      while (run_end < hi && label_of_step(run_end) == label) { ++run_end; }
      add(bucket(out, label), seg.mode,
          simd::sum(steps.subspan(run_start, run_end - run_start)), 0.0);
      run_start = run_end;
    }

    // Uptime, split at pose-interval boundaries.
    if (!(seg.t_end > seg.t_start)) { continue; }
    const std::size_t last_interval = interval_labels.size() - 1;
    std::size_t j = pose_track.interval_at(seg.t_start);
    struct Piece {
      int label;
      double duration;
    };
    std::vector<Piece> pieces;
    double t = seg.t_start;
    while (t < seg.t_end) {
      const double boundary = j < last_interval ? pose_track.t[j + 1]
                                                : std::numeric_limits<double>::infinity();
      const double end = std::min(seg.t_end, boundary);
      if (end > t) { pieces.push_back({interval_labels[j], end - t}); }
      t = end;
      ++j;
    }
    const bool uniform = std::all_of(pieces.begin(), pieces.end(), [&](const Piece& p) {
      return p.label == pieces.front().label;
    });
    if (uniform && !pieces.empty()) {
      add(bucket(out, pieces.front().label), seg.mode, 0.0, seg.uptime);
    } else {
      for (const auto& p : pieces) { add(bucket(out, p.label), seg.mode, 0.0, p.duration); }
    }
  }

  for (const int label : intervention_labels) { ++bucket(out, label).n_interventions; }
  return out;
}

}  // namespace avbench::detail
