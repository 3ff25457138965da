#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "avbench/geometry.hpp"
#include "avbench/metrics.hpp"
#include "avbench/segmentation.hpp"
#include "avbench/telemetry.hpp"

namespace avbench {

struct InterventionWindow {
  double start_distance = 0.0;  // metres along the path
  double duration = 0.0;        // seconds
};

struct SynthScenario {
  std::vector<Point2> waypoints;
  std::vector<double> speeds;  // one for all legs, or one per leg (m/s)
  double sample_rate = 10.0;   // Hz
  std::vector<InterventionWindow> interventions;
  std::uint64_t seed = 0;
  double noise_std = 0.0;      // pose jitter, metres
  Timestamp start_time = 0.0;  // timestamp of the first sample
};

struct GroundTruth {
  std::vector<Segment> segments;
  ModeTotals totals;
};

struct SynthResult {
  DriveLog log;
  GroundTruth truth;
};

/// Drives the waypoint path at the leg speeds, sampling at k / rate plus a
/// final sample at arrival. The safety driver keeps moving at the scenario
/// speed during interventions. Window edges snap to the nearest sample and
/// the ground truth is computed analytically from the snapped times.
///
/// Throws InvalidScenario.
SynthResult synth_log(const SynthScenario& scenario);

/// Lines: `waypoint,x,y`, `speed,v`, `rate,hz`, `intervene,start_m,duration_s`,
/// `seed,n`, `noise,std`, `start,unix_t`. Throws InvalidScenario with the
/// offending line.
SynthScenario load_scenario(std::istream& in);
SynthScenario load_scenario(std::string_view text);

}  // namespace avbench
