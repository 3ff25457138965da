#include "avbench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "avbench/errors.hpp"
#include "avbench/text_format.hpp"

namespace avbench {

namespace {

constexpr std::size_t kMaxSamples = 50'000'000;

struct Leg {
  Point2 a, b;
  double length = 0.0;
  double speed = 0.0;
  double s0 = 0.0;  // distance at leg start
  double t0 = 0.0;  // time at leg start, relative
  double yaw = 0.0;
};

struct Path {
  std::vector<Leg> legs;
  double length = 0.0;
  double duration = 0.0;

  const Leg& leg_at_time(double t) const {
    // Right-continuous: a time on a corner belongs to the next leg.
    std::size_t i = 0;
    while (i + 1 < legs.size() && legs[i + 1].t0 <= t) { ++i; }
    return legs[i];
  }

  double distance_at(double t) const {
    if (t >= duration) { return length; }
    const auto& leg = leg_at_time(t);
    return std::min(leg.s0 + leg.speed * (t - leg.t0), leg.s0 + leg.length);
  }

  double time_at_distance(double s) const {
    for (const auto& leg : legs) {
      if (s <= leg.s0 + leg.length) { return leg.t0 + (s - leg.s0) / leg.speed; }
    }
    return duration;
  }

  Point2 position_at(double t) const {
    const auto& leg = leg_at_time(t);
    const double u = std::clamp((distance_at(t) - leg.s0) / leg.length, 0.0, 1.0);
    return {leg.a.x + u * (leg.b.x - leg.a.x), leg.a.y + u * (leg.b.y - leg.a.y)};
  }
};

Path build_path(const SynthScenario& sc) {
  if (sc.waypoints.size() < 2) { throw InvalidScenario("need at least 2 waypoints"); }
  const std::size_t n_legs = sc.waypoints.size() - 1;
  if (sc.speeds.size() != 1 && sc.speeds.size() != n_legs) {
    throw InvalidScenario("give one speed, or one per leg (" + std::to_string(n_legs) + ")");
  }
  Path path;
  for (std::size_t i = 0; i < n_legs; ++i) {
    Leg leg;
    leg.a = sc.waypoints[i];
    leg.b = sc.waypoints[i + 1];
    leg.length = std::hypot(leg.b.x - leg.a.x, leg.b.y - leg.a.y);
    leg.speed = sc.speeds.size() == 1 ? sc.speeds[0] : sc.speeds[i];
    if (!(leg.length > 0.0) || !std::isfinite(leg.length)) {
      throw InvalidScenario("leg " + std::to_string(i + 1) + " has zero length");
    }
    if (!(leg.speed > 0.0) || !std::isfinite(leg.speed)) {
      throw InvalidScenario("speeds must be positive");
    }
    leg.s0 = path.length;
    leg.t0 = path.duration;
    leg.yaw = std::atan2(leg.b.y - leg.a.y, leg.b.x - leg.a.x);
    path.length += leg.length;
    path.duration += leg.length / leg.speed;
    path.legs.push_back(leg);
  }
  return path;
}

// Relative sample times: k / rate while short of arrival, then arrival.
std::vector<double> sample_times(double duration, double rate) {
  const double slack = 1e-9 * std::max(1.0, duration);
  const double count = std::ceil((duration - slack) * rate);
  if (!(count < static_cast<double>(kMaxSamples))) {
    throw InvalidScenario("scenario would generate too many samples");
  }
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(count) + 1);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) / rate;
    if (!(t < duration - slack)) { break; }
    times.push_back(t);
  }
  times.push_back(duration);
  return times;
}

std::size_t nearest_sample(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) { return 0; }
  if (it == times.end()) { return times.size() - 1; }
  const auto after = static_cast<std::size_t>(it - times.begin());
  return times[after] - t < t - times[after - 1] ? after : after - 1;
}

// Box-Muller on mt19937_64 output. std::normal_distribution is not
// specified bit-for-bit across standard libraries.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

SynthResult synth_log(const SynthScenario& sc) {
  if (!(sc.sample_rate > 0.0) || !std::isfinite(sc.sample_rate)) {
    throw InvalidScenario("sample rate must be positive");
  }
  if (!(sc.noise_std >= 0.0) || !std::isfinite(sc.noise_std)) {
    throw InvalidScenario("noise must be non-negative");
  }
  if (!(sc.start_time >= 0.0) || !std::isfinite(sc.start_time)) {
    throw InvalidScenario("start time must be non-negative");
  }
  const Path path = build_path(sc);
  const auto rel = sample_times(path.duration, sc.sample_rate);
  const std::size_t n = rel.size();

  // Snap windows to sample indices [s, e).
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  for (std::size_t w = 0; w < sc.interventions.size(); ++w) {
    const auto& iv = sc.interventions[w];
    const std::string which = "intervention " + std::to_string(w + 1);
    if (!(iv.start_distance > 0.0) || !(iv.start_distance < path.length)) {
      throw InvalidScenario(which + " must start inside the path");
    }
    if (!(iv.duration > 0.0) || !std::isfinite(iv.duration)) {
      throw InvalidScenario(which + " needs a positive duration");
    }
    const double t_s = path.time_at_distance(iv.start_distance);
    const double t_e = t_s + iv.duration;
    if (t_e > path.duration) { throw InvalidScenario(which + " ends after the path"); }
    const auto s = nearest_sample(rel, t_s);
    const auto e = nearest_sample(rel, t_e);
    if (s == 0) { throw InvalidScenario(which + " starts at the first sample"); }
    if (e <= s) { throw InvalidScenario(which + " is shorter than one sample period"); }
    if (!windows.empty() && s <= windows.back().second) {
      throw InvalidScenario(which + " overlaps or touches the previous one");
    }
    windows.emplace_back(s, e);
  }

  SynthResult out;
  auto& log = out.log;
  log.set_meta("log_id", "synth-" + std::to_string(sc.seed), sc.start_time);
  GaussianSource noise(sc.seed);
  std::size_t next_window = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = sc.start_time + rel[k];
    const auto& leg = path.leg_at_time(rel[k]);
    auto p = path.position_at(rel[k]);
    if (sc.noise_std > 0.0) {
      p.x += sc.noise_std * noise.next();
      p.y += sc.noise_std * noise.next();
    }
    const double half = 0.5 * leg.yaw;
    log.poses.push_back({t, p.x, p.y, 0.0, std::cos(half), 0.0, 0.0, std::sin(half)});
    log.speeds.push_back({t, leg.speed});
    log.target_speeds.push_back({t, leg.speed});
    while (next_window < windows.size() && k >= windows[next_window].second) { ++next_window; }
    const bool manual = next_window < windows.size() && k >= windows[next_window].first;
    log.engagement.push_back({t, !manual});
  }

  // Ground truth from the snapped boundary times.
  auto& truth = out.truth;
  auto add_segment = [&](DriveMode mode, std::size_t from, std::size_t to) {
    Segment seg;
    seg.mode = mode;
    seg.t_start = sc.start_time + rel[from];
    seg.t_end = sc.start_time + rel[to];
    seg.uptime = seg.t_end - seg.t_start;
    seg.distance = path.distance_at(rel[to]) - path.distance_at(rel[from]);
    auto& totals = truth.totals;
    if (mode == DriveMode::autonomous) {
      totals.auto_distance += seg.distance;
      totals.auto_uptime += seg.uptime;
    } else {
      totals.manual_distance += seg.distance;
      totals.manual_uptime += seg.uptime;
      ++totals.n_interventions;
    }
    truth.segments.push_back(seg);
  };
  std::size_t cursor = 0;
  for (const auto& [s, e] : windows) {
    add_segment(DriveMode::autonomous, cursor, s);
    add_segment(DriveMode::manual, s, e);
    cursor = e;
  }
  add_segment(DriveMode::autonomous, cursor, n - 1);
  return out;
}

SynthScenario load_scenario(std::istream& in) {
  SynthScenario sc;
  bool have_rate = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_ignorable(line)) { continue; }
    const auto f = text::split_fields(line);
    auto number = [&](std::size_t i) {
      const auto v = text::parse_double(f[i]);
      if (!v) { throw InvalidScenario("bad number '" + std::string(f[i]) + "'", line_no); }
      return *v;
    };
    auto expect = [&](std::size_t count, const char* usage) {
      if (f.size() != count) { throw InvalidScenario(std::string("expected '") + usage + "'", line_no); }
    };
    const auto key = f[0];
    if (key == "waypoint") {
      expect(3, "waypoint,x,y");
      sc.waypoints.push_back({number(1), number(2)});
    } else if (key == "speed") {
      expect(2, "speed,v");
      const double v = number(1);
      if (!(v > 0.0)) { throw InvalidScenario("speeds must be positive", line_no); }
      sc.speeds.push_back(v);
    } else if (key == "rate") {
      expect(2, "rate,hz");
      sc.sample_rate = number(1);
      if (!(sc.sample_rate > 0.0)) { throw InvalidScenario("sample rate must be positive", line_no); }
      have_rate = true;
    } else if (key == "intervene") {
      expect(3, "intervene,start_m,duration_s");
      const InterventionWindow iv{number(1), number(2)};
      if (!sc.interventions.empty() &&
          !(iv.start_distance > sc.interventions.back().start_distance)) {
        throw InvalidScenario("interventions must be listed in path order", line_no);
      }
      sc.interventions.push_back(iv);
    } else if (key == "seed") {
      expect(2, "seed,n");
      const auto seed = text::parse_int(f[1]);
      if (!seed || *seed < 0) { throw InvalidScenario("seed must be a non-negative integer", line_no); }
      sc.seed = static_cast<std::uint64_t>(*seed);
    } else if (key == "noise") {
      expect(2, "noise,std");
      sc.noise_std = number(1);
      if (!(sc.noise_std >= 0.0)) { throw InvalidScenario("noise must be non-negative", line_no); }
    } else if (key == "start") {
      expect(2, "start,unix_t");
      sc.start_time = number(1);
      if (!(sc.start_time >= 0.0)) { throw InvalidScenario("start time must be non-negative", line_no); }
    } else {
      throw InvalidScenario("unknown key '" + std::string(key) + "'", line_no);
    }
  }
  if (sc.waypoints.size() < 2) { throw InvalidScenario("need at least 2 waypoints"); }
  if (sc.speeds.empty()) { throw InvalidScenario("missing speed"); }
  if (!have_rate) { throw InvalidScenario("missing rate"); }
  return sc;
}

SynthScenario load_scenario(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_scenario(in);
}

}  // namespace avbench
