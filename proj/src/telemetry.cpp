#include "avbench/telemetry.hpp"

#include <cmath>
#include <initializer_list>

namespace avbench {

namespace {

class Checker {
 public:
  explicit Checker(std::vector<ValidationIssue>& issues) : issues_(issues) {}

  void add(const char* channel, std::size_t index, const char* rule) {
    issues_.push_back({channel, index, rule});
  }

  template <typename T>
  void check_times(const char* channel, const std::vector<T>& samples,
                   bool strict = true) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double t = samples[i].t;
      if (!std::isfinite(t)) {
        add(channel, i, "finite");
        continue;
      }
      if (t < 0.0) { add(channel, i, "non-negative-time"); }
      if (i > 0 && std::isfinite(samples[i - 1].t)) {
        const double prev = samples[i - 1].t;
        if (strict ? !(t > prev) : t < prev) {
          add(channel, i, strict ? "strictly-increasing" : "non-decreasing");
        }
      }
    }
  }

 private:
  std::vector<ValidationIssue>& issues_;
};

bool all_finite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) { return false; }
  }
  return true;
}

}  // namespace

bool is_meta_key(std::string_view key) {
  return key == "log_id" || key == "vehicle_id" || key == "driver_id" ||
         key == "note";
}

std::string DriveLog::meta_value(std::string_view key) const {
  for (auto it = meta.rbegin(); it != meta.rend(); ++it) {
    if (it->key == key) { return it->value; }
  }
  return {};
}

std::vector<std::string> DriveLog::notes() const {
  std::vector<std::string> out;
  for (const auto& m : meta) {
    if (m.key == "note") { out.push_back(m.value); }
  }
  return out;
}

void DriveLog::set_meta(std::string key, std::string value, Timestamp t) {
  meta.push_back({t, std::move(key), std::move(value)});
}

const std::vector<ActuatorSample>& DriveLog::actuator_channel(
    ActuatorChannel c) const {
  switch (c) {
    case ActuatorChannel::acceleration: return accel;
    case ActuatorChannel::brake: return brake;
    case ActuatorChannel::steering: break;
  }
  return steering;
}

std::vector<ValidationIssue> validate_log(const DriveLog& log,
                                          const ValidationOptions& options) {
  std::vector<ValidationIssue> issues;
  Checker check(issues);

  check.check_times("meta", log.meta, /*strict=*/false);
  for (std::size_t i = 0; i < log.meta.size(); ++i) {
    const auto& m = log.meta[i];
    if (!is_meta_key(m.key)) { check.add("meta", i, "meta-key"); }
    if (m.value.find_first_of("\r\n") != std::string::npos) {
      check.add("meta", i, "meta-text");
    }
  }

  check.check_times("poses", log.poses);
  for (std::size_t i = 0; i < log.poses.size(); ++i) {
    const auto& p = log.poses[i];
    if (!all_finite({p.x, p.y, p.z, p.q0, p.q1, p.q2, p.q3})) {
      check.add("poses", i, "finite");
      continue;
    }
    const double norm2 = p.q0 * p.q0 + p.q1 * p.q1 + p.q2 * p.q2 + p.q3 * p.q3;
    if (std::abs(norm2 - 1.0) > options.quaternion_tolerance) {
      check.add("poses", i, "unit-quaternion");
    }
  }

  check.check_times("gps", log.gps);
  for (std::size_t i = 0; i < log.gps.size(); ++i) {
    const auto& g = log.gps[i];
    if (!all_finite({g.latitude, g.longitude, g.altitude_ft})) {
      check.add("gps", i, "finite");
      continue;
    }
    if (g.latitude < -90.0 || g.latitude > 90.0) {
      check.add("gps", i, "latitude-range");
    }
    if (g.longitude < -180.0 || g.longitude > 180.0) {
      check.add("gps", i, "longitude-range");
    }
  }

  check.check_times("imu", log.imu);
  for (std::size_t i = 0; i < log.imu.size(); ++i) {
    const auto& s = log.imu[i];
    if (!all_finite({s.ax, s.ay, s.az, s.wx, s.wy, s.wz})) {
      check.add("imu", i, "finite");
    }
  }

  check.check_times("speeds", log.speeds);
  for (std::size_t i = 0; i < log.speeds.size(); ++i) {
    const double v = log.speeds[i].v;
    if (!std::isfinite(v)) {
      check.add("speeds", i, "finite");
    } else if (v < 0.0) {
      check.add("speeds", i, "negative-speed");
    }
  }
  check.check_times("target_speeds", log.target_speeds);
  for (std::size_t i = 0; i < log.target_speeds.size(); ++i) {
    if (!std::isfinite(log.target_speeds[i].v)) {
      check.add("target_speeds", i, "finite");
    }
  }

  check.check_times("engagement", log.engagement);

  auto check_unit = [&](const char* channel,
                        const std::vector<ActuatorSample>& samples) {
    check.check_times(channel, samples);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double v = samples[i].value;
      if (!std::isfinite(v)) {
        check.add(channel, i, "finite");
      } else if (v < 0.0 || v > 1.0) {
        check.add(channel, i, "unit-interval");
      }
    }
  };
  check_unit("accel", log.accel);
  check_unit("brake", log.brake);

  check.check_times("steering", log.steering);
  for (std::size_t i = 0; i < log.steering.size(); ++i) {
    if (!std::isfinite(log.steering[i].value)) {
      check.add("steering", i, "finite");
    }
  }

  return issues;
}

}  // namespace avbench
