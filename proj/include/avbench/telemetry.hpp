#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace avbench {

/// Unix epoch seconds.
using Timestamp = double;

/// Vehicle pose in the local map frame. Orientation is a unit quaternion
/// stored scalar-first.
struct Pose {
  Timestamp t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double q0 = 1.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct GpsFix {
  Timestamp t = 0.0;
  double latitude = 0.0;
  double longitude = 0.0;
  double altitude_ft = 0.0;

  friend bool operator==(const GpsFix&, const GpsFix&) = default;
};

struct ImuSample {
  Timestamp t = 0.0;
  double ax = 0.0, ay = 0.0, az = 0.0;
  double wx = 0.0, wy = 0.0, wz = 0.0;

  friend bool operator==(const ImuSample&, const ImuSample&) = default;
};

enum class SpeedKind { measured, target };

/// Measured and target speeds live in separate DriveLog channels, so the
/// kind is carried by the channel rather than by each sample.
struct SpeedSample {
  Timestamp t = 0.0;
  double v = 0.0;

  friend bool operator==(const SpeedSample&, const SpeedSample&) = default;
};

/// Drive-by-wire enable signal: true = autonomous, false = manual.
struct EngagementSample {
  Timestamp t = 0.0;
  bool enabled = false;

  friend bool operator==(const EngagementSample&,
                         const EngagementSample&) = default;
};

enum class ActuatorChannel { acceleration, brake, steering };

struct ActuatorSample {
  Timestamp t = 0.0;
  double value = 0.0;

  friend bool operator==(const ActuatorSample&,
                         const ActuatorSample&) = default;
};

/// Free-text metadata record. Keys are log_id, vehicle_id, driver_id, note.
struct MetaEntry {
  Timestamp t = 0.0;
  std::string key;
  std::string value;

  friend bool operator==(const MetaEntry&, const MetaEntry&) = default;
};

/// One vehicle trip: every recorded channel, each time-ordered.
struct DriveLog {
  std::vector<MetaEntry> meta;
  std::vector<Pose> poses;
  std::vector<GpsFix> gps;
  std::vector<ImuSample> imu;
  std::vector<SpeedSample> speeds;
  std::vector<SpeedSample> target_speeds;
  std::vector<EngagementSample> engagement;
  std::vector<ActuatorSample> accel;
  std::vector<ActuatorSample> brake;
  std::vector<ActuatorSample> steering;

  // Last value recorded for the key, or empty.
  std::string log_id() const { return meta_value("log_id"); }
  std::string vehicle_id() const { return meta_value("vehicle_id"); }
  std::string driver_id() const { return meta_value("driver_id"); }
  std::vector<std::string> notes() const;

  std::string meta_value(std::string_view key) const;
  void set_meta(std::string key, std::string value, Timestamp t = 0.0);

  const std::vector<SpeedSample>& speed_channel(SpeedKind kind) const {
    return kind == SpeedKind::measured ? speeds : target_speeds;
  }
  const std::vector<ActuatorSample>& actuator_channel(ActuatorChannel c) const;

  friend bool operator==(const DriveLog&, const DriveLog&) = default;
};

bool is_meta_key(std::string_view key);

struct ValidationOptions {
  double quaternion_tolerance = 1e-6;
};

struct ValidationIssue {
  std::string channel;
  std::size_t index = 0;
  std::string rule;

  friend bool operator==(const ValidationIssue&,
                         const ValidationIssue&) = default;
};

/// Checks every structural invariant of `log`. Returns an empty list iff
/// the log is valid. Rules are named: strictly-increasing,
/// non-decreasing, finite, non-negative-time, unit-quaternion,
/// latitude-range, longitude-range, negative-speed, unit-interval,
/// meta-key, meta-text.
std::vector<ValidationIssue> validate_log(const DriveLog& log,
                                          const ValidationOptions& options = {});

}  // namespace avbench
