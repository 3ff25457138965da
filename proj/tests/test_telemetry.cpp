#include <doctest.h>

#include <cmath>
#include <limits>

#include "avbench/telemetry.hpp"

using namespace avbench;

namespace {

DriveLog clean_log() {
  DriveLog log;
  log.set_meta("log_id", "trip-01", 0.0);
  for (int i = 0; i < 5; ++i) {
    const double t = i;
    log.poses.push_back({t, 1.0 * i, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0});
    log.speeds.push_back({t, 1.0});
    log.engagement.push_back({t, true});
  }
  log.gps.push_back({0.5, 32.88, -117.23, 350.0});
  log.accel.push_back({0.5, 0.3});
  log.brake.push_back({0.5, 0.0});
  log.steering.push_back({0.5, -12.5});
  return log;
}

}  // namespace

TEST_CASE("a clean log has no issues") {
  CHECK(validate_log(clean_log()).empty());
}

TEST_CASE("equal pose timestamps break strict ordering") {
  auto log = clean_log();
  log.poses[3].t = log.poses[2].t;
  const auto issues = validate_log(log);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0] == ValidationIssue{"poses", 3, "strictly-increasing"});
}

TEST_CASE("non-unit quaternion") {
  auto log = clean_log();
  log.poses[1].q0 = 2.0;
  const auto issues = validate_log(log);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].channel == "poses");
  CHECK(issues[0].rule == "unit-quaternion");
}

TEST_CASE("quaternion tolerance is configurable") {
  auto log = clean_log();
  log.poses[0].q0 = 1.0 + 1e-5;
  CHECK(validate_log(log).size() == 1);
  CHECK(validate_log(log, {.quaternion_tolerance = 1e-4}).empty());
}

TEST_CASE("range and sign rules") {
  auto log = clean_log();
  log.gps[0].latitude = 91.0;
  log.speeds[2].v = -0.1;
  log.accel[0].value = 1.5;
  log.steering[0].value = 720.0;  // unconstrained
  log.target_speeds.push_back({0.0, -1.0});  // only measured speed is signed
  const auto issues = validate_log(log);
  REQUIRE(issues.size() == 3);
  CHECK(issues[0] == ValidationIssue{"gps", 0, "latitude-range"});
  CHECK(issues[1] == ValidationIssue{"speeds", 2, "negative-speed"});
  CHECK(issues[2] == ValidationIssue{"accel", 0, "unit-interval"});
}

TEST_CASE("non-finite and negative times") {
  auto log = clean_log();
  log.imu.push_back({0.0, std::numeric_limits<double>::quiet_NaN(), 0, 9.8, 0, 0, 0});
  log.engagement.front().t = -1.0;
  const auto issues = validate_log(log);
  REQUIRE(issues.size() == 2);
  CHECK(issues[0] == ValidationIssue{"imu", 0, "finite"});
  CHECK(issues[1] == ValidationIssue{"engagement", 0, "non-negative-time"});
}

TEST_CASE("metadata rules") {
  auto log = clean_log();
  log.meta.push_back({1.0, "weather", "rain"});
  log.meta.push_back({1.0, "note", "two\nlines"});
  log.meta.push_back({0.5, "note", "late"});
  const auto issues = validate_log(log);
  REQUIRE(issues.size() == 3);
  // Ordering rules are reported before per-record rules.
  CHECK(issues[0] == ValidationIssue{"meta", 3, "non-decreasing"});
  CHECK(issues[1] == ValidationIssue{"meta", 1, "meta-key"});
  CHECK(issues[2] == ValidationIssue{"meta", 2, "meta-text"});
}

TEST_CASE("validation is pure and repeatable") {
  auto log = clean_log();
  log.poses[4].t = 0.0;
  const auto copy = log;
  CHECK(validate_log(log) == validate_log(log));
  CHECK(log == copy);
}

TEST_CASE("metadata accessors") {
  DriveLog log;
  CHECK(log.log_id().empty());
  log.set_meta("log_id", "a", 0.0);
  log.set_meta("driver_id", "d7", 0.0);
  log.set_meta("note", "first", 1.0);
  log.set_meta("note", "second", 2.0);
  log.set_meta("log_id", "b", 3.0);
  CHECK(log.log_id() == "b");
  CHECK(log.driver_id() == "d7");
  CHECK(log.vehicle_id().empty());
  CHECK(log.notes() == std::vector<std::string>{"first", "second"});
  CHECK(is_meta_key("vehicle_id"));
  CHECK_FALSE(is_meta_key("weather"));
}

TEST_CASE("channel selectors") {
  auto log = clean_log();
  CHECK(&log.speed_channel(SpeedKind::measured) == &log.speeds);
  CHECK(&log.speed_channel(SpeedKind::target) == &log.target_speeds);
  CHECK(&log.actuator_channel(ActuatorChannel::brake) == &log.brake);
  CHECK(&log.actuator_channel(ActuatorChannel::steering) == &log.steering);
}
