#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "avbench/telemetry.hpp"

namespace avbench {

/// Record kinds of the line format. Enumerator order is the tie-break order
/// used when two records share a timestamp.
enum class RecordKind {
  meta,
  pose,
  gps,
  imu,
  speed,
  target_speed,
  engage,
  accel,
  brake,
  steering,
};

inline constexpr std::array<RecordKind, 10> kAllRecordKinds = {
    RecordKind::meta,  RecordKind::pose,         RecordKind::gps,
    RecordKind::imu,   RecordKind::speed,        RecordKind::target_speed,
    RecordKind::engage, RecordKind::accel,       RecordKind::brake,
    RecordKind::steering,
};

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> parse_record_kind(std::string_view text);

/// Name of the DriveLog channel a record kind lands in ("poses", ...).
std::string_view channel_name(RecordKind kind);

/// Parses newline-delimited `kind,t,payload...` records. Blank lines and
/// `#` comments are skipped but still counted for line numbers.
///
/// Throws MalformedRecord, NonMonotonicTimestamp or UnknownKind at the
/// first offending line. Unit quaternions are not enforced here; that
/// check has a tolerance and belongs to validate_log.
DriveLog parse_log(std::istream& in);
DriveLog parse_log(std::string_view text);
DriveLog parse_log_file(const std::filesystem::path& path);

/// Writes every record in non-decreasing time order, ties broken by
/// RecordKind order. Numbers use the shortest round-trip representation.
/// Throws InvalidLog if validate_log reports anything.
void serialize_log(const DriveLog& log, std::ostream& out);
std::string serialize_log(const DriveLog& log);

/// Header-driven CSV columns per kind; the first column must be `t`.
std::vector<std::string_view> csv_columns(RecordKind kind);

/// Reads one CSV file per kind. Produces the same DriveLog parse_log would
/// for the same records. Line numbers in errors refer to the CSV file.
DriveLog parse_csv_bundle(
    const std::map<RecordKind, std::filesystem::path>& paths);

}  // namespace avbench
