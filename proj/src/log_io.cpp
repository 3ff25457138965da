#include "avbench/log_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>

#include "avbench/errors.hpp"
#include "avbench/text_format.hpp"

namespace avbench {

namespace {

struct KindInfo {
  RecordKind kind;
  std::string_view name;
  std::string_view channel;
  std::size_t field_count;  // including t, excluding the kind field
};

constexpr std::array<KindInfo, 10> kKindInfo = {{
    {RecordKind::meta, "meta", "meta", 3},
    {RecordKind::pose, "pose", "poses", 8},
    {RecordKind::gps, "gps", "gps", 4},
    {RecordKind::imu, "imu", "imu", 7},
    {RecordKind::speed, "speed", "speeds", 2},
    {RecordKind::target_speed, "target_speed", "target_speeds", 2},
    {RecordKind::engage, "engage", "engagement", 2},
    {RecordKind::accel, "accel", "accel", 2},
    {RecordKind::brake, "brake", "brake", 2},
    {RecordKind::steering, "steering", "steering", 2},
}};

const KindInfo& info(RecordKind kind) {
  return kKindInfo[static_cast<std::size_t>(kind)];
}

/// Decodes field lists into a DriveLog, enforcing per-record invariants and
/// per-channel time ordering.
class LogBuilder {
 public:
  void add(RecordKind kind, std::span<const std::string_view> fields,
           std::size_t line_no) {
    const auto& ki = info(kind);
    if (fields.size() != ki.field_count) {
      throw MalformedRecord(line_no, std::string(ki.name) + " expects " +
                                         std::to_string(ki.field_count) +
                                         " fields after the kind, got " +
                                         std::to_string(fields.size()));
    }
    line_no_ = line_no;
    const double t = number(fields[0], "t");
    if (t < 0.0) { throw MalformedRecord(line_no, "negative timestamp"); }

    switch (kind) {
      case RecordKind::meta: {
        if (!is_meta_key(fields[1])) {
          throw MalformedRecord(line_no,
                                "unknown meta key '" + std::string(fields[1]) + "'");
        }
        if (!log_.meta.empty() && t < log_.meta.back().t) {
          throw NonMonotonicTimestamp("meta", line_no);
        }
        log_.meta.push_back({t, std::string(fields[1]), std::string(fields[2])});
        break;
      }
      case RecordKind::pose: {
        Pose p;
        p.t = t;
        p.x = number(fields[1], "x");
        p.y = number(fields[2], "y");
        p.z = number(fields[3], "z");
        p.q0 = number(fields[4], "q0");
        p.q1 = number(fields[5], "q1");
        p.q2 = number(fields[6], "q2");
        p.q3 = number(fields[7], "q3");
        append(log_.poses, p, kind);
        break;
      }
      case RecordKind::gps: {
        GpsFix g;
        g.t = t;
        g.latitude = number(fields[1], "lat");
        g.longitude = number(fields[2], "lon");
        g.altitude_ft = number(fields[3], "alt_ft");
        if (g.latitude < -90.0 || g.latitude > 90.0) {
          throw MalformedRecord(line_no, "latitude out of range");
        }
        if (g.longitude < -180.0 || g.longitude > 180.0) {
          throw MalformedRecord(line_no, "longitude out of range");
        }
        append(log_.gps, g, kind);
        break;
      }
      case RecordKind::imu: {
        ImuSample s;
        s.t = t;
        s.ax = number(fields[1], "ax");
        s.ay = number(fields[2], "ay");
        s.az = number(fields[3], "az");
        s.wx = number(fields[4], "wx");
        s.wy = number(fields[5], "wy");
        s.wz = number(fields[6], "wz");
        append(log_.imu, s, kind);
        break;
      }
      case RecordKind::speed: {
        const double v = number(fields[1], "v");
        if (v < 0.0) { throw MalformedRecord(line_no, "negative measured speed"); }
        append(log_.speeds, SpeedSample{t, v}, kind);
        break;
      }
      case RecordKind::target_speed:
        append(log_.target_speeds, SpeedSample{t, number(fields[1], "v")}, kind);
        break;
      case RecordKind::engage: {
        if (fields[1] != "0" && fields[1] != "1") {
          throw MalformedRecord(line_no, "engage value must be 0 or 1, got '" +
                                             std::string(fields[1]) + "'");
        }
        append(log_.engagement, EngagementSample{t, fields[1] == "1"}, kind);
        break;
      }
      case RecordKind::accel:
      case RecordKind::brake: {
        const double v = number(fields[1], "value");
        if (v < 0.0 || v > 1.0) {
          throw MalformedRecord(line_no, std::string(ki.name) +
                                             " value outside [0, 1]");
        }
        append(kind == RecordKind::accel ? log_.accel : log_.brake,
               ActuatorSample{t, v}, kind);
        break;
      }
      case RecordKind::steering:
        append(log_.steering, ActuatorSample{t, number(fields[1], "value")},
               kind);
        break;
    }
  }

  DriveLog take() { return std::move(log_); }

 private:
  double number(std::string_view field, const char* name) const {
    const auto v = text::parse_double(field);
    if (!v) {
      throw MalformedRecord(line_no_, std::string("bad number for ") + name +
                                          ": '" + std::string(field) + "'");
    }
    return *v;
  }

  template <typename T>
  void append(std::vector<T>& channel, const T& sample, RecordKind kind) {
    if (!channel.empty() && !(sample.t > channel.back().t)) {
      throw NonMonotonicTimestamp(std::string(info(kind).channel), line_no_);
    }
    channel.push_back(sample);
  }

  DriveLog log_;
  std::size_t line_no_ = 0;
};

RecordKind kind_or_throw(std::string_view name, std::size_t line_no) {
  const auto kind = parse_record_kind(name);
  if (!kind) { throw UnknownKind(line_no, std::string(name)); }
  return *kind;
}

struct Entry {
  double t;
  RecordKind kind;
  std::size_t index;
};

void write_numbers(std::ostream& out, std::initializer_list<double> values) {
  for (double v : values) { out << ',' << text::format_shortest(v); }
}

}  // namespace

std::string_view to_string(RecordKind kind) { return info(kind).name; }

std::string_view channel_name(RecordKind kind) { return info(kind).channel; }

std::optional<RecordKind> parse_record_kind(std::string_view text) {
  for (const auto& ki : kKindInfo) {
    if (ki.name == text) { return ki.kind; }
  }
  return std::nullopt;
}

DriveLog parse_log(std::istream& in) {
  LogBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_ignorable(line)) { continue; }
    const auto comma = line.find(',');
    const std::string_view view(line);
    const auto kind = kind_or_throw(view.substr(0, comma), line_no);
    if (comma == std::string::npos) {
      throw MalformedRecord(line_no, "missing timestamp");
    }
    const std::size_t max_fields =
        kind == RecordKind::meta ? info(kind).field_count : 0;
    fields = text::split_fields(view.substr(comma + 1), max_fields);
    builder.add(kind, fields, line_no);
  }
  return builder.take();
}

DriveLog parse_log(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_log(in);
}

DriveLog parse_log_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw Error("cannot open " + path.string()); }
  return parse_log(in);
}

void serialize_log(const DriveLog& log, std::ostream& out) {
  const auto issues = validate_log(log);
  if (!issues.empty()) {
    const auto& first = issues.front();
    throw InvalidLog("cannot serialize invalid log: " + first.channel + "[" +
                     std::to_string(first.index) + "] violates " + first.rule);
  }

  std::vector<Entry> entries;
  auto collect = [&entries](RecordKind kind, const auto& channel) {
    for (std::size_t i = 0; i < channel.size(); ++i) {
      entries.push_back({channel[i].t, kind, i});
    }
  };
  collect(RecordKind::meta, log.meta);
  collect(RecordKind::pose, log.poses);
  collect(RecordKind::gps, log.gps);
  collect(RecordKind::imu, log.imu);
  collect(RecordKind::speed, log.speeds);
  collect(RecordKind::target_speed, log.target_speeds);
  collect(RecordKind::engage, log.engagement);
  collect(RecordKind::accel, log.accel);
  collect(RecordKind::brake, log.brake);
  collect(RecordKind::steering, log.steering);
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     if (a.t != b.t) { return a.t < b.t; }
                     return a.kind < b.kind;
                   });

  for (const auto& e : entries) {
    out << to_string(e.kind) << ',' << text::format_shortest(e.t);
    switch (e.kind) {
      case RecordKind::meta: {
        const auto& m = log.meta[e.index];
        out << ',' << m.key << ',' << m.value;
        break;
      }
      case RecordKind::pose: {
        const auto& p = log.poses[e.index];
        write_numbers(out, {p.x, p.y, p.z, p.q0, p.q1, p.q2, p.q3});
        break;
      }
      case RecordKind::gps: {
        const auto& g = log.gps[e.index];
        write_numbers(out, {g.latitude, g.longitude, g.altitude_ft});
        break;
      }
      case RecordKind::imu: {
        const auto& s = log.imu[e.index];
        write_numbers(out, {s.ax, s.ay, s.az, s.wx, s.wy, s.wz});
        break;
      }
      case RecordKind::speed:
        write_numbers(out, {log.speeds[e.index].v});
        break;
      case RecordKind::target_speed:
        write_numbers(out, {log.target_speeds[e.index].v});
        break;
      case RecordKind::engage:
        out << ',' << (log.engagement[e.index].enabled ? '1' : '0');
        break;
      case RecordKind::accel:
        write_numbers(out, {log.accel[e.index].value});
        break;
      case RecordKind::brake:
        write_numbers(out, {log.brake[e.index].value});
        break;
      case RecordKind::steering:
        write_numbers(out, {log.steering[e.index].value});
        break;
    }
    out << '\n';
  }
}

std::string serialize_log(const DriveLog& log) {
  std::ostringstream out;
  serialize_log(log, out);
  return out.str();
}

std::vector<std::string_view> csv_columns(RecordKind kind) {
  switch (kind) {
    case RecordKind::meta: return {"t", "key", "value"};
    case RecordKind::pose: return {"t", "x", "y", "z", "q0", "q1", "q2", "q3"};
    case RecordKind::gps: return {"t", "lat", "lon", "alt_ft"};
    case RecordKind::imu: return {"t", "ax", "ay", "az", "wx", "wy", "wz"};
    case RecordKind::speed:
    case RecordKind::target_speed: return {"t", "v"};
    case RecordKind::engage: return {"t", "enabled"};
    case RecordKind::accel:
    case RecordKind::brake:
    case RecordKind::steering: return {"t", "value"};
  }
  return {};
}

DriveLog parse_csv_bundle(
    const std::map<RecordKind, std::filesystem::path>& paths) {
  LogBuilder builder;
  for (const auto& [kind, path] : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw Error("cannot open " + path.string()); }
    const std::string kind_name(to_string(kind));

    std::string header_line;
    if (!std::getline(in, header_line)) {
      throw MissingColumn(kind_name, "t");
    }
    const auto header = text::split_fields(header_line);
    const auto wanted = csv_columns(kind);
    if (header.front() != "t") { throw MissingColumn(kind_name, "t"); }

    std::vector<std::size_t> column_of;
    for (const auto name : wanted) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) {
        throw MissingColumn(kind_name, std::string(name));
      }
      column_of.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    std::string line;
    std::size_t line_no = 1;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
      ++line_no;
      if (text::is_ignorable(line)) { continue; }
      const auto row = text::split_fields(line, header.size());
      if (row.size() != header.size()) {
        throw MalformedRecord(line_no, "expected " +
                                           std::to_string(header.size()) +
                                           " columns, got " +
                                           std::to_string(row.size()));
      }
      fields.clear();
      for (const auto c : column_of) { fields.push_back(row[c]); }
      builder.add(kind, fields, line_no);
    }
  }
  return builder.take();
}

}  // namespace avbench
