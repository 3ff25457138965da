#include "avbench/errors.hpp"

namespace avbench {

namespace {

std::string with_line(std::size_t line_no, const std::string& message) {
  if (line_no == 0) { return message; }
  return "line " + std::to_string(line_no) + ": " + message;
}

}  // namespace

ParseError::ParseError(std::size_t line_no, const std::string& message)
    : Error(with_line(line_no, message)), line_no_(line_no) {}

MalformedRecord::MalformedRecord(std::size_t line_no, std::string reason)
    : ParseError(line_no, "malformed record: " + reason),
      reason_(std::move(reason)) {}

NonMonotonicTimestamp::NonMonotonicTimestamp(std::string channel,
                                             std::size_t line_no)
    : ParseError(line_no, "non-monotonic timestamp in channel " + channel),
      channel_(std::move(channel)) {}

UnknownKind::UnknownKind(std::size_t line_no, std::string kind)
    : ParseError(line_no, "unknown record kind '" + kind + "'"),
      kind_(std::move(kind)) {}

MissingColumn::MissingColumn(std::string kind, std::string column)
    : ParseError(1, "missing column '" + column + "' for kind " + kind),
      kind_(std::move(kind)),
      column_(std::move(column)) {}

InvalidScenario::InvalidScenario(const std::string& reason, std::size_t line_no)
    : ParseError(line_no, "invalid scenario: " + reason) {}

EmptyChannel::EmptyChannel(const std::string& channel)
    : Error("channel '" + channel + "' is empty") {}

SegmentDistanceError::SegmentDistanceError(std::size_t segment_index,
                                           const std::string& what)
    : Error("segment " + std::to_string(segment_index) + ": " + what),
      segment_index_(segment_index) {}

DegeneratePolygon::DegeneratePolygon(const std::string& reason,
                                     std::size_t line_no)
    : ParseError(line_no, "degenerate polygon: " + reason) {}

MalformedSegment::MalformedSegment(std::size_t line_no,
                                   const std::string& reason)
    : ParseError(line_no, "malformed road segment: " + reason) {}

DuplicateId::DuplicateId(std::size_t line_no, const std::string& id)
    : ParseError(line_no, "duplicate road segment id '" + id + "'") {}

UnknownRoadType::UnknownRoadType(std::size_t line_no, const std::string& type)
    : ParseError(line_no, "unknown road type '" + type + "'") {}

EmptyNetwork::EmptyNetwork() : Error("road network has no segments") {}

InsufficientModeData::InsufficientModeData(const std::string& mode)
    : Error("insufficient " + mode + " data for spectrum"), mode_(mode) {}

}  // namespace avbench
