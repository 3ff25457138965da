#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avbench {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors tied to a position in an input text stream. `line_no` is 1-based;
/// 0 means "no specific line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line_no, const std::string& message);
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class MalformedRecord : public ParseError {
 public:
  MalformedRecord(std::size_t line_no, std::string reason);
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

class NonMonotonicTimestamp : public ParseError {
 public:
  NonMonotonicTimestamp(std::string channel, std::size_t line_no);
  const std::string& channel() const { return channel_; }

 private:
  std::string channel_;
};

class UnknownKind : public ParseError {
 public:
  UnknownKind(std::size_t line_no, std::string kind);
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class MissingColumn : public ParseError {
 public:
  MissingColumn(std::string kind, std::string column);
  const std::string& kind() const { return kind_; }
  const std::string& column() const { return column_; }

 private:
  std::string kind_;
  std::string column_;
};

class InvalidLog : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public ParseError {
 public:
  explicit InvalidScenario(const std::string& reason, std::size_t line_no = 0);
};

class EmptyChannel : public Error {
 public:
  explicit EmptyChannel(const std::string& channel);
};

class NoPosesInRange : public Error {
 public:
  using Error::Error;
};

class NoSpeedInRange : public Error {
 public:
  using Error::Error;
};

/// A distance failure inside segment_totals, tagged with the segment index.
class SegmentDistanceError : public Error {
 public:
  SegmentDistanceError(std::size_t segment_index, const std::string& what);
  std::size_t segment_index() const { return segment_index_; }

 private:
  std::size_t segment_index_;
};

class UnknownGroupKey : public Error {
 public:
  using Error::Error;
};

class NonPositiveCellSize : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class DegeneratePolygon : public ParseError {
 public:
  explicit DegeneratePolygon(const std::string& reason, std::size_t line_no = 0);
};

class MalformedSegment : public ParseError {
 public:
  MalformedSegment(std::size_t line_no, const std::string& reason);
};

class DuplicateId : public ParseError {
 public:
  DuplicateId(std::size_t line_no, const std::string& id);
};

class UnknownRoadType : public ParseError {
 public:
  UnknownRoadType(std::size_t line_no, const std::string& type);
};

class EmptyNetwork : public Error {
 public:
  EmptyNetwork();
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class InsufficientModeData : public Error {
 public:
  explicit InsufficientModeData(const std::string& mode);
  const std::string& mode() const { return mode_; }

 private:
  std::string mode_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace avbench
