#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crier {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Ordered sequence of activity names executed by one case.
using Behavior = std::vector<std::string>;

/// Parses an ISO-8601 date-time (`YYYY-MM-DD[T| ]hh:mm[:ss[.fff]][Z|+hh:mm]`).
/// Throws ParseError on malformed input.
Timestamp parse_timestamp(std::string_view text);

/// Formats as `YYYY-MM-DDThh:mm:ss[.fff]Z`; milliseconds only when non-zero.
std::string format_timestamp(Timestamp ts);

struct Event {
  std::string activity;
  Timestamp timestamp;
  std::string case_id;
  std::map<std::string, std::string> attributes;

  bool operator==(const Event&) const = default;
};

class Trace {
 public:
  /// Events must share `case_id`. They are stably sorted by timestamp, so
  /// ties keep their input order.
  Trace(std::string case_id, std::vector<Event> events);

  const std::string& case_id() const noexcept { return case_id_; }
  const std::vector<Event>& events() const noexcept { return events_; }
  const Behavior& behavior() const noexcept { return behavior_; }
  std::size_t size() const noexcept { return events_.size(); }
  Timestamp last_timestamp() const { return events_.back().timestamp; }

  bool operator==(const Trace&) const = default;

 private:
  std::string case_id_;
  std::vector<Event> events_;
  Behavior behavior_;
};

class EventLog {
 public:
  EventLog() = default;

  /// Builds a log from events in input order. Events are grouped by case,
  /// and traces are ordered by their last timestamp; traces whose last
  /// timestamps tie keep the order in which their case first appeared.
  static EventLog from_events(std::vector<Event> events);

  /// Takes traces already in log order. Throws InvalidArgument on duplicate
  /// case ids or out-of-order last timestamps.
  explicit EventLog(std::vector<Trace> traces);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }
  const Trace& operator[](std::size_t i) const { return traces_[i]; }

  std::set<std::string> activities() const;
  std::size_t event_count() const;

  bool operator==(const EventLog&) const = default;

 private:
  std::vector<Trace> traces_;
};

/// The distinct behaviors observed in the log.
std::set<Behavior> log_behavior(const EventLog& log);
std::set<Behavior> log_behavior(std::span<const Trace> traces);

EventLog parse_csv(std::istream& in);
EventLog parse_csv_string(std::string_view text);
void write_csv(const EventLog& log, std::ostream& out);

EventLog parse_xes(std::istream& in);
EventLog parse_xes_string(std::string_view text);
void write_xes(const EventLog& log, std::ostream& out);

/// Dispatches on file extension: `.xes` goes to the XES reader, anything
/// else is read as CSV.
EventLog read_log_file(const std::string& path);

}  // namespace crier
