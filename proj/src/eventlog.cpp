#include "crier/eventlog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "crier/error.hpp"

namespace crier {

ParseError::ParseError(const std::string& message, std::size_t row,
                       std::string column)
    : Error(message), row_(row), column_(std::move(column)) {}

namespace {

bool read_digits(std::string_view s, std::size_t& pos, std::size_t count,
                 int& out) {
  if (pos + count > s.size()) return false;
  auto first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + count, out);
  if (ec != std::errc{} || ptr != first + count) return false;
  pos += count;
  return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  auto fail = [&]() -> Timestamp {
    throw ParseError("unparseable timestamp '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!read_digits(text, pos, 4, y) || !expect(text, pos, '-') ||
      !read_digits(text, pos, 2, mo) || !expect(text, pos, '-') ||
      !read_digits(text, pos, 2, d))
    return fail();
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return fail();

  milliseconds frac{0};
  minutes offset{0};
  if (pos < text.size()) {
    if (text[pos] != 'T' && text[pos] != ' ') return fail();
    ++pos;
    if (!read_digits(text, pos, 2, h) || !expect(text, pos, ':') ||
        !read_digits(text, pos, 2, mi))
      return fail();
    if (expect(text, pos, ':')) {
      if (!read_digits(text, pos, 2, sec)) return fail();
      if (expect(text, pos, '.') || expect(text, pos, ',')) {
        std::size_t start = pos;
        long scaled = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          if (pos - start < 3) scaled = scaled * 10 + (text[pos] - '0');
          ++pos;
        }
        if (pos == start) return fail();
        for (std::size_t k = pos - start; k < 3; ++k) scaled *= 10;
        frac = milliseconds{scaled};
      }
    }
    if (h > 23 || mi > 59 || sec > 60) return fail();
    if (pos < text.size()) {
      char c = text[pos++];
      if (c == 'Z' || c == 'z') {
        // UTC
      } else if (c == '+' || c == '-') {
        int oh = 0, om = 0;
        if (!read_digits(text, pos, 2, oh)) return fail();
        expect(text, pos, ':');
        if (!read_digits(text, pos, 2, om)) return fail();
        offset = hours{oh} + minutes{om};
        if (c == '-') offset = -offset;
      } else {
        return fail();
      }
    }
    if (pos != text.size()) return fail();
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} + frac -
         offset;
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss<milliseconds> tod{ts - day_point};
  char buf[40];
  int len = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld",
                          static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()),
                          static_cast<unsigned>(ymd.day()),
                          static_cast<long>(tod.hours().count()),
                          static_cast<long>(tod.minutes().count()),
                          static_cast<long>(tod.seconds().count()));
  std::string out(buf, static_cast<std::size_t>(len));
  if (auto ms = tod.subseconds().count(); ms != 0) {
    std::snprintf(buf, sizeof buf, ".%03ld", static_cast<long>(ms));
    out += buf;
  }
  out += 'Z';
  return out;
}

Trace::Trace(std::string case_id, std::vector<Event> events)
    : case_id_(std::move(case_id)), events_(std::move(events)) {
  if (case_id_.empty()) throw InvalidArgument("trace has an empty case id");
  if (events_.empty())
    throw InvalidArgument("trace '" + case_id_ + "' has no events");
  for (const auto& e : events_) {
    if (e.case_id != case_id_)
      throw InvalidArgument("event of case '" + e.case_id +
                            "' placed in trace '" + case_id_ + "'");
    if (e.activity.empty())
      throw InvalidArgument("event with empty activity in trace '" +
                            case_id_ + "'");
  }
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) {
                     return a.timestamp < b.timestamp;
                   });
  behavior_.reserve(events_.size());
  for (const auto& e : events_) behavior_.push_back(e.activity);
}

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    if (!seen.insert(traces_[i].case_id()).second)
      throw InvalidArgument("duplicate case id '" + traces_[i].case_id() +
                            "'");
    if (i > 0 && traces_[i].last_timestamp() < traces_[i - 1].last_timestamp())
      throw InvalidArgument("traces are not ordered by last timestamp");
  }
}

EventLog EventLog::from_events(std::vector<Event> events) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Event>> by_case;
  for (auto& e : events) {
    if (e.case_id.empty()) throw InvalidArgument("event with empty case id");
    auto [it, inserted] = by_case.try_emplace(e.case_id);
    if (inserted) order.push_back(e.case_id);
    it->second.push_back(std::move(e));
  }
  std::vector<Trace> traces;
  traces.reserve(order.size());
  for (auto& id : order) traces.emplace_back(id, std::move(by_case[id]));
  std::stable_sort(traces.begin(), traces.end(),
                   [](const Trace& a, const Trace& b) {
                     return a.last_timestamp() < b.last_timestamp();
                   });
  return EventLog(std::move(traces));
}

std::set<std::string> EventLog::activities() const {
  std::set<std::string> out;
  for (const auto& t : traces_)
    for (const auto& e : t.events()) out.insert(e.activity);
  return out;
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& t : traces_) n += t.size();
  return n;
}

std::set<Behavior> log_behavior(std::span<const Trace> traces) {
  std::set<Behavior> out;
  for (const auto& t : traces) out.insert(t.behavior());
  return out;
}

std::set<Behavior> log_behavior(const EventLog& log) {
  return log_behavior(std::span<const Trace>(log.traces()));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

// RFC-4180 record reader. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields,
                 std::size_t& line) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  ++line;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (;; c = in.get()) {
    if (quoted) {
      if (c == EOF) throw ParseError("unterminated quoted field", line);
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += static_cast<char>(c);
      }
      continue;
    }
    if (c == EOF || c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      return true;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_started = false;
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      continue;
    }
    field_started = true;
    field += static_cast<char>(c);
  }
}

bool blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

void write_field(std::ostream& out, const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

EventLog parse_csv(std::istream& in) {
  std::vector<std::string> header;
  std::size_t line = 0;
  do {
    if (!read_record(in, header, line)) throw ParseError("empty file");
  } while (blank(header));
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0)
    header[0].erase(0, 3);

  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw ParseError("missing required column '" + name + "'", 1, name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t case_col = column_of("case");
  const std::size_t time_col = column_of("timestamp");
  const std::size_t act_col = column_of("activity");

  std::vector<Event> events;
  std::vector<std::string> fields;
  while (read_record(in, fields, line)) {
    if (blank(fields)) continue;
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line);
    Event e;
    e.case_id = fields[case_col];
    e.activity = fields[act_col];
    if (e.case_id.empty()) throw ParseError("empty case id", line, "case");
    if (e.activity.empty())
      throw ParseError("empty activity", line, "activity");
    try {
      e.timestamp = parse_timestamp(fields[time_col]);
    } catch (const ParseError& err) {
      throw ParseError(std::string(err.what()) + " at row " +
                           std::to_string(line) + ", column 'timestamp'",
                       line, "timestamp");
    }
    for (std::size_t k = 0; k < header.size(); ++k)
      if (k != case_col && k != time_col && k != act_col && !fields[k].empty())
        e.attributes.emplace(header[k], fields[k]);
    events.push_back(std::move(e));
  }
  if (events.empty()) throw ParseError("log contains no events");
  return EventLog::from_events(std::move(events));
}

EventLog parse_csv_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_csv(in);
}

void write_csv(const EventLog& log, std::ostream& out) {
  std::set<std::string> extra;
  for (const auto& t : log.traces())
    for (const auto& e : t.events())
      for (const auto& [k, v] : e.attributes) extra.insert(k);
  out << "case,timestamp,activity";
  for (const auto& k : extra) {
    out << ',';
    write_field(out, k);
  }
  out << '\n';
  for (const auto& t : log.traces()) {
    for (const auto& e : t.events()) {
      write_field(out, e.case_id);
      out << ',' << format_timestamp(e.timestamp) << ',';
      write_field(out, e.activity);
      for (const auto& k : extra) {
        out << ',';
        if (auto it = e.attributes.find(k); it != e.attributes.end())
          write_field(out, it->second);
      }
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// XES

namespace {

namespace pt = boost::property_tree;

void write_xml_escaped(std::ostream& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '&': out << "&amp;"; break;
      case '<': out << "&lt;"; break;
      case '>': out << "&gt;"; break;
      case '"': out << "&quot;"; break;
      default: out << c;
    }
  }
}

bool is_attribute_tag(const std::string& tag) {
  return tag == "string" || tag == "date" || tag == "int" || tag == "float" ||
         tag == "boolean" || tag == "id";
}

}  // namespace

EventLog parse_xes(std::istream& in) {
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& err) {
    throw ParseError("malformed XML: " + err.message(), err.line());
  }
  auto log_node = doc.get_child_optional("log");
  if (!log_node) throw ParseError("missing <log> element");

  std::vector<Event> events;
  std::size_t trace_no = 0;
  for (const auto& [tag, trace] : *log_node) {
    if (tag != "trace") continue;
    ++trace_no;
    std::string case_id;
    for (const auto& [ttag, tattr] : trace)
      if (ttag == "string" &&
          tattr.get<std::string>("<xmlattr>.key", "") == "concept:name")
        case_id = tattr.get<std::string>("<xmlattr>.value", "");
    if (case_id.empty()) case_id = "trace_" + std::to_string(trace_no);

    std::size_t event_no = 0;
    for (const auto& [etag, ev] : trace) {
      if (etag != "event") continue;
      ++event_no;
      Event e;
      e.case_id = case_id;
      bool has_time = false;
      for (const auto& [atag, attr] : ev) {
        if (!is_attribute_tag(atag)) continue;
        const auto key = attr.get<std::string>("<xmlattr>.key", "");
        const auto value = attr.get<std::string>("<xmlattr>.value", "");
        if (key == "concept:name") {
          e.activity = value;
        } else if (key == "time:timestamp") {
          try {
            e.timestamp = parse_timestamp(value);
          } catch (const ParseError& err) {
            throw ParseError(std::string(err.what()) + " in trace '" +
                                 case_id + "', event " +
                                 std::to_string(event_no),
                             event_no, "time:timestamp");
          }
          has_time = true;
        } else if (!key.empty()) {
          e.attributes.emplace(key, value);
        }
      }
      if (e.activity.empty())
        throw ParseError("event " + std::to_string(event_no) + " of trace '" +
                             case_id + "' lacks concept:name",
                         event_no, "concept:name");
      if (!has_time)
        throw ParseError("event " + std::to_string(event_no) + " of trace '" +
                             case_id + "' lacks time:timestamp",
                         event_no, "time:timestamp");
      events.push_back(std::move(e));
    }
  }
  if (events.empty()) throw ParseError("log contains no events");
  return EventLog::from_events(std::move(events));
}

EventLog parse_xes_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_xes(in);
}

void write_xes(const EventLog& log, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<log xes.version=\"1.0\" xes.features=\"\">\n";
  for (const auto& t : log.traces()) {
    out << "  <trace>\n    <string key=\"concept:name\" value=\"";
    write_xml_escaped(out, t.case_id());
    out << "\"/>\n";
    for (const auto& e : t.events()) {
      out << "    <event>\n      <string key=\"concept:name\" value=\"";
      write_xml_escaped(out, e.activity);
      out << "\"/>\n      <date key=\"time:timestamp\" value=\""
          << format_timestamp(e.timestamp) << "\"/>\n";
      for (const auto& [k, v] : e.attributes) {
        out << "      <string key=\"";
        write_xml_escaped(out, k);
        out << "\" value=\"";
        write_xml_escaped(out, v);
        out << "\"/>\n";
      }
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
}

EventLog read_log_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  const bool xes = path.size() >= 4 && path.compare(path.size() - 4, 4, ".xes") == 0;
  return xes ? parse_xes(in) : parse_csv(in);
}

}  // namespace crier
