#include <doctest.h>

#include <sstream>

#include "crier/error.hpp"
#include "crier/eventlog.hpp"

using namespace crier;

namespace {

std::string fixture(const std::string& name) {
  return std::string(CRIER_TEST_DATA) + "/" + name;
}

const Behavior kCheckFirst = {"Lock feature", "Check restrictions",
                              "Build part", "Integration test",
                              "Quality test"};
const Behavior kInterview = {"Lock feature", "Interview customer",
                             "Build part", "Quality test", "Integration test"};

}  // namespace

TEST_CASE("timestamps") {
  const auto t = parse_timestamp("2021-10-01T08:01:00Z");
  CHECK(format_timestamp(t) == "2021-10-01T08:01:00Z");
  CHECK(parse_timestamp("2021-10-01 08:01") == t);
  CHECK(parse_timestamp("2021-10-01T10:01:00+02:00") == t);
  CHECK(format_timestamp(parse_timestamp("2021-10-01T08:01:00.250Z")) ==
        "2021-10-01T08:01:00.250Z");
  CHECK_THROWS_AS(parse_timestamp("01/10/2021 08:01"), ParseError);
  CHECK_THROWS_AS(parse_timestamp("2021-13-01T00:00:00"), ParseError);
}

TEST_CASE("product development log from CSV") {
  const EventLog log = read_log_file(fixture("product_log.csv"));
  CHECK(log.size() == 3);
  CHECK(log.event_count() == 15);
  CHECK(log.activities().size() == 6);

  // Ordered by last timestamp: #aac ends 16:22, #aaa 13:45, #aab 17:35.
  CHECK(log[0].case_id() == "#aaa");
  CHECK(log[1].case_id() == "#aac");
  CHECK(log[2].case_id() == "#aab");

  CHECK(log[2].behavior() == kCheckFirst);
  CHECK(log[1].behavior() == kInterview);
  // The timestamps put Quality test (13:37) before Integration test (13:45).
  CHECK(log[0].behavior() == Behavior{"Lock feature", "Check restrictions",
                                      "Build part", "Quality test",
                                      "Integration test"});

  const auto behaviors = log_behavior(log);
  CHECK(behaviors.size() == 3);
  CHECK(behaviors.count(kCheckFirst) == 1);
  CHECK(behaviors.count(kInterview) == 1);
  CHECK(log[0].events()[0].attributes.at("resource") == "Phoebe");
}

TEST_CASE("CSV and XES routes agree") {
  const EventLog csv = read_log_file(fixture("product_log.csv"));
  const EventLog xes = read_log_file(fixture("product_log.xes"));
  CHECK(csv == xes);
}

TEST_CASE("serialization round trips") {
  const EventLog log = read_log_file(fixture("product_log.csv"));
  std::ostringstream csv;
  write_csv(log, csv);
  CHECK(parse_csv_string(csv.str()) == log);

  std::ostringstream xes;
  write_xes(log, xes);
  CHECK(parse_xes_string(xes.str()) == log);

  std::ostringstream again;
  write_csv(parse_csv_string(csv.str()), again);
  CHECK(again.str() == csv.str());
}

TEST_CASE("RFC 4180 quoting") {
  const EventLog log = parse_csv_string(
      "case,timestamp,activity,note\n"
      "\"a,1\",2021-01-01T00:00:00Z,\"say \"\"hi\"\"\",\"two\nlines\"\n");
  REQUIRE(log.size() == 1);
  CHECK(log[0].case_id() == "a,1");
  CHECK(log[0].behavior() == Behavior{"say \"hi\""});
  CHECK(log[0].events()[0].attributes.at("note") == "two\nlines");
  std::ostringstream out;
  write_csv(log, out);
  CHECK(parse_csv_string(out.str()) == log);
}

TEST_CASE("single row and in-trace reordering") {
  const auto one = parse_csv_string(
      "case,timestamp,activity\nx,2021-01-01T00:00:00Z,A\n");
  CHECK(one.size() == 1);
  CHECK(one[0].size() == 1);

  const auto swapped = parse_csv_string(
      "case,timestamp,activity\n"
      "x,2021-01-01T00:05:00Z,B\n"
      "x,2021-01-01T00:01:00Z,A\n");
  CHECK(swapped[0].behavior() == Behavior{"A", "B"});
}

TEST_CASE("ties keep input order") {
  const auto within = parse_csv_string(
      "case,timestamp,activity\n"
      "x,2021-01-01T00:00:00Z,B\n"
      "x,2021-01-01T00:00:00Z,A\n");
  CHECK(within[0].behavior() == Behavior{"B", "A"});

  const auto across = parse_csv_string(
      "case,timestamp,activity\n"
      "y,2021-01-01T00:00:00Z,A\n"
      "x,2021-01-01T00:00:00Z,A\n");
  CHECK(across[0].case_id() == "y");
  CHECK(across[1].case_id() == "x");
}

TEST_CASE("trace order does not depend on row order") {
  const std::string header = "case,timestamp,activity\n";
  const std::string r1 = "a,2021-01-01T00:00:00Z,A\n";
  const std::string r2 = "a,2021-01-01T00:03:00Z,B\n";
  const std::string r3 = "b,2021-01-01T00:02:00Z,A\n";
  const auto x = parse_csv_string(header + r1 + r2 + r3);
  const auto y = parse_csv_string(header + r3 + r2 + r1);
  CHECK(x == y);
  CHECK(x[0].case_id() == "b");
}

TEST_CASE("CSV errors") {
  CHECK_THROWS_AS(parse_csv_string(""), ParseError);
  CHECK_THROWS_AS(parse_csv_string("case,timestamp,activity\n"), ParseError);
  try {
    parse_csv_string("case,activity\nx,A\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() == "timestamp");
  }
  try {
    parse_csv_string(
        "case,timestamp,activity\n"
        "x,2021-01-01T00:00:00Z,A\n"
        "x,yesterday,B\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == "timestamp");
  }
  CHECK_THROWS_AS(parse_csv_string("case,timestamp,activity\nx,2021-01-01,\n"),
                  ParseError);
}

TEST_CASE("XES errors and minimal input") {
  CHECK_THROWS_AS(parse_xes_string("<log/>"), ParseError);
  CHECK_THROWS_AS(parse_xes_string("<log><trace>"), ParseError);
  CHECK_THROWS_AS(
      parse_xes_string("<log><trace><event>"
                       "<string key=\"concept:name\" value=\"A\"/>"
                       "</event></trace></log>"),
      ParseError);
  const auto log = parse_xes_string(
      "<log><trace><string key=\"concept:name\" value=\"t\"/>"
      "<event><string key=\"concept:name\" value=\"A\"/>"
      "<date key=\"time:timestamp\" value=\"2021-01-01T00:00:00Z\"/></event>"
      "<event><string key=\"concept:name\" value=\"B\"/>"
      "<date key=\"time:timestamp\" value=\"2021-01-01T00:01:00Z\"/></event>"
      "</trace></log>");
  REQUIRE(log.size() == 1);
  CHECK(log[0].behavior().size() == 2);
}

TEST_CASE("log invariants") {
  using namespace std::chrono;
  const Timestamp t0{sys_days{year{2021} / 1 / 1}};
  CHECK_THROWS_AS(Trace("x", {}), InvalidArgument);
  CHECK_THROWS_AS(Trace("x", {{"A", t0, "y", {}}}), InvalidArgument);
  Trace a("a", {{"A", t0 + minutes(5), "a", {}}});
  Trace b("b", {{"A", t0, "b", {}}});
  CHECK_THROWS_AS(EventLog({a, b}), InvalidArgument);
  CHECK_THROWS_AS(EventLog({b, b}), InvalidArgument);

  const auto same = parse_csv_string(
      "case,timestamp,activity\n"
      "x,2021-01-01T00:00:00Z,A\ny,2021-01-01T00:01:00Z,A\n"
      "z,2021-01-01T00:02:00Z,A\n");
  CHECK(log_behavior(same).size() == 1);
  CHECK(log_behavior(same).size() <= same.size());
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_log_file("/nonexistent/log.csv"), IoError);
}
