#include <set>
#include <string>

#include "doctest.h"
#include "semad/error.hpp"
#include "semad/log.hpp"
#include "semad/log_io.hpp"
#include "support.hpp"

using namespace semad;

TEST_CASE("normalize_label") {
  CHECK(normalize_label("Check\nCredit History!") == "check credit history");
  CHECK(normalize_label("approve application") == "approve application");
  CHECK(normalize_label("  Send   APPROVAL  ") == "send approval");
  CHECK(normalize_label("a\r\n\tb") == "a b");
  CHECK(normalize_label("Step-2 (retry)") == "step2 retry");
  CHECK_THROWS_AS(normalize_label("  !? "), ValidationError);
  CHECK_THROWS_AS(normalize_label(""), ValidationError);
}

TEST_CASE("normalize_label is idempotent") {
  for (const char* raw : {"Check\nCredit History!", "  x  y ", "ABC", "a_b-c d"}) {
    const auto once = normalize_label(raw);
    CHECK(normalize_label(once) == once);
    CHECK(is_normalized_label(once));
  }
  CHECK_FALSE(is_normalized_label("Send approval"));
  CHECK_FALSE(is_normalized_label(" a"));
  CHECK_FALSE(is_normalized_label("a  b"));
}

TEST_CASE("event log validation") {
  CHECK_THROWS_AS(EventLog("x", {Trace("t1", {"a"}), Trace("t1", {"b"})}), ValidationError);
  CHECK_THROWS_AS(EventLog("x", {Trace("t1", {"Bad Label"})}), ValidationError);
  CHECK_THROWS_AS(EventLog("x", {Trace("t1", std::vector<std::string>{})}), ValidationError);
  CHECK_NOTHROW(EventLog("x", {Trace("t1", std::vector<std::string>{})}, true));
}

TEST_CASE("alphabet is the union of trace labels") {
  const auto log = support::log_of({{"a", "b"}, {"c"}, {"a", "d", "a"}});
  CHECK(log.alphabet() == std::set<std::string>{"a", "b", "c", "d"});
  const auto v = log.variants();
  CHECK(v.size() == 3);
  CHECK(std::is_sorted(v.begin(), v.end()));
}

namespace {
const char* kMinimalXes = R"x(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0">
  <trace>
    <string key="concept:name" value="t1"/>
    <event><string key="concept:name" value="a"/><date key="time:timestamp" value="2020-01-01"/></event>
    <event><string key="concept:name" value="b"/></event>
  </trace>
</log>)x";
}

TEST_CASE("parse_xes minimal") {
  const auto log = parse_xes(kMinimalXes);
  REQUIRE(log.size() == 1);
  CHECK(log.traces()[0].id == "t1");
  CHECK(log.traces()[0].labels() == std::vector<std::string>{"a", "b"});
  CHECK(log.alphabet() == std::set<std::string>{"a", "b"});
}

TEST_CASE("parse_xes keeps duplicate traces") {
  const char* doc = R"x(<log>
  <trace><string key="concept:name" value="t1"/><event><string key="concept:name" value="a"/></event></trace>
  <trace><string key="concept:name" value="t2"/><event><string key="concept:name" value="a"/></event></trace>
</log>)x";
  const auto log = parse_xes(doc);
  CHECK(log.size() == 2);
  CHECK(log.variants().size() == 1);
}

TEST_CASE("parse_xes normalizes labels and unescapes entities") {
  const char* doc = R"x(<log><trace><event><string key="concept:name" value="Check &amp; Approve&#10;Loan"/></event></trace></log>)x";
  const auto log = parse_xes(doc);
  CHECK(log.traces()[0].id == "1");
  CHECK(log.traces()[0][0] == "check approve loan");
}

TEST_CASE("parse_xes errors") {
  const char* missing = R"x(<log><trace><string key="concept:name" value="t1"/>
    <event><string key="org:resource" value="x"/></event></trace></log>)x";
  try {
    parse_xes(missing);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("missing activity name in trace t1") != std::string::npos);
  }

  try {
    parse_xes("<log>\n  <trace>\n    <event></trace>\n</log>");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(parse_xes("<notalog/>"), ParseError);
  CHECK_THROWS_AS(parse_xes(""), ParseError);
  CHECK_THROWS_AS(parse_xes("<log><trace></trace></log>"), ValidationError);
  CHECK_NOTHROW(parse_xes("<log><trace></trace></log>", LogReadOptions{true}));
}

TEST_CASE("xes round trip") {
  const auto log = support::log_of({{"a", "b"}, {"receive loan application", "c"}, {"a", "b"}});
  CHECK(parse_xes(write_xes(log)) == log);
}

TEST_CASE("jsonl log") {
  const auto log = read_jsonl_log(R"x({"id":"t1","events":["a","b"]})x", {}, "x");
  REQUIRE(log.size() == 1);
  CHECK(log.traces()[0] == Trace("t1", std::vector<std::string>{"a", "b"}));

  CHECK_THROWS_AS(read_jsonl_log(R"x({"id":"t1","events":[]})x"), ValidationError);
  CHECK(read_jsonl_log(R"x({"id":"t1","events":[]})x", LogReadOptions{true}).traces()[0].empty());

  try {
    read_jsonl_log("{\"id\":\"t1\",\"events\":[\"a\"]}\n{not json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  const auto round = support::log_of({{"a"}, {"b", "c"}});
  CHECK(read_jsonl_log(write_jsonl_log(round), {}, "test") == round);
}

TEST_CASE("log files") {
  support::TempDir dir;
  const auto log = support::log_of({{"a", "b"}});
  write_log_file(dir / "sub/x.xes", log);
  write_log_file(dir / "y.jsonl", log);
  CHECK(read_log_file(dir / "sub/x.xes").traces() == log.traces());
  CHECK(read_log_file(dir / "y.jsonl").traces() == log.traces());
  CHECK_THROWS_AS(read_log_file(dir / "missing.xes"), IoError);
}
