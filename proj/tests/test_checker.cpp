#include <random>

#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "semad/checker.hpp"
#include "semad/noise.hpp"
#include "semad/playout.hpp"
#include "semad/synth.hpp"
#include "support.hpp"

using namespace semad;
using T = ConstraintType;

namespace {
const std::vector<std::string> kSigma1 = {"receive loan application", "approve application", "check credit history",
                                          "send approval", "disburse funds"};
const std::vector<std::string> kSigma2 = {"receive loan application", "approve application", "reject application",
                                          "send rejection", "archive case"};
const std::vector<std::string> kSigma3 = {"check credit history", "approve application", "send approval",
                                          "disburse funds"};
}  // namespace

TEST_CASE("sigma3 violates Init") {
  const EventLog log("x", {Trace("s3", kSigma3)});
  const auto init = Constraint::unary(T::Init, "receive loan application");
  const auto report = check(log, {init});
  REQUIRE(report.constraints.size() == 1);
  CHECK(report.constraints[0].constraint == init);
  CHECK(report.constraints[0].trace_ids == std::vector<std::string>{"s3"});
  REQUIRE(report.traces.size() == 1);
  CHECK(report.traces[0].violations[0].witness == std::nullopt);
  CHECK(report.traces_checked == 1);
}

TEST_CASE("sigma1 and sigma2 are flagged against the loan truth") {
  const auto truth = extract_truth(support::loan_net());
  const EventLog log("x", {Trace("s1", kSigma1), Trace("s2", kSigma2)});
  const auto report = check(log, truth);
  CHECK(flag_traces(report) == std::set<std::string>{"s1", "s2"});

  bool exch = false;
  for (const auto& tv : report.traces) {
    for (const auto& v : tv.violations) {
      if (tv.trace_id == "s2" && v.constraint == Constraint::binary(T::ExclusiveChoice, "approve application",
                                                                    "reject application"))
        exch = true;
      if (tv.trace_id == "s1" && v.constraint == Constraint::binary(T::Precedence, "check credit history",
                                                                    "approve application"))
        CHECK(v.witness == 1);
    }
  }
  CHECK(exch);
  CHECK(report.traces[0].trace_id == "s1");
}

TEST_CASE("clean playout has no violations") {
  const auto net = support::loan_net();
  const auto truth = extract_truth(net);
  CHECK(check(playout_sample(net, 300, 50, 1), truth).traces.empty());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto n = random_block_net(seed);
    const auto lang = playout_exhaustive(n);
    CHECK(check(language_log(lang), extract_truth(lang, n.activities())).constraints.empty());
  }
}

TEST_CASE("frequency table shape") {
  const std::string rej = "declaration rejected by supervisor";
  const std::string app = "declaration approved by supervisor";
  std::vector<Trace> traces;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> t{"declaration submitted by employee", rej};
    if (i % 1000 >= 114) t.push_back(app);
    t.push_back("payment handled");
    traces.emplace_back("t" + std::to_string(i + 1), t);
  }
  const EventLog log("x", std::move(traces));
  const auto resp = Constraint::binary(T::Response, rej, app);
  const auto report = check(log, {resp, Constraint::unary(T::End, "payment handled")});
  REQUIRE(report.constraints.size() == 1);
  CHECK(report.constraints[0].frequency() == 114);
  CHECK(report.traces[0].violations[0].witness == 1);
  const auto csv = write_report_csv(report);
  CHECK(csv == "id,constraint,frequency\na1,\"Response(" + rej + ", " + app + ")\",114\n");
}

TEST_CASE("report invariants and parallel equals serial") {
  std::mt19937_64 g(31);
  std::vector<std::vector<std::string>> traces;
  for (int i = 0; i < 300; ++i) traces.push_back(randgen::trace(g, 5, 10, 1));
  const auto log = support::log_of(traces);
  ConstraintSet cs;
  for (int i = 0; i < 25; ++i) cs.insert(randgen::constraint(g, 5));

  const auto par = check(log, cs);
  const auto ser = check_serial(log, cs);
  CHECK(par == ser);

  std::size_t total = 0;
  for (const auto& f : par.constraints) {
    total += f.frequency();
    CHECK(std::set<std::string>(f.trace_ids.begin(), f.trace_ids.end()).size() == f.frequency());
    for (std::size_t t = 0; t < traces.size(); ++t) {
      const bool listed = std::find(f.trace_ids.begin(), f.trace_ids.end(), log.traces()[t].id) != f.trace_ids.end();
      CHECK(listed == !oracle::evaluate(f.constraint, traces[t]).satisfied);
    }
  }
  CHECK(total >= flag_traces(par).size());
  for (std::size_t i = 1; i < par.constraints.size(); ++i)
    CHECK(par.constraints[i - 1].frequency() >= par.constraints[i].frequency());
  for (const auto& tv : par.traces) {
    const auto idx = std::stoul(tv.trace_id.substr(1)) - 1;
    for (const auto& v : tv.violations) {
      CHECK(v.witness == oracle::evaluate(v.constraint, traces[idx]).witness);
      if (v.witness) CHECK(*v.witness < traces[idx].size());
    }
  }

  ConstraintSet more = cs;
  for (int i = 0; i < 10; ++i) more.insert(randgen::constraint(g, 5));
  const auto flagged = flag_traces(par);
  const auto flagged_more = flag_traces(check(log, more));
  for (const auto& id : flagged) CHECK(flagged_more.contains(id));
}

TEST_CASE("empty inputs") {
  CHECK(flag_traces(ViolationReport{}).empty());
  support::WarningCapture warnings;
  const auto r = check(support::log_of({{"a"}}), {});
  CHECK(r.traces.empty());
  CHECK(warnings.contains("empty constraint set"));
}

TEST_CASE("report json") {
  const EventLog log("x", {support::trace("t1", {"b", "a"}), support::trace("t2", {"a", "b"})});
  const auto report = check(log, {Constraint::binary(T::Precedence, "a", "b")});
  const auto doc = nlohmann::json::parse(write_report_json(report));
  CHECK(doc["traces_checked"] == 2);
  CHECK(doc["flagged_traces"] == nlohmann::json::array({"t1"}));
  CHECK(doc["constraints"][0]["constraint"] == "Precedence(a, b)");
  CHECK(doc["constraints"][0]["frequency"] == 1);
  CHECK(doc["constraints"][0]["traces"] == nlohmann::json::array({"t1"}));
  CHECK(doc["trace_violations"][0]["violations"][0]["event"] == 0);
  CHECK_FALSE(nlohmann::json::parse(write_report_json(report, false)).contains("trace_violations"));
}

TEST_CASE("noisy traces are detected") {
  const auto net = support::loan_net();
  const auto truth = extract_truth(net);
  const auto clean = language_log(playout_exhaustive(net));
  const auto noisy = expand_and_corrupt(clean, {1000, 0.3, 1, 42});
  const auto flagged = flag_traces(check(noisy.log, truth));
  std::size_t hit = 0;
  for (const auto& r : noisy.records) hit += flagged.contains(r.trace_id);
  CHECK(hit >= 200);
  // unrecorded traces are clean variants and must not be flagged
  CHECK(flagged.size() == hit);
}
