#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "random.hpp"
#include "semad/error.hpp"
#include "semad/gateway.hpp"
#include "semad/playout.hpp"
#include "semad/synth.hpp"
#include "support.hpp"

using namespace semad;
using T = ConstraintType;

namespace {
const std::set<std::string> kLoanLabels = {"approve application",      "reject application", "check credit history",
                                           "receive loan application", "send approval",      "send rejection",
                                           "archive case",             "disburse fund"};

std::pair<std::string, std::vector<std::string>> split_input(const std::string& input) {
  const auto colon = input.find(": ");
  std::vector<std::string> labels;
  std::string rest = input.substr(colon + 2);
  std::size_t start = 0;
  while (true) {
    const auto comma = rest.find(", ", start);
    labels.push_back(rest.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 2;
  }
  return {input.substr(0, colon), labels};
}
}  // namespace

TEST_CASE("build_input") {
  const auto in = build_input(T::Init, kLoanLabels, 1);
  const auto [type, labels] = split_input(in);
  CHECK(type == "Init");
  CHECK(std::set<std::string>(labels.begin(), labels.end()) == kLoanLabels);
  CHECK(labels.size() == kLoanLabels.size());
  CHECK(build_input(T::Init, kLoanLabels, 1) == in);
  CHECK(build_input(T::Init, {"a"}, 5) == "Init: a");
  CHECK(build_input(T::ExclusiveChoice, {"a"}, 5) == "Exclusive choice: a");
  CHECK_THROWS_AS(build_input(T::Init, {}, 1), ValidationError);

  std::set<std::string> orders;
  for (std::uint64_t s = 0; s < 20; ++s) orders.insert(build_input(T::Init, kLoanLabels, s));
  CHECK(orders.size() > 1);
}

TEST_CASE("export_training_pairs") {
  const auto net = support::loan_net();
  const auto truth = extract_truth(net);
  const ModelTruth loan{net.activities(), truth};
  const auto pairs = export_training_pairs({loan}, 3);
  CHECK(pairs.size() == truth.size());
  CHECK(std::any_of(pairs.begin(), pairs.end(), [](const TrainingPair& p) {
    return p.target == "Exclusive choice(approve application, reject application)" &&
           p.input.rfind("Exclusive choice: ", 0) == 0;
  }));
  CHECK(export_training_pairs({loan}, 3).size() == pairs.size());

  const ModelTruth three{{"a", "b", "c"},
                         {Constraint::unary(T::Init, "a"), Constraint::binary(T::Response, "a", "b"),
                          Constraint::binary(T::Choice, "b", "c")}};
  CHECK(export_training_pairs({three}, 0).size() == 3);

  support::WarningCapture warnings;
  CHECK(export_training_pairs({ModelTruth{{"a"}, {}}}, 0).empty());
  CHECK(warnings.contains("no ground-truth constraints"));
}

TEST_CASE("training pairs are well formed over a generated corpus") {
  std::vector<ModelTruth> repo;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = random_block_net(seed);
    repo.push_back({net.activities(), extract_truth(net)});
  }
  const auto pairs = export_training_pairs(repo, 17);
  CHECK(pairs.size() > 0);
  for (const auto& p : pairs) {
    const auto target = parse_constraint(p.target);
    const auto [type, labels] = split_input(p.input);
    CHECK(type == long_name(target.type()));
    CHECK(std::find(labels.begin(), labels.end(), target.first()) != labels.end());
    if (target.arity() == 2) CHECK(std::find(labels.begin(), labels.end(), target.second()) != labels.end());
    CHECK(std::set<std::string>(labels.begin(), labels.end()).size() == labels.size());
  }
  const auto again = export_training_pairs(repo, 17);
  CHECK(write_training_pairs(again) == write_training_pairs(pairs));
  const auto jsonl = write_training_pairs(pairs);
  const auto first = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
  CHECK(first["input"] == pairs[0].input);
  CHECK(first["target"] == pairs[0].target);
}

TEST_CASE("build_queries") {
  const auto q = build_queries({"a", "b"}, 1);
  REQUIRE(q.size() == kAllConstraintTypes.size());
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(split_input(q[i]).first == long_name(kAllConstraintTypes[i]));
}

TEST_CASE("ingest_candidates") {
  const auto one = ingest_candidates(R"x({"type":"Init","text":"Init(a)","prob":0.5})x");
  REQUIRE(one.candidates.size() == 1);
  CHECK(one.candidates[0].queried == T::Init);
  CHECK(one.candidates[0].probability == 0.5);

  const auto bad = ingest_candidates(R"x({"type":"Init","text":"Init(a)","prob":1.2})x");
  CHECK(bad.candidates.empty());
  REQUIRE(bad.errors.size() == 1);
  CHECK(bad.errors[0].line == 1);

  const auto mixed = ingest_candidates(
      "{\"type\":\"Init\",\"text\":\"Init(a)\",\"prob\":0.5}\n"
      "{\"type\":\"Init\",\"text\":3,\"prob\":0.5}\n"
      "{\"type\":\"Response\",\"text\":\"Response(a, b)\",\"prob\":0.1}\n");
  CHECK(mixed.candidates.size() == 2);
  REQUIRE(mixed.errors.size() == 1);
  CHECK(mixed.errors[0].line == 2);

  CHECK(ingest_candidates("not json\n").errors.size() == 1);
  CHECK(ingest_candidates(R"x({"type":"Chain","text":"x","prob":0.1})x").errors.size() == 1);

  const auto round = ingest_candidates(write_candidates(mixed.candidates));
  CHECK(round.errors.empty());
  REQUIRE(round.candidates.size() == 2);
  CHECK(round.candidates[1].raw_text == "Response(a, b)");
}

TEST_CASE("filter illustration") {
  const std::vector<CandidateConstraint> cands = {{"Init(receive loan application)", 0.95, T::Init},
                                                  {"Init(check credit history)", 0.40, T::Init},
                                                  {"Init(receive application)", 0.90, T::Init}};
  const auto r = filter_candidates(cands, kLoanLabels, {0.7});
  CHECK(r.constraints == ConstraintSet{Constraint::unary(T::Init, "receive loan application")});
  CHECK(r.rejects == RejectCounts{0, 1, 1, 0});
}

TEST_CASE("filter threshold is strict") {
  const std::vector<CandidateConstraint> cands = {{"Init(a)", 1.0, T::Init}, {"End(a)", 0.7, T::End}};
  CHECK(filter_candidates(cands, {"a"}, {1.0}).constraints.empty());
  const auto at = filter_candidates(cands, {"a"}, {0.7});
  CHECK(at.constraints == ConstraintSet{Constraint::unary(T::Init, "a")});
}

TEST_CASE("filter dedup, parse and type mismatch") {
  const std::vector<CandidateConstraint> cands = {
      {"Response(a, b)", 0.8, T::Response},  {"Response(a,b)", 0.9, T::Response},   {"Response(a, a)", 0.9, T::Response},
      {"Chain response(a, b)", 0.9, T::Response}, {"Precedence(a, b)", 0.9, T::Response}, {"Response(a, z)", 0.1, T::Response}};
  const auto r = filter_candidates(cands, {"a", "b"}, {0.7});
  CHECK(r.constraints.size() == 1);
  CHECK(r.rejects == RejectCounts{2, 1, 0, 1});
  const auto report = nlohmann::json::parse(write_reject_report(r.rejects));
  CHECK(report["parse"] == 2);
  CHECK(report["vocab"] == 1);
  CHECK(report["type_mismatch"] == 1);
}

TEST_CASE("filter is antitone in theta and respects vocab") {
  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  std::vector<CandidateConstraint> cands;
  for (int i = 0; i < 400; ++i) {
    const auto c = randgen::constraint(g, 7);
    cands.push_back({render_constraint(c), p(g), c.type()});
  }
  const std::set<std::string> vocab{"a", "b", "c", "d", "e"};
  ConstraintSet prev = filter_candidates(cands, vocab, {0.0}).constraints;
  for (int k = 1; k <= 20; ++k) {
    const auto cur = filter_candidates(cands, vocab, {k * 0.05}).constraints;
    for (const auto& c : cur) {
      CHECK(prev.contains(c));
      CHECK(vocab.contains(c.first()));
      if (c.arity() == 2) CHECK(vocab.contains(c.second()));
    }
    prev = cur;
  }
}
