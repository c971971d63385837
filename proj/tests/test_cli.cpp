#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "semad/cli.hpp"
#include "semad/declare.hpp"
#include "semad/log_io.hpp"
#include "semad/net.hpp"
#include "support.hpp"

using namespace semad;
namespace fs = std::filesystem;

namespace {
struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  support::WarningCapture quiet;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = SEMAD_DATA_DIR;
const std::string kLoan = kData + "/nets/loan.net.json";
}  // namespace

TEST_CASE("usage errors") {
  const auto none = run({});
  CHECK(none.code == cli::kExitUsage);
  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == cli::kExitUsage);
  CHECK(unknown.err.find("Subcommands:") != std::string::npos);
  CHECK(run({"gen-truth"}).code == cli::kExitUsage);
  CHECK(run({"filter", "x.jsonl", "--log", "y.xes", "--theta", "2"}).code == cli::kExitUsage);
}

TEST_CASE("help documents flags and defaults") {
  const auto top = run({"--help"});
  CHECK(top.code == 0);
  for (const char* sub : {"validate-net", "playout", "gen-truth", "noise", "mine", "export-train", "filter", "check",
                          "eval", "sweep", "pipeline"})
    CHECK(top.out.find(sub) != std::string::npos);

  const auto pipe = run({"pipeline", "--help"});
  CHECK(pipe.code == 0);
  for (const char* flag : {"--theta", "--seed", "--target-traces", "--noisy-fraction", "--min-support",
                           "--min-confidence", "--min-interest", "--max-len", "--max-variants", "--out", "--json"})
    CHECK(pipe.out.find(flag) != std::string::npos);
  CHECK(pipe.out.find("0.95") != std::string::npos);
  CHECK(pipe.out.find("1000") != std::string::npos);
}

TEST_CASE("validate-net exit codes") {
  CHECK(run({"validate-net", kLoan}).code == 0);
  const auto js = run({"validate-net", kLoan, "--json"});
  CHECK(nlohmann::json::parse(js.out)["soundness"] == "sound");

  support::TempDir dir;
  write_text_file(dir / "bad.net.json", R"x({"places":["p0","p1","p2"],"transitions":[{"id":"t","label":"a"}],
    "arcs":[["p0","t"],["t","p1"],["t","p2"]],"source":"p0","sink":"p1"})x");
  const auto bad = run({"validate-net", dir / "bad.net.json"});
  CHECK(bad.code == cli::kExitValidation);
  CHECK(bad.err.find("multiple sink places") != std::string::npos);

  write_text_file(dir / "dead.net.json", R"x({"places":["p0","p1","pf","px"],
    "transitions":[{"id":"ta","label":"a"},{"id":"tb","label":"b"},{"id":"td","label":"d"}],
    "arcs":[["p0","ta"],["ta","p1"],["p1","tb"],["tb","pf"],["p1","td"],["px","td"],["td","p1"],["td","px"]],
    "source":"p0","sink":"pf"})x");
  CHECK(run({"validate-net", dir / "dead.net.json"}).code == cli::kExitValidation);

  write_text_file(dir / "broken.json", "{");
  CHECK(run({"validate-net", dir / "broken.json"}).code == cli::kExitValidation);
  CHECK(run({"validate-net", dir / "missing.json"}).code == cli::kExitIo);
}

TEST_CASE("gen-truth") {
  const auto r = run({"gen-truth", kLoan});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"Exclusive choice(approve application, reject application)\"") != std::string::npos);
}

TEST_CASE("stage composition") {
  support::TempDir dir;
  REQUIRE(run({"playout", kLoan, "--out", dir / "clean.xes"}).code == 0);
  REQUIRE(run({"gen-truth", kLoan, "--out", dir / "truth.json"}).code == 0);
  REQUIRE(run({"noise", dir / "clean.xes", "--out", dir / "noisy.xes", "--seed", "3"}).code == 0);
  CHECK(fs::exists(dir / "noisy.noise.jsonl"));
  CHECK(read_log_file(dir / "noisy.xes").size() == 1000);

  REQUIRE(run({"check", dir / "clean.xes", dir / "truth.json", "--out", dir / "clean_report.json"}).code == 0);
  CHECK(nlohmann::json::parse(read_text_file(dir / "clean_report.json"))["flagged_traces"].empty());

  const auto chk = run({"check", dir / "noisy.xes", dir / "truth.json", "--csv", dir / "r.csv", "--json"});
  REQUIRE(chk.code == 0);
  CHECK(read_text_file(dir / "r.csv").rfind("id,constraint,frequency\na1,", 0) == 0);

  REQUIRE(run({"mine", dir / "noisy.xes", "--out", dir / "mined.json", "--scores", dir / "scores.csv"}).code == 0);
  CHECK(read_text_file(dir / "scores.csv").rfind("constraint,support", 0) == 0);

  const auto ev = run({"eval", "--pred", dir / "mined.json", "--truth", dir / "truth.json"});
  REQUIRE(ev.code == 0);
  CHECK(ev.out.rfind("scenario,precision,recall,f1\nEvF,", 0) == 0);

  const auto pairs = run({"export-train", kData + "/nets"});
  REQUIRE(pairs.code == 0);
  CHECK(pairs.out.find("\"target\":\"Exclusive choice(approve application, reject application)\"") !=
        std::string::npos);

  CHECK(run({"check", dir / "missing.xes", dir / "truth.json"}).code == cli::kExitIo);
}

TEST_CASE("filter illustration through files") {
  support::TempDir dir;
  write_text_file(dir / "log.xes", write_xes(support::log_of(
                                        {{"receive loan application", "check credit history", "approve application",
                                          "send approval", "disburse fund"},
                                         {"receive loan application", "approve application", "reject application",
                                          "send rejection", "archive case"}})));
  write_text_file(dir / "cands.jsonl",
                  "{\"type\":\"Init\",\"text\":\"Init(receive loan application)\",\"prob\":0.95}\n"
                  "{\"type\":\"Init\",\"text\":\"Init(check credit history)\",\"prob\":0.40}\n"
                  "{\"type\":\"Init\",\"text\":\"Init(receive application)\",\"prob\":0.90}\n");
  const auto r = run({"filter", dir / "cands.jsonl", "--log", dir / "log.xes", "--theta", "0.7", "--rejects",
                      dir / "rej.json"});
  REQUIRE(r.code == 0);
  CHECK(parse_constraint_set_json(r.out) == ConstraintSet{parse_constraint("Init(receive loan application)")});
  const auto rej = nlohmann::json::parse(read_text_file(dir / "rej.json"));
  CHECK(rej["vocab"] == 1);
  CHECK(rej["threshold"] == 1);

  write_text_file(dir / "truth.json", R"x({"constraints":["Init(receive loan application)"]})x");
  const auto sw = run({"sweep", "--cands", dir / "cands.jsonl", "--log", dir / "log.xes", "--truth",
                       dir / "truth.json", "--json"});
  REQUIRE(sw.code == 0);
}

TEST_CASE("seed falls back to the environment") {
  support::TempDir dir;
  REQUIRE(run({"playout", kLoan, "--out", dir / "clean.xes"}).code == 0);
  REQUIRE(run({"noise", dir / "clean.xes", "--out", dir / "a.xes", "--seed", "42"}).code == 0);
  REQUIRE(run({"noise", dir / "clean.xes", "--out", dir / "b.xes"}).code == 0);
  ::setenv("SEMADKIT_SEED", "5", 1);
  REQUIRE(run({"noise", dir / "clean.xes", "--out", dir / "c.xes"}).code == 0);
  REQUIRE(run({"noise", dir / "clean.xes", "--out", dir / "d.xes", "--seed", "5"}).code == 0);
  ::unsetenv("SEMADKIT_SEED");
  CHECK(read_text_file(dir / "a.xes") == read_text_file(dir / "b.xes"));
  CHECK(read_text_file(dir / "c.xes") == read_text_file(dir / "d.xes"));
  CHECK(read_text_file(dir / "a.xes") != read_text_file(dir / "c.xes"));
}

TEST_CASE("pipeline") {
  support::TempDir dir;
  const auto r = run({"pipeline", kData + "/nets", "--out", dir / "run", "--seed", "42", "--json"});
  REQUIRE(r.code == 0);
  for (const char* f : {"eval.json", "eval.csv", "summary.json", "loan/clean.xes", "loan/truth.json",
                        "loan/noisy.xes", "loan/noisy.noise.jsonl", "loan/pred.json", "loan/report.json",
                        "loan/report.csv", "loan/scores.csv"})
    CHECK(fs::exists(dir / ("run/" + std::string(f))));
  CHECK(run({"pipeline", dir / "nowhere", "--out", dir / "x"}).code == cli::kExitIo);
}
