#include "semad/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "semad/checker.hpp"
#include "semad/diagnostics.hpp"
#include "semad/error.hpp"
#include "semad/eval.hpp"
#include "semad/gateway.hpp"
#include "semad/log_io.hpp"
#include "semad/miner.hpp"
#include "semad/noise.hpp"
#include "semad/playout.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace semad::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct Common {
  std::optional<std::uint64_t> seed;
  bool json = false;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("SEMADKIT_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw ValidationError(std::string("SEMADKIT_SEED is not an integer: ") + env);
      }
    }
    return kDefaultSeed;
  }
};

struct Bounds {
  std::size_t max_len = PlayoutBounds{}.max_len;
  std::size_t max_variants = PlayoutBounds{}.max_variants;

  PlayoutBounds get() const { return {max_len, max_variants}; }
};

void add_bounds(CLI::App* cmd, Bounds& b) {
  cmd->add_option("--max-len", b.max_len, "Maximum trace length during playout")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-variants", b.max_variants, "Maximum distinct traces during exhaustive playout")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_noise(CLI::App* cmd, NoiseConfig& n) {
  cmd->add_option("--target-traces", n.target_traces, "Traces in the noisy log")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--noisy-fraction", n.noisy_fraction, "Fraction of traces receiving noise")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--ops-per-trace", n.ops_per_noisy_trace, "Noise operations per noisy trace")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_miner(CLI::App* cmd, MinerConfig& m) {
  cmd->add_option("--min-support", m.min_support, "Minimum support")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--min-confidence", m.min_confidence, "Minimum confidence")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--min-interest", m.min_interest, "Minimum interest factor")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed (falls back to $SEMADKIT_SEED, then 42)");
  cmd->add_flag("--json", c.json, "Print a machine-readable JSON summary on stdout");
}

// Writes to `path`, or to stdout when no path is given.
void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (path) {
    write_text_file(*path, content);
  } else {
    out << content;
  }
}

void report(std::ostream& out, const Common& c, const json& summary, const std::string& human) {
  if (c.json) {
    out << summary.dump(2) << '\n';
  } else if (!human.empty()) {
    out << human << '\n';
  }
}

std::string stem_of(const fs::path& p) {
  std::string name = p.filename().string();
  for (const std::string suffix : {".net.json", ".json"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) return name.substr(0, name.size() - suffix.size());
  }
  return p.stem().string();
}

WorkflowNet load_net(const fs::path& p) { return parse_net(read_text_file(p), stem_of(p)); }

// Expands directories into their *.json files, sorted.
std::vector<fs::path> collect_nets(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      out.push_back(p);
    } else {
      throw IoError("no such file or directory: " + in);
    }
  }
  if (out.empty()) throw ValidationError("no net files found");
  return out;
}

std::string truth_json(const ConstraintSet& truth, bool approximate) {
  json doc = json::parse(write_constraint_set_json(truth));
  if (approximate) doc["approximate"] = true;
  return doc.dump(2) + "\n";
}

struct TruthOutcome {
  ConstraintSet truth;
  BoundedLanguage language;
};

TruthOutcome truth_for(const WorkflowNet& net, const PlayoutBounds& bounds, bool allow_truncated) {
  TruthOutcome t;
  t.language = playout_exhaustive(net, bounds);
  t.truth = extract_truth(t.language, net.activities(), allow_truncated);
  return t;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"semadkit: explainable semantic anomaly detection over event logs"};
  app.require_subcommand(1);
  app.name("semadkit");

  Common common;
  Bounds bounds;
  NoiseConfig noise_cfg;
  MinerConfig miner_cfg;

  // validate-net
  std::string net_path;
  std::size_t state_bound = kDefaultStateBound;
  auto* validate = app.add_subcommand("validate-net", "Check net structure and soundness");
  validate->add_option("net", net_path, "Workflow net JSON")->required();
  validate->add_option("--state-bound", state_bound, "Maximum markings explored")->capture_default_str();
  add_common(validate, common);

  // playout
  std::string mode = "exhaustive";
  std::size_t n_traces = 1000;
  std::optional<std::string> out_path;
  auto* playout = app.add_subcommand("playout", "Generate an event log from a net");
  playout->add_option("net", net_path, "Workflow net JSON")->required();
  playout->add_option("--mode", mode, "exhaustive or sample")
      ->capture_default_str()
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  playout->add_option("--traces", n_traces, "Traces to draw in sample mode")->capture_default_str();
  playout->add_option("--out", out_path, "Output log (.xes or .jsonl); stdout XES if omitted");
  add_bounds(playout, bounds);
  add_common(playout, common);

  // gen-truth
  bool allow_approximate = false;
  auto* gen_truth = app.add_subcommand("gen-truth", "Extract ground-truth constraints from a net");
  gen_truth->add_option("net", net_path, "Workflow net JSON")->required();
  gen_truth->add_option("--out", out_path, "Constraint set JSON; stdout if omitted");
  gen_truth->add_flag("--allow-approximate", allow_approximate,
                      "Accept a truncated language and mark the output approximate");
  add_bounds(gen_truth, bounds);
  add_common(gen_truth, common);

  // noise
  std::string log_path;
  std::optional<std::string> records_path;
  auto* noise = app.add_subcommand("noise", "Expand a clean log and inject noise");
  noise->add_option("log", log_path, "Clean log (.xes or .jsonl)")->required();
  noise->add_option("--out", out_path, "Noisy log output")->required();
  noise->add_option("--records", records_path, "Noise record JSONL (default: <out stem>.noise.jsonl)");
  add_noise(noise, noise_cfg);
  add_common(noise, common);

  // mine
  std::optional<std::string> scores_path;
  auto* mine_cmd = app.add_subcommand("mine", "Mine constraints from a log by support and confidence");
  mine_cmd->add_option("log", log_path, "Event log")->required();
  mine_cmd->add_option("--out", out_path, "Constraint set JSON; stdout if omitted");
  mine_cmd->add_option("--scores", scores_path, "Scores CSV");
  add_miner(mine_cmd, miner_cfg);
  add_common(mine_cmd, common);

  // export-train
  std::vector<std::string> net_inputs;
  auto* export_train = app.add_subcommand("export-train", "Export training pairs from nets");
  export_train->add_option("nets", net_inputs, "Net files or directories")->required();
  export_train->add_option("--out", out_path, "Training pair JSONL; stdout if omitted");
  add_bounds(export_train, bounds);
  add_common(export_train, common);

  // filter
  std::string cands_path;
  double theta = 0.5;
  std::optional<std::string> rejects_path;
  auto* filter = app.add_subcommand("filter", "Filter generator candidates by vocabulary and threshold");
  filter->add_option("candidates", cands_path, "Candidate JSONL")->required();
  filter->add_option("--log", log_path, "Log supplying the vocabulary")->required();
  filter->add_option("--theta", theta, "Probability threshold (strict)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  filter->add_option("--out", out_path, "Constraint set JSON; stdout if omitted");
  filter->add_option("--rejects", rejects_path, "Reject report JSON");
  add_common(filter, common);

  // check
  std::string constraints_path;
  std::optional<std::string> csv_path;
  auto* check_cmd = app.add_subcommand("check", "Check a log against a constraint set");
  check_cmd->add_option("log", log_path, "Event log")->required();
  check_cmd->add_option("constraints", constraints_path, "Constraint set JSON")->required();
  check_cmd->add_option("--out", out_path, "Report JSON; stdout if omitted");
  check_cmd->add_option("--csv", csv_path, "Summary CSV (id, constraint, frequency)");
  add_common(check_cmd, common);

  // eval
  std::vector<std::string> preds, truths;
  bool micro = false;
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted constraint sets against ground truth");
  eval_cmd->add_option("--pred", preds, "Predicted constraint set JSON (repeatable)")->required();
  eval_cmd->add_option("--truth", truths, "Ground-truth constraint set JSON, paired with --pred")->required();
  eval_cmd->add_flag("--micro", micro, "Micro-average instead of macro-average");
  eval_cmd->add_option("--out", out_path, "Table JSON");
  eval_cmd->add_option("--csv", csv_path, "Table CSV; printed to stdout if neither output is given");
  add_common(eval_cmd, common);

  // sweep
  std::vector<std::string> sweep_cands, sweep_logs, sweep_truths;
  double step = 0.05;
  auto* sweep = app.add_subcommand("sweep", "Sweep the threshold and select the best F1");
  sweep->add_option("--cands", sweep_cands, "Candidate JSONL per log (repeatable)")->required();
  sweep->add_option("--log", sweep_logs, "Log per candidate file")->required();
  sweep->add_option("--truth", sweep_truths, "Ground truth per candidate file")->required();
  sweep->add_option("--step", step, "Grid step over [0, 1]")->capture_default_str()->check(CLI::Range(0.001, 1.0));
  sweep->add_option("--out", out_path, "Sweep CSV; stdout if omitted");
  add_common(sweep, common);

  // pipeline
  std::string net_dir;
  std::string out_dir;
  std::string predictor = "miner";
  std::optional<std::string> cands_dir;
  auto* pipeline = app.add_subcommand(
      "pipeline", "playout -> gen-truth -> noise -> (mine | filter) -> check -> eval over a directory of nets");
  pipeline->add_option("nets", net_dir, "Directory of net JSON files")->required();
  pipeline->add_option("--out", out_dir, "Output directory")->required();
  pipeline->add_option("--predictor", predictor, "miner or candidates")
      ->capture_default_str()
      ->check(CLI::IsMember({"miner", "candidates"}));
  pipeline->add_option("--cands-dir", cands_dir, "Directory with <net>.cands.jsonl files (candidates predictor)");
  pipeline->add_option("--theta", theta, "Candidate threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  add_bounds(pipeline, bounds);
  add_noise(pipeline, noise_cfg);
  add_miner(pipeline, miner_cfg);
  add_common(pipeline, common);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (*validate) {
    const auto net = load_net(net_path);
    const auto s = check_soundness(net, state_bound);
    json summary = {{"net", net.name()},
                    {"places", net.places().size()},
                    {"transitions", net.transitions().size()},
                    {"activities", net.activities().size()},
                    {"soundness", to_string(s.status)},
                    {"reason", to_string(s.reason)},
                    {"detail", s.detail},
                    {"states", s.states}};
    std::string human = net.name() + ": " + std::string(to_string(s.status));
    if (!s.detail.empty()) human += " (" + s.detail + ")";
    if (s.status == Soundness::Status::Unknown) warn("soundness unknown: " + s.detail);
    report(out, common, summary, human);
    return s.status == Soundness::Status::Unsound ? kExitValidation : kExitOk;
  }

  if (*playout) {
    const auto net = load_net(net_path);
    EventLog log;
    json summary = {{"net", net.name()}, {"mode", mode}};
    if (mode == "exhaustive") {
      const auto lang = playout_exhaustive(net, bounds.get());
      if (!lang.complete) warn("playout truncated by bounds");
      log = language_log(lang, net.name());
      summary["complete"] = lang.complete;
    } else {
      log = playout_sample(net, n_traces, bounds.max_len, common.resolved_seed());
    }
    summary["traces"] = log.size();
    if (out_path) {
      write_log_file(*out_path, log);
      report(out, common, summary, std::to_string(log.size()) + " traces written to " + *out_path);
    } else {
      out << write_xes(log);
    }
    return kExitOk;
  }

  if (*gen_truth) {
    const auto net = load_net(net_path);
    const auto t = truth_for(net, bounds.get(), allow_approximate);
    const std::string doc = truth_json(t.truth, !t.language.complete);
    emit(out_path, doc, out);
    if (out_path) {
      report(out, common,
             {{"net", net.name()}, {"constraints", t.truth.size()}, {"approximate", !t.language.complete}},
             std::to_string(t.truth.size()) + " constraints written to " + *out_path);
    }
    return kExitOk;
  }

  if (*noise) {
    const auto clean = read_log_file(log_path);
    noise_cfg.seed = common.resolved_seed();
    const auto noisy = expand_and_corrupt(clean, noise_cfg);
    const fs::path o(*out_path);
    const fs::path rec = records_path ? fs::path(*records_path) : o.parent_path() / (o.stem().string() + ".noise.jsonl");
    write_log_file(o, noisy.log);
    write_text_file(rec, write_noise_records(noisy.records));
    report(out, common,
           {{"traces", noisy.log.size()}, {"noisy_traces", noisy.records.size()}, {"records", rec.string()}},
           std::to_string(noisy.log.size()) + " traces, " + std::to_string(noisy.records.size()) + " noisy");
    return kExitOk;
  }

  if (*mine_cmd) {
    const auto log = read_log_file(log_path);
    const auto mined = mine(log, miner_cfg);
    emit(out_path, write_constraint_set_json(to_constraint_set(mined)), out);
    if (scores_path) write_text_file(*scores_path, write_scores_csv(mined));
    if (out_path) {
      report(out, common, {{"constraints", mined.size()}},
             std::to_string(mined.size()) + " constraints written to " + *out_path);
    }
    return kExitOk;
  }

  if (*export_train) {
    std::vector<ModelTruth> repo;
    for (const auto& p : collect_nets(net_inputs)) {
      const auto net = load_net(p);
      repo.push_back({net.activities(), truth_for(net, bounds.get(), false).truth});
    }
    const auto pairs = export_training_pairs(repo, common.resolved_seed());
    emit(out_path, write_training_pairs(pairs), out);
    if (out_path) {
      report(out, common, {{"models", repo.size()}, {"pairs", pairs.size()}},
             std::to_string(pairs.size()) + " pairs from " + std::to_string(repo.size()) + " models");
    }
    return kExitOk;
  }

  if (*filter) {
    const auto log = read_log_file(log_path);
    const auto ingested = ingest_candidates(read_text_file(cands_path));
    for (const auto& e : ingested.errors) warn(cands_path + ":" + std::to_string(e.line) + ": " + e.message);
    const auto result = filter_candidates(ingested.candidates, log.alphabet(), FilterConfig{theta});
    emit(out_path, write_constraint_set_json(result.constraints), out);
    if (rejects_path) write_text_file(*rejects_path, write_reject_report(result.rejects));
    if (out_path) {
      report(out, common,
             {{"candidates", ingested.candidates.size()},
              {"line_errors", ingested.errors.size()},
              {"kept", result.constraints.size()},
              {"rejects", json::parse(write_reject_report(result.rejects))}},
             std::to_string(result.constraints.size()) + " constraints kept");
    }
    return kExitOk;
  }

  if (*check_cmd) {
    const auto log = read_log_file(log_path);
    const auto cs = parse_constraint_set_json(read_text_file(constraints_path));
    const auto rep = check(log, cs);
    emit(out_path, write_report_json(rep), out);
    if (csv_path) write_text_file(*csv_path, write_report_csv(rep));
    if (out_path) {
      report(out, common,
             {{"traces_checked", rep.traces_checked},
              {"flagged_traces", rep.traces.size()},
              {"violated_constraints", rep.constraints.size()}},
             std::to_string(rep.traces.size()) + " of " + std::to_string(rep.traces_checked) + " traces flagged");
    }
    return kExitOk;
  }

  if (*eval_cmd) {
    if (preds.size() != truths.size()) throw ValidationError("--pred and --truth must be given the same number of times");
    std::vector<Run> runs;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      runs.push_back({parse_constraint_set_json(read_text_file(preds[i])),
                      parse_constraint_set_json(read_text_file(truths[i]))});
    }
    const auto rows = evaluate_table(runs, micro ? Averaging::Micro : Averaging::Macro);
    if (out_path) write_text_file(*out_path, write_table_json(rows));
    if (csv_path) write_text_file(*csv_path, write_table_csv(rows));
    if (common.json) {
      out << write_table_json(rows);
    } else if (!out_path && !csv_path) {
      out << write_table_csv(rows);
    }
    return kExitOk;
  }

  if (*sweep) {
    if (sweep_cands.size() != sweep_logs.size() || sweep_cands.size() != sweep_truths.size()) {
      throw ValidationError("--cands, --log and --truth must be given the same number of times");
    }
    std::vector<SweepInput> inputs;
    for (std::size_t i = 0; i < sweep_cands.size(); ++i) {
      const auto ingested = ingest_candidates(read_text_file(sweep_cands[i]));
      for (const auto& e : ingested.errors) warn(sweep_cands[i] + ":" + std::to_string(e.line) + ": " + e.message);
      inputs.push_back({ingested.candidates, read_log_file(sweep_logs[i]).alphabet(),
                        parse_constraint_set_json(read_text_file(sweep_truths[i]))});
    }
    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) grid.push_back(std::min(1.0, static_cast<double>(i) * step));
    const auto result = sweep_theta(inputs, grid);
    emit(out_path, write_sweep_csv(result), out);
    if (out_path) {
      report(out, common, {{"theta_star", result.theta_star}, {"grid_points", grid.size()}},
             "theta* = " + std::to_string(result.theta_star));
    }
    return kExitOk;
  }

  if (*pipeline) {
    if (predictor == "candidates" && !cands_dir) throw ValidationError("--predictor candidates needs --cands-dir");
    const std::uint64_t seed = common.resolved_seed();
    const auto nets = collect_nets({net_dir});
    const fs::path root(out_dir);
    std::vector<Run> runs;
    json per_net = json::array();
    for (std::size_t i = 0; i < nets.size(); ++i) {
      const auto net = load_net(nets[i]);
      const fs::path dir = root / net.name();
      const auto t = truth_for(net, bounds.get(), false);
      const auto clean = language_log(t.language, net.name());
      write_log_file(dir / "clean.xes", clean);
      write_text_file(dir / "truth.json", truth_json(t.truth, false));

      NoiseConfig nc = noise_cfg;
      nc.seed = seed + i;
      const auto noisy = expand_and_corrupt(clean, nc);
      write_log_file(dir / "noisy.xes", noisy.log);
      write_text_file(dir / "noisy.noise.jsonl", write_noise_records(noisy.records));

      ConstraintSet pred;
      if (predictor == "miner") {
        const auto mined = mine(noisy.log, miner_cfg);
        pred = to_constraint_set(mined);
        write_text_file(dir / "scores.csv", write_scores_csv(mined));
      } else {
        const fs::path cf = fs::path(*cands_dir) / (net.name() + ".cands.jsonl");
        const auto ingested = ingest_candidates(read_text_file(cf));
        for (const auto& e : ingested.errors) warn(cf.string() + ":" + std::to_string(e.line) + ": " + e.message);
        const auto filtered = filter_candidates(ingested.candidates, noisy.log.alphabet(), FilterConfig{theta});
        pred = filtered.constraints;
        write_text_file(dir / "rejects.json", write_reject_report(filtered.rejects));
      }
      write_text_file(dir / "pred.json", write_constraint_set_json(pred));

      const auto rep = check(noisy.log, pred);
      write_text_file(dir / "report.json", write_report_json(rep));
      write_text_file(dir / "report.csv", write_report_csv(rep));

      const auto m = score(pred, t.truth, Scenario::all());
      per_net.push_back({{"net", net.name()},
                         {"variants", t.language.traces.size()},
                         {"truth", t.truth.size()},
                         {"predicted", pred.size()},
                         {"flagged_traces", rep.traces.size()},
                         {"noisy_traces", noisy.records.size()},
                         {"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1}});
      runs.push_back({std::move(pred), t.truth});
    }
    const auto rows = evaluate_table(runs);
    write_text_file(root / "eval.json", write_table_json(rows));
    write_text_file(root / "eval.csv", write_table_csv(rows));
    const json summary = {{"seed", seed}, {"predictor", predictor}, {"nets", per_net}};
    write_text_file(root / "summary.json", summary.dump(2) + "\n");
    report(out, common, summary, std::to_string(nets.size()) + " nets processed; results in " + out_dir + "\n" +
                                     write_table_csv(rows));
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace semad::cli
