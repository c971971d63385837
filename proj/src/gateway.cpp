#include "semad/gateway.hpp"


#include "json.hpp"
#include "semad/diagnostics.hpp"
#include "semad/error.hpp"
#include "semad/rng.hpp"

namespace semad {

namespace {

std::string join_input(ConstraintType type, const std::vector<std::string>& labels) {
  std::string out(long_name(type));
  out += ": ";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out;
}

std::string shuffled_input(ConstraintType type, const std::set<std::string>& labels, Rng& rng) {
  if (labels.empty()) throw ValidationError("cannot build a model input from an empty label set");
  std::vector<std::string> order(labels.begin(), labels.end());
  rng.shuffle(std::span(order));
  return join_input(type, order);
}

}  // namespace

std::string build_input(ConstraintType type, const std::set<std::string>& labels, std::uint64_t seed) {
  Rng rng(seed);
  return shuffled_input(type, labels, rng);
}

std::vector<TrainingPair> export_training_pairs(const std::vector<ModelTruth>& repo, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TrainingPair> pairs;
  for (std::size_t i = 0; i < repo.size(); ++i) {
    const auto& model = repo[i];
    if (model.truth.empty()) {
      warn("model " + std::to_string(i) + " has no ground-truth constraints; skipped");
      continue;
    }
    for (const auto& c : model.truth) {
      pairs.push_back({shuffled_input(c.type(), model.activities, rng), render_constraint(c)});
    }
  }
  return pairs;
}

std::string write_training_pairs(const std::vector<TrainingPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += nlohmann::json{{"input", p.input}, {"target", p.target}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<std::string> build_queries(const std::set<std::string>& labels, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out;
  for (const auto t : kAllConstraintTypes) out.push_back(shuffled_input(t, labels, rng));
  return out;
}

IngestResult ingest_candidates(std::string_view jsonl) {
  IngestResult result;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    auto end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const auto line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      result.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!obj.is_object() || !obj.contains("type") || !obj["type"].is_string() || !obj.contains("text") ||
        !obj["text"].is_string() || !obj.contains("prob") || !obj["prob"].is_number()) {
      result.errors.push_back({line_no, "expected {\"type\": string, \"text\": string, \"prob\": number}"});
      continue;
    }
    const auto type = constraint_type_from_name(obj["type"].get<std::string>());
    if (!type) {
      result.errors.push_back({line_no, "unknown constraint type \"" + obj["type"].get<std::string>() + "\""});
      continue;
    }
    const double prob = obj["prob"].get<double>();
    if (!(prob >= 0.0 && prob <= 1.0)) {
      result.errors.push_back({line_no, "prob " + obj["prob"].dump() + " outside [0, 1]"});
      continue;
    }
    result.candidates.push_back({obj["text"].get<std::string>(), prob, *type});
  }
  return result;
}

std::string write_candidates(const std::vector<CandidateConstraint>& cands) {
  std::string out;
  for (const auto& c : cands) {
    out += nlohmann::json{{"type", long_name(c.queried)}, {"text", c.raw_text}, {"prob", c.probability}}.dump();
    out += '\n';
  }
  return out;
}

FilterResult filter_candidates(const std::vector<CandidateConstraint>& cands, const std::set<std::string>& vocab,
                               const FilterConfig& cfg) {
  FilterResult result;
  for (const auto& cand : cands) {
    std::optional<Constraint> c;
    try {
      c = parse_constraint(cand.raw_text);
    } catch (const ValidationError&) {
      ++result.rejects.parse;
      continue;
    }
    if (!vocab.contains(c->first()) || (c->arity() == 2 && !vocab.contains(c->second()))) {
      ++result.rejects.vocab;
      continue;
    }
    if (!(cand.probability > cfg.theta)) {
      ++result.rejects.threshold;
      continue;
    }
    if (c->type() != cand.queried) {
      ++result.rejects.type_mismatch;
      continue;
    }
    result.constraints.insert(*c);
  }
  return result;
}

std::string write_reject_report(const RejectCounts& r) {
  return nlohmann::json{{"vocab", r.vocab}, {"parse", r.parse}, {"threshold", r.threshold},
                        {"type_mismatch", r.type_mismatch}}
             .dump(2) +
         "\n";
}

}  // namespace semad
