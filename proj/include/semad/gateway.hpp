#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semad/declare.hpp"
#include "semad/net.hpp"

namespace semad {

struct CandidateConstraint {
  std::string raw_text;
  double probability = 0.0;
  ConstraintType queried;
};

struct FilterConfig {
  double theta = 0.5;
};

struct TrainingPair {
  std::string input;   // "Type: l1, l2, ..."
  std::string target;  // rendered constraint
};

// "Init: b, a, c" with the labels in a seed-determined order. Throws on an
// empty label set.
std::string build_input(ConstraintType type, const std::set<std::string>& labels, std::uint64_t seed);

struct ModelTruth {
  std::set<std::string> activities;
  ConstraintSet truth;
};

// One pair per (model, constraint), each with a fresh shuffle of the model's
// full activity set. Models with an empty truth set are skipped with a warning.
std::vector<TrainingPair> export_training_pairs(const std::vector<ModelTruth>& repo, std::uint64_t seed);
std::string write_training_pairs(const std::vector<TrainingPair>& pairs);

// Per-type query lines the generator answers, one per type.
std::vector<std::string> build_queries(const std::set<std::string>& labels, std::uint64_t seed);

struct LineError {
  std::size_t line;
  std::string message;
};

struct IngestResult {
  std::vector<CandidateConstraint> candidates;
  std::vector<LineError> errors;
};

// Lines {"type": str, "text": str, "prob": number}. Bad lines are reported,
// good lines kept.
IngestResult ingest_candidates(std::string_view jsonl);
std::string write_candidates(const std::vector<CandidateConstraint>& cands);

struct RejectCounts {
  std::size_t parse = 0;
  std::size_t vocab = 0;
  std::size_t threshold = 0;
  std::size_t type_mismatch = 0;

  friend bool operator==(const RejectCounts&, const RejectCounts&) = default;
};

struct FilterResult {
  ConstraintSet constraints;
  RejectCounts rejects;
};

// Keeps a candidate iff it parses, every argument is in vocab, probability
// is strictly above theta and the parsed type matches the queried one.
// Rejects are tallied by the first failing check in that order.
FilterResult filter_candidates(const std::vector<CandidateConstraint>& cands, const std::set<std::string>& vocab,
                               const FilterConfig& cfg);

// {"vocab": n, "parse": n, "threshold": n, "type_mismatch": n}
std::string write_reject_report(const RejectCounts& r);

}  // namespace semad
