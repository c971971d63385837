#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "semad/declare.hpp"
#include "semad/error.hpp"
#include "semad/gateway.hpp"
#include "semad/rng.hpp"

namespace semad {

// Zero denominators give 0, not NaN.
struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t fn);
};

// EvF projection, one constraint type, or the whole sets.
struct Scenario {
  enum class Kind { Evf, PerType, All } kind = Kind::All;
  ConstraintType type = ConstraintType::Init;

  static Scenario evf() { return {Kind::Evf, ConstraintType::Init}; }
  static Scenario per_type(ConstraintType t) { return {Kind::PerType, t}; }
  static Scenario all() { return {Kind::All, ConstraintType::Init}; }
  std::string name() const;
};

Metrics score(const ConstraintSet& pred, const ConstraintSet& truth, const Scenario& scenario);

enum class Averaging { Macro, Micro };

struct EvalReport {
  Scenario scenario;
  std::vector<Metrics> per_run;
  Metrics average;  // counts are summed in both modes
};

struct Run {
  ConstraintSet pred;
  ConstraintSet truth;
};

EvalReport evaluate_corpus(const std::vector<Run>& runs, const Scenario& scenario,
                           Averaging averaging = Averaging::Macro);

// EvF row followed by one row per constraint type.
std::vector<EvalReport> evaluate_table(const std::vector<Run>& runs, Averaging averaging = Averaging::Macro);
// scenario,precision,recall,f1
std::string write_table_csv(const std::vector<EvalReport>& rows);
std::string write_table_json(const std::vector<EvalReport>& rows);

struct SweepInput {
  std::vector<CandidateConstraint> candidates;
  std::set<std::string> vocab;
  ConstraintSet truth;
};

struct SweepPoint {
  double theta = 0.0;
  std::vector<Metrics> per_type;  // indexed like kAllConstraintTypes, macro over logs
  double mean_f1 = 0.0;           // mean of per_type F1
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double theta_star = 0.0;  // first theta with maximal mean_f1
};

// 0.00, 0.05, ..., 1.00
std::vector<double> default_theta_grid();
// Grid must be ascending.
SweepResult sweep_theta(const std::vector<SweepInput>& logs, const std::vector<double>& grid);
// theta,type,precision,recall,f1
std::string write_sweep_csv(const SweepResult& sweep);

// Reference operating point reported for the validation split.
inline constexpr double kReferenceTheta = 0.73;

struct SplitRatios {
  double train = 0.75;
  double validation = 0.15;
  double test = 0.10;
};

// Sizes are floor(n * ratio) for validation and test; train takes the rest.
std::tuple<std::size_t, std::size_t, std::size_t> split_sizes(std::size_t n, const SplitRatios& ratios);

template <typename T>
struct Split {
  std::vector<T> train;
  std::vector<T> validation;
  std::vector<T> test;
};

template <typename T>
Split<T> split_corpus(std::vector<T> repo, const SplitRatios& ratios, std::uint64_t seed) {
  if (repo.empty()) throw ValidationError("cannot split an empty repository");
  const auto [n_train, n_val, n_test] = split_sizes(repo.size(), ratios);
  Rng rng(seed);
  rng.shuffle(std::span(repo));
  Split<T> out;
  auto it = std::make_move_iterator(repo.begin());
  out.train.assign(it, it + static_cast<std::ptrdiff_t>(n_train));
  it += static_cast<std::ptrdiff_t>(n_train);
  out.validation.assign(it, it + static_cast<std::ptrdiff_t>(n_val));
  it += static_cast<std::ptrdiff_t>(n_val);
  out.test.assign(it, it + static_cast<std::ptrdiff_t>(n_test));
  return out;
}

}  // namespace semad
