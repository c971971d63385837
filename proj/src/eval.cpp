#include "semad/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace semad {

Metrics Metrics::from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

std::string Scenario::name() const {
  switch (kind) {
    case Kind::Evf: return "EvF";
    case Kind::PerType: return std::string(short_name(type));
    case Kind::All: return "All";
  }
  return "?";
}

namespace {

template <typename Set>
Metrics set_metrics(const Set& pred, const Set& truth) {
  std::size_t tp = 0;
  for (const auto& x : pred) tp += truth.contains(x);
  return Metrics::from_counts(tp, pred.size() - tp, truth.size() - tp);
}

}  // namespace

Metrics score(const ConstraintSet& pred, const ConstraintSet& truth, const Scenario& scenario) {
  switch (scenario.kind) {
    case Scenario::Kind::Evf:
      return set_metrics(to_evf(pred), to_evf(truth));
    case Scenario::Kind::PerType:
      return set_metrics(pred.of_type(scenario.type), truth.of_type(scenario.type));
    case Scenario::Kind::All:
      return set_metrics(pred, truth);
  }
  return {};
}

EvalReport evaluate_corpus(const std::vector<Run>& runs, const Scenario& scenario, Averaging averaging) {
  if (runs.empty()) throw ValidationError("cannot evaluate an empty run list");
  EvalReport report{scenario, {}, {}};
  std::size_t tp = 0, fp = 0, fn = 0;
  double p = 0, r = 0, f = 0;
  for (const auto& run : runs) {
    const Metrics m = score(run.pred, run.truth, scenario);
    tp += m.tp;
    fp += m.fp;
    fn += m.fn;
    p += m.precision;
    r += m.recall;
    f += m.f1;
    report.per_run.push_back(m);
  }
  if (averaging == Averaging::Micro) {
    report.average = Metrics::from_counts(tp, fp, fn);
  } else {
    const auto n = static_cast<double>(runs.size());
    report.average.tp = tp;
    report.average.fp = fp;
    report.average.fn = fn;
    report.average.precision = p / n;
    report.average.recall = r / n;
    report.average.f1 = f / n;
  }
  return report;
}

std::vector<EvalReport> evaluate_table(const std::vector<Run>& runs, Averaging averaging) {
  std::vector<EvalReport> rows;
  rows.push_back(evaluate_corpus(runs, Scenario::evf(), averaging));
  for (const auto t : kAllConstraintTypes) rows.push_back(evaluate_corpus(runs, Scenario::per_type(t), averaging));
  return rows;
}

std::string write_table_csv(const std::vector<EvalReport>& rows) {
  std::ostringstream out;
  out << "scenario,precision,recall,f1\n" << std::fixed << std::setprecision(4);
  for (const auto& r : rows) {
    out << r.scenario.name() << ',' << r.average.precision << ',' << r.average.recall << ',' << r.average.f1 << '\n';
  }
  return out.str();
}

std::string write_table_json(const std::vector<EvalReport>& rows) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : rows) {
    list.push_back({{"scenario", r.scenario.name()},
                    {"precision", r.average.precision},
                    {"recall", r.average.recall},
                    {"f1", r.average.f1},
                    {"tp", r.average.tp},
                    {"fp", r.average.fp},
                    {"fn", r.average.fn},
                    {"runs", r.per_run.size()}});
  }
  return nlohmann::json{{"rows", list}}.dump(2) + "\n";
}

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

SweepResult sweep_theta(const std::vector<SweepInput>& logs, const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("empty theta grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw ValidationError("theta grid must be ascending");
  if (logs.empty()) throw ValidationError("sweep needs at least one log");

  SweepResult result;
  std::optional<double> best;
  for (const double theta : grid) {
    std::vector<Run> runs;
    runs.reserve(logs.size());
    for (const auto& log : logs) {
      runs.push_back({filter_candidates(log.candidates, log.vocab, FilterConfig{theta}).constraints, log.truth});
    }
    SweepPoint point{theta, {}, 0.0};
    for (const auto t : kAllConstraintTypes) {
      point.per_type.push_back(evaluate_corpus(runs, Scenario::per_type(t)).average);
      point.mean_f1 += point.per_type.back().f1;
    }
    point.mean_f1 /= static_cast<double>(kAllConstraintTypes.size());
    if (!best || point.mean_f1 > *best) {
      best = point.mean_f1;
      result.theta_star = theta;
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

std::string write_sweep_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "theta,type,precision,recall,f1\n" << std::fixed << std::setprecision(4);
  for (const auto& p : sweep.points) {
    for (std::size_t i = 0; i < kAllConstraintTypes.size(); ++i) {
      const auto& m = p.per_type[i];
      out << std::setprecision(2) << p.theta << std::setprecision(4) << ',' << short_name(kAllConstraintTypes[i])
          << ',' << m.precision << ',' << m.recall << ',' << m.f1 << '\n';
    }
  }
  return out.str();
}

std::tuple<std::size_t, std::size_t, std::size_t> split_sizes(std::size_t n, const SplitRatios& ratios) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("split ratios must be non-negative and sum to 1");
  }
  const auto floor_of = [n](double r) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9));
  };
  const std::size_t n_val = floor_of(ratios.validation);
  const std::size_t n_test = floor_of(ratios.test);
  return {n - n_val - n_test, n_val, n_test};
}

}  // namespace semad
