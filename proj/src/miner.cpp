#include "semad/miner.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "semad/error.hpp"
#include "semad/kernels.hpp"

namespace semad {

namespace {

std::vector<MinedConstraint> mine_with(const EventLog& log, const MinerConfig& cfg, bool parallel) {
  if (log.empty()) throw ValidationError("cannot mine an empty log");
  for (const double r : {cfg.min_support, cfg.min_confidence, cfg.min_interest}) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("miner thresholds must lie in [0, 1]");
  }
  const EncodedLog encoded(log);
  const std::vector<ConstraintType> types(cfg.types.begin(), cfg.types.end());
  const auto candidates = enumerate_candidates(log.alphabet(), types);
  const auto counts = parallel ? count_candidates(encoded, candidates) : count_candidates_serial(encoded, candidates);

  const auto n = static_cast<double>(log.size());
  std::vector<MinedConstraint> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    const auto& k = counts[i];
    if (k.activated == 0) continue;
    MinedConstraint m{c, 0.0, 0.0, 0.0};
    m.support = static_cast<double>(k.satisfied) / n;
    m.confidence = static_cast<double>(k.satisfied_activated) / static_cast<double>(k.activated);
    std::size_t freq = encoded.trace_frequency(encoded.symbol(c.first()));
    if (c.arity() == 2) freq = std::min(freq, encoded.trace_frequency(encoded.symbol(c.second())));
    m.interest = m.confidence * static_cast<double>(freq) / n;
    if (m.support >= cfg.min_support && m.confidence >= cfg.min_confidence && m.interest >= cfg.min_interest) {
      out.push_back(std::move(m));
    }
  }
  std::vector<std::pair<std::string, MinedConstraint>> keyed;
  keyed.reserve(out.size());
  for (auto& m : out) keyed.emplace_back(render_constraint(m.constraint), std::move(m));
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.second.support != y.second.support) return x.second.support > y.second.support;
    return x.first < y.first;
  });
  out.clear();
  for (auto& [_, m] : keyed) out.push_back(std::move(m));
  return out;
}

}  // namespace

std::vector<MinedConstraint> mine(const EventLog& log, const MinerConfig& cfg) { return mine_with(log, cfg, true); }

std::vector<MinedConstraint> mine_serial(const EventLog& log, const MinerConfig& cfg) {
  return mine_with(log, cfg, false);
}

ConstraintSet to_constraint_set(const std::vector<MinedConstraint>& mined) {
  ConstraintSet out;
  for (const auto& m : mined) out.insert(m.constraint);
  return out;
}

std::string write_scores_csv(const std::vector<MinedConstraint>& mined) {
  std::ostringstream out;
  out << "constraint,support,confidence,interest\n" << std::setprecision(6) << std::fixed;
  for (const auto& m : mined) {
    out << '"' << render_constraint(m.constraint) << "\"," << m.support << ',' << m.confidence << ',' << m.interest
        << '\n';
  }
  return out.str();
}

}  // namespace semad
