#pragma once

#include <set>
#include <string>
#include <vector>

#include "semad/declare.hpp"
#include "semad/log.hpp"

namespace semad {

struct MinerConfig {
  double min_support = 0.95;
  double min_confidence = 0.25;
  double min_interest = 0.125;
  std::set<ConstraintType> types{kAllConstraintTypes.begin(), kAllConstraintTypes.end()};
};

struct MinedConstraint {
  Constraint constraint;
  double support = 0.0;     // satisfied traces / all traces (vacuous ones count)
  double confidence = 0.0;  // satisfied and activated / activated
  double interest = 0.0;    // confidence * min parameter trace frequency
};

// Candidates with no activating trace are dropped. Output sorted by support
// descending, then rendered text ascending. Throws on an empty log.
std::vector<MinedConstraint> mine(const EventLog& log, const MinerConfig& cfg = {});
std::vector<MinedConstraint> mine_serial(const EventLog& log, const MinerConfig& cfg = {});

ConstraintSet to_constraint_set(const std::vector<MinedConstraint>& mined);

// constraint,support,confidence,interest
std::string write_scores_csv(const std::vector<MinedConstraint>& mined);

}  // namespace semad
