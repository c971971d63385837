#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semad/declare.hpp"
#include "semad/log.hpp"
#include "semad/net.hpp"

namespace semad {

struct PlayoutBounds {
  std::size_t max_len = 50;
  std::size_t max_variants = 5000;
};

// Distinct label sequences reaching the final marking, sorted.
struct BoundedLanguage {
  std::vector<std::vector<std::string>> traces;
  bool complete = false;  // no bound cut the search short
};

// Depth-first enumeration of firing sequences. Silent transitions fire but
// emit nothing. Warns when no trace reaches the final marking.
BoundedLanguage playout_exhaustive(const WorkflowNet& net, const PlayoutBounds& bounds = {});

// n_traces random walks, choosing uniformly among enabled transitions. Walks
// that deadlock or exceed max_len are retried, up to 100 * n_traces attempts.
EventLog playout_sample(const WorkflowNet& net, std::size_t n_traces, std::size_t max_len, std::uint64_t seed);

// Trace ids are "t1", "t2", ... in language order.
EventLog language_log(const BoundedLanguage& lang, std::string name = {});

// A candidate enters the truth set iff it holds on every trace of the
// language and is activated by at least one. Candidates range over the net's
// activities. A truncated language is refused unless allow_truncated is set.
ConstraintSet extract_truth(const BoundedLanguage& lang, const std::set<std::string>& activities,
                            bool allow_truncated = false);
ConstraintSet extract_truth(const WorkflowNet& net, const PlayoutBounds& bounds = {}, bool allow_truncated = false);

}  // namespace semad
