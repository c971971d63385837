#include "semad/playout.hpp"

#include <set>
#include <unordered_set>

#include "semad/diagnostics.hpp"
#include "semad/error.hpp"
#include "semad/kernels.hpp"
#include "semad/rng.hpp"

namespace semad {

namespace {

class Enumerator {
 public:
  Enumerator(const WorkflowNet& net, const PlayoutBounds& bounds)
      : net_(net),
        bounds_(bounds),
        final_(net.final_marking()),
        max_fired_((bounds.max_len + 1) * (net.transitions().size() + 1)) {}

  BoundedLanguage run() {
    std::vector<std::string> trace;
    dfs(net_.initial_marking(), trace, 0);
    BoundedLanguage lang;
    lang.traces.assign(found_.begin(), found_.end());
    lang.complete = !truncated_;
    return lang;
  }

 private:
  // (marking, trace) states already expanded; also cuts silent cycles.
  bool visit(const Marking& m, const std::vector<std::string>& trace) {
    std::string key;
    key.reserve(m.tokens.size() * 4 + trace.size() * 8);
    for (auto c : m.tokens) key.append(reinterpret_cast<const char*>(&c), sizeof(c));
    key.push_back('\x1f');
    for (const auto& l : trace) {
      key += l;
      key.push_back('\x1e');
    }
    return visited_.insert(std::move(key)).second;
  }

  void dfs(const Marking& m, std::vector<std::string>& trace, std::size_t fired) {
    if (aborted_) return;
    if (m == final_) {
      if (found_.insert(trace).second && found_.size() > bounds_.max_variants) {
        found_.erase(trace);
        truncated_ = aborted_ = true;
      }
      return;
    }
    if (!visit(m, trace)) return;
    if (fired >= max_fired_) {
      truncated_ = true;
      return;
    }
    for (std::size_t t = 0; t < net_.transitions().size() && !aborted_; ++t) {
      if (!net_.enabled(m, t)) continue;
      const auto& tr = net_.transitions()[t];
      if (tr.label) {
        if (trace.size() >= bounds_.max_len) {
          truncated_ = true;
          continue;
        }
        trace.push_back(*tr.label);
        dfs(net_.fire(m, t), trace, fired + 1);
        trace.pop_back();
      } else {
        dfs(net_.fire(m, t), trace, fired + 1);
      }
    }
  }

  const WorkflowNet& net_;
  PlayoutBounds bounds_;
  Marking final_;
  std::size_t max_fired_;
  std::set<std::vector<std::string>> found_;
  std::unordered_set<std::string> visited_;
  bool truncated_ = false;
  bool aborted_ = false;
};

}  // namespace

BoundedLanguage playout_exhaustive(const WorkflowNet& net, const PlayoutBounds& bounds) {
  if (bounds.max_len == 0 || bounds.max_variants == 0) throw ValidationError("playout bounds must be positive");
  BoundedLanguage lang = Enumerator(net, bounds).run();
  if (lang.traces.empty()) {
    lang.complete = false;
    warn("final marking of net \"" + net.name() + "\" is unreachable within the playout bounds");
  }
  return lang;
}

EventLog playout_sample(const WorkflowNet& net, std::size_t n_traces, std::size_t max_len, std::uint64_t seed) {
  if (n_traces == 0 || max_len == 0) throw ValidationError("playout bounds must be positive");
  Rng rng(seed);
  const Marking final_marking = net.final_marking();
  const std::size_t max_fired = (max_len + 1) * (net.transitions().size() + 1);
  const std::size_t budget = 100 * n_traces;

  std::vector<Trace> traces;
  std::vector<std::size_t> enabled;
  std::size_t attempts = 0;
  while (traces.size() < n_traces) {
    if (attempts++ >= budget) throw ValidationError("net rarely terminates within max_len");
    Marking m = net.initial_marking();
    std::vector<std::string> labels;
    bool ok = false;
    for (std::size_t fired = 0; fired <= max_fired; ++fired) {
      if (m == final_marking) {
        ok = true;
        break;
      }
      enabled.clear();
      for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        if (net.enabled(m, t)) enabled.push_back(t);
      }
      if (enabled.empty()) break;
      const std::size_t t = enabled[rng.index(enabled.size())];
      if (const auto& label = net.transitions()[t].label) {
        if (labels.size() >= max_len) break;
        labels.push_back(*label);
      }
      m = net.fire(m, t);
    }
    if (ok && !labels.empty()) traces.emplace_back("t" + std::to_string(traces.size() + 1), labels);
  }
  return EventLog(net.name(), std::move(traces));
}

EventLog language_log(const BoundedLanguage& lang, std::string name) {
  std::vector<Trace> traces;
  traces.reserve(lang.traces.size());
  for (const auto& labels : lang.traces) traces.emplace_back("t" + std::to_string(traces.size() + 1), labels);
  return EventLog(std::move(name), std::move(traces), /*allow_empty_traces=*/true);
}

ConstraintSet extract_truth(const BoundedLanguage& lang, const std::set<std::string>& activities,
                            bool allow_truncated) {
  if (!lang.complete && !allow_truncated) {
    throw ValidationError("language truncated; ground truth would be unsound");
  }
  const EncodedLog encoded(lang.traces);
  const auto candidates = enumerate_candidates(activities);
  const auto counts = count_candidates(encoded, candidates);
  ConstraintSet truth;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (counts[i].satisfied == encoded.size() && counts[i].activated > 0) truth.insert(candidates[i]);
  }
  return truth;
}

ConstraintSet extract_truth(const WorkflowNet& net, const PlayoutBounds& bounds, bool allow_truncated) {
  return extract_truth(playout_exhaustive(net, bounds), net.activities(), allow_truncated);
}

}  // namespace semad
