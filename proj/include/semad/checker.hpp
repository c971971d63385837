#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semad/declare.hpp"
#include "semad/log.hpp"

namespace semad {

struct Violation {
  Constraint constraint;
  std::string trace_id;
  std::optional<std::size_t> witness;  // first violating event, if positional

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ConstraintFrequency {
  Constraint constraint;
  std::vector<std::string> trace_ids;  // log order

  std::size_t frequency() const noexcept { return trace_ids.size(); }
  friend bool operator==(const ConstraintFrequency&, const ConstraintFrequency&) = default;
};

struct TraceViolations {
  std::string trace_id;
  std::vector<Violation> violations;  // constraint order

  friend bool operator==(const TraceViolations&, const TraceViolations&) = default;
};

struct ViolationReport {
  // Violated constraints only, by frequency descending then rendered text.
  std::vector<ConstraintFrequency> constraints;
  // Traces with at least one violation, log order.
  std::vector<TraceViolations> traces;
  std::size_t traces_checked = 0;

  friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

// Evaluates every constraint on every trace. The default version checks
// traces in parallel (OpenMP); check_serial is the single-threaded reference.
// An empty constraint set yields an empty report and a warning.
ViolationReport check(const EventLog& log, const ConstraintSet& cs);
ViolationReport check_serial(const EventLog& log, const ConstraintSet& cs);

// Trace-level view: ids with at least one violation.
std::set<std::string> flag_traces(const ViolationReport& report);

// {"constraints": [{"constraint", "frequency", "traces"}], "flagged_traces": [...]}
std::string write_report_json(const ViolationReport& report, bool include_witnesses = true);
// id,constraint,frequency with ids a1, a2, ...
std::string write_report_csv(const ViolationReport& report);

}  // namespace semad
