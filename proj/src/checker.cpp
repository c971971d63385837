#include "semad/checker.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "semad/diagnostics.hpp"
#include "semad/kernels.hpp"

namespace semad {

namespace {

struct Hit {
  std::size_t constraint;
  std::optional<std::size_t> witness;
};

ViolationReport assemble(const EventLog& log, const std::vector<Constraint>& constraints,
                         const std::vector<std::vector<Hit>>& hits) {
  ViolationReport report;
  report.traces_checked = log.size();
  std::vector<ConstraintFrequency> freq;
  freq.reserve(constraints.size());
  for (const auto& c : constraints) freq.push_back({c, {}});

  for (std::size_t t = 0; t < hits.size(); ++t) {
    if (hits[t].empty()) continue;
    const auto& id = log.traces()[t].id;
    TraceViolations tv{id, {}};
    for (const auto& h : hits[t]) {
      tv.violations.push_back({constraints[h.constraint], id, h.witness});
      freq[h.constraint].trace_ids.push_back(id);
    }
    report.traces.push_back(std::move(tv));
  }

  std::vector<std::pair<std::string, ConstraintFrequency>> keyed;
  for (auto& f : freq) {
    if (f.trace_ids.empty()) continue;
    keyed.emplace_back(render_constraint(f.constraint), std::move(f));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.second.frequency() != y.second.frequency()) return x.second.frequency() > y.second.frequency();
    return x.first < y.first;
  });
  for (auto& [_, f] : keyed) report.constraints.push_back(std::move(f));
  return report;
}

}  // namespace

ViolationReport check(const EventLog& log, const ConstraintSet& cs) {
  if (cs.empty()) warn("checking against an empty constraint set");
  const std::vector<Constraint> constraints(cs.begin(), cs.end());
  const EncodedLog encoded(log);
  std::vector<SymbolConstraint> symbols;
  symbols.reserve(constraints.size());
  for (const auto& c : constraints) symbols.push_back(encode(c, encoded));

  std::vector<std::vector<Hit>> hits(log.size());
  const auto n = static_cast<std::ptrdiff_t>(log.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const auto trace = encoded.trace(static_cast<std::size_t>(t));
    auto& slot = hits[static_cast<std::size_t>(t)];
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      const auto ev = evaluate(symbols[k], trace);
      if (!ev.satisfied()) slot.push_back({k, ev.witness});
    }
  }
  return assemble(log, constraints, hits);
}

ViolationReport check_serial(const EventLog& log, const ConstraintSet& cs) {
  if (cs.empty()) warn("checking against an empty constraint set");
  const std::vector<Constraint> constraints(cs.begin(), cs.end());
  std::vector<std::vector<Hit>> hits(log.size());
  for (std::size_t t = 0; t < log.size(); ++t) {
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      const auto ev = evaluate(constraints[k], log.traces()[t]);
      if (!ev.satisfied()) hits[t].push_back({k, ev.witness});
    }
  }
  return assemble(log, constraints, hits);
}

std::set<std::string> flag_traces(const ViolationReport& report) {
  std::set<std::string> out;
  for (const auto& tv : report.traces) out.insert(tv.trace_id);
  return out;
}

std::string write_report_json(const ViolationReport& report, bool include_witnesses) {
  nlohmann::json constraints = nlohmann::json::array();
  for (const auto& f : report.constraints) {
    constraints.push_back(
        {{"constraint", render_constraint(f.constraint)}, {"frequency", f.frequency()}, {"traces", f.trace_ids}});
  }
  nlohmann::json flagged = nlohmann::json::array();
  for (const auto& tv : report.traces) flagged.push_back(tv.trace_id);
  nlohmann::json doc = {{"traces_checked", report.traces_checked},
                        {"constraints", constraints},
                        {"flagged_traces", flagged}};
  if (include_witnesses) {
    nlohmann::json per_trace = nlohmann::json::array();
    for (const auto& tv : report.traces) {
      nlohmann::json vs = nlohmann::json::array();
      for (const auto& v : tv.violations) {
        nlohmann::json item = {{"constraint", render_constraint(v.constraint)}};
        item["event"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr);
        vs.push_back(std::move(item));
      }
      per_trace.push_back({{"trace", tv.trace_id}, {"violations", vs}});
    }
    doc["trace_violations"] = per_trace;
  }
  return doc.dump(2) + "\n";
}

std::string write_report_csv(const ViolationReport& report) {
  std::ostringstream out;
  out << "id,constraint,frequency\n";
  for (std::size_t i = 0; i < report.constraints.size(); ++i) {
    const auto& f = report.constraints[i];
    out << 'a' << (i + 1) << ",\"" << render_constraint(f.constraint) << "\"," << f.frequency() << '\n';
  }
  return out.str();
}

}  // namespace semad
