#include "semad/kernels.hpp"

#include <algorithm>

#include "semad/declare_scan.hpp"
#include "semad/error.hpp"

namespace semad {

EncodedLog::EncodedLog(const EventLog& log) {
  std::vector<std::vector<std::string>> traces;
  traces.reserve(log.size());
  for (const auto& t : log.traces()) traces.push_back(t.labels());
  build(traces);
}

EncodedLog::EncodedLog(const std::vector<std::vector<std::string>>& traces) { build(traces); }

void EncodedLog::build(const std::vector<std::vector<std::string>>& traces) {
  std::set<std::string> labels;
  for (const auto& t : traces) labels.insert(t.begin(), t.end());
  alphabet_.assign(labels.begin(), labels.end());
  for (std::uint32_t i = 0; i < alphabet_.size(); ++i) index_.emplace(alphabet_[i], i);

  words_ = (alphabet_.size() + 63) / 64;
  presence_.assign(traces.size() * words_, 0);
  trace_frequency_.assign(alphabet_.size(), 0);
  traces_.reserve(traces.size());
  for (std::size_t t = 0; t < traces.size(); ++t) {
    std::vector<std::uint32_t> ids;
    ids.reserve(traces[t].size());
    for (const auto& l : traces[t]) {
      const std::uint32_t s = index_.at(l);
      ids.push_back(s);
      auto& word = presence_[t * words_ + s / 64];
      const std::uint64_t bit = std::uint64_t{1} << (s % 64);
      if (!(word & bit)) {
        word |= bit;
        ++trace_frequency_[s];
      }
    }
    traces_.push_back(std::move(ids));
  }
}

std::uint32_t EncodedLog::symbol(const std::string& label) const {
  const auto it = index_.find(label);
  return it == index_.end() ? kAbsent : it->second;
}

SymbolConstraint encode(const Constraint& c, const EncodedLog& log) {
  return {c.type(), log.symbol(c.first()), c.arity() == 2 ? log.symbol(c.second()) : EncodedLog::kAbsent};
}

Evaluation evaluate(const SymbolConstraint& c, std::span<const std::uint32_t> trace) {
  return detail::scan(
      c.type, trace.size(), [&](std::size_t i) { return trace[i] == c.a; },
      [&](std::size_t i) { return trace[i] == c.b; });
}

std::vector<Constraint> enumerate_candidates(const std::set<std::string>& alphabet,
                                             std::span<const ConstraintType> types) {
  if (alphabet.size() > kMaxCandidateAlphabet) {
    throw ValidationError("alphabet of " + std::to_string(alphabet.size()) + " labels exceeds the candidate limit of " +
                          std::to_string(kMaxCandidateAlphabet));
  }
  const std::vector<std::string> labels(alphabet.begin(), alphabet.end());
  std::vector<Constraint> out;
  for (const auto type : types) {
    if (is_unary(type)) {
      for (const auto& l : labels) out.push_back(Constraint::unary(type, l));
      continue;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (i == j || (is_symmetric(type) && j < i)) continue;
        out.push_back(Constraint::binary(type, labels[i], labels[j]));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

CandidateCounts count_one(const EncodedLog& log, const SymbolConstraint& sc) {
  CandidateCounts counts;
  for (std::size_t t = 0; t < log.size(); ++t) {
    const bool sat = evaluate(sc, log.trace(t)).satisfied();
    const bool act = detail::activated(sc.type, log.contains(t, sc.a), log.contains(t, sc.b));
    counts.satisfied += sat;
    counts.activated += act;
    counts.satisfied_activated += sat && act;
  }
  return counts;
}

}  // namespace

std::vector<CandidateCounts> count_candidates_serial(const EncodedLog& log, std::span<const Constraint> candidates) {
  std::vector<CandidateCounts> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(count_one(log, encode(c, log)));
  return out;
}

std::vector<CandidateCounts> count_candidates(const EncodedLog& log, std::span<const Constraint> candidates) {
  std::vector<SymbolConstraint> encoded;
  encoded.reserve(candidates.size());
  for (const auto& c : candidates) encoded.push_back(encode(c, log));

  std::vector<CandidateCounts> out(candidates.size());
  const auto n = static_cast<std::ptrdiff_t>(encoded.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = count_one(log, encoded[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace semad
