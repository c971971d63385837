#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "semad/declare.hpp"
#include "semad/log.hpp"

namespace semad {

// Log with labels replaced by dense symbol ids (index into the sorted
// alphabet) and a per-trace label presence bitmap.
class EncodedLog {
 public:
  static constexpr std::uint32_t kAbsent = UINT32_MAX;

  explicit EncodedLog(const EventLog& log);
  EncodedLog(const std::vector<std::vector<std::string>>& traces);

  std::size_t size() const noexcept { return traces_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::span<const std::uint32_t> trace(std::size_t i) const noexcept { return traces_[i]; }
  // kAbsent for labels outside the alphabet.
  std::uint32_t symbol(const std::string& label) const;
  bool contains(std::size_t trace, std::uint32_t symbol) const noexcept {
    if (symbol == kAbsent) return false;
    return (presence_[trace * words_ + symbol / 64] >> (symbol % 64)) & 1U;
  }
  // Number of traces in which the symbol occurs.
  std::size_t trace_frequency(std::uint32_t symbol) const noexcept {
    return symbol == kAbsent ? 0 : trace_frequency_[symbol];
  }

 private:
  void build(const std::vector<std::vector<std::string>>& traces);

  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> traces_;
  std::vector<std::uint64_t> presence_;
  std::vector<std::size_t> trace_frequency_;
  std::size_t words_ = 0;
};

struct SymbolConstraint {
  ConstraintType type;
  std::uint32_t a;
  std::uint32_t b;  // kAbsent for unary constraints
};

SymbolConstraint encode(const Constraint& c, const EncodedLog& log);

Evaluation evaluate(const SymbolConstraint& c, std::span<const std::uint32_t> trace);

// Every unary constraint per label, every ordered pair for the directed
// binary types and every unordered pair for the symmetric ones, restricted to
// `types`. Sorted. Throws ValidationError beyond kMaxCandidateAlphabet labels.
inline constexpr std::size_t kMaxCandidateAlphabet = 500;
std::vector<Constraint> enumerate_candidates(const std::set<std::string>& alphabet,
                                             std::span<const ConstraintType> types = kAllConstraintTypes);

struct CandidateCounts {
  std::size_t satisfied = 0;
  std::size_t activated = 0;
  std::size_t satisfied_activated = 0;

  friend bool operator==(const CandidateCounts&, const CandidateCounts&) = default;
};

// Per-candidate trace counts over the log. The parallel version splits the
// candidate list across OpenMP threads; the serial one is the reference.
std::vector<CandidateCounts> count_candidates(const EncodedLog& log, std::span<const Constraint> candidates);
std::vector<CandidateCounts> count_candidates_serial(const EncodedLog& log, std::span<const Constraint> candidates);

}  // namespace semad
