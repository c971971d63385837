#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semad/log.hpp"

namespace semad {

enum class ConstraintType {
  Init,
  End,
  Succession,
  AltSuccession,
  Choice,
  CoExistence,
  ExclusiveChoice,
  Response,
  AltResponse,
  Precedence,
  AltPrecedence,
};

inline constexpr std::array<ConstraintType, 11> kAllConstraintTypes = {
    ConstraintType::Init,          ConstraintType::End,         ConstraintType::Succession,
    ConstraintType::AltSuccession, ConstraintType::Choice,      ConstraintType::CoExistence,
    ConstraintType::ExclusiveChoice, ConstraintType::Response,  ConstraintType::AltResponse,
    ConstraintType::Precedence,    ConstraintType::AltPrecedence,
};

constexpr bool is_unary(ConstraintType t) noexcept {
  return t == ConstraintType::Init || t == ConstraintType::End;
}

constexpr bool is_symmetric(ConstraintType t) noexcept {
  return t == ConstraintType::Choice || t == ConstraintType::CoExistence ||
         t == ConstraintType::ExclusiveChoice;
}

// "Exclusive choice", "Alternate response", ...
std::string_view long_name(ConstraintType t) noexcept;
// "ExCh", "AltResp", ...
std::string_view short_name(ConstraintType t) noexcept;
// Case-, space-, hyphen- and underscore-insensitive lookup over the long,
// short and identifier spellings.
std::optional<ConstraintType> constraint_type_from_name(std::string_view name);

// A DECLARE constraint over normalized activity labels. Symmetric types keep
// their two arguments in lexicographic order.
class Constraint {
 public:
  // Throws ValidationError on arity mismatch, empty or unnormalized labels,
  // or identical binary arguments.
  static Constraint unary(ConstraintType type, std::string a);
  static Constraint binary(ConstraintType type, std::string a, std::string b);

  ConstraintType type() const noexcept { return type_; }
  const std::string& first() const noexcept { return first_; }
  // Empty for unary constraints.
  const std::string& second() const noexcept { return second_; }
  std::size_t arity() const noexcept { return is_unary(type_) ? 1 : 2; }

  friend auto operator<=>(const Constraint&, const Constraint&) = default;
  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  Constraint(ConstraintType t, std::string a, std::string b)
      : type_(t), first_(std::move(a)), second_(std::move(b)) {}

  ConstraintType type_;
  std::string first_;
  std::string second_;
};

// Parses "Type(arg)" / "Type(arg1, arg2)". Arguments are normalized.
Constraint parse_constraint(std::string_view text);
// Long type name with a ", " argument separator.
std::string render_constraint(const Constraint& c);

class ConstraintSet {
 public:
  using const_iterator = std::set<Constraint>::const_iterator;

  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<Constraint> items) : items_(items) {}
  template <typename It>
  ConstraintSet(It first, It last) : items_(first, last) {}

  bool insert(const Constraint& c) { return items_.insert(c).second; }
  bool contains(const Constraint& c) const { return items_.contains(c); }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }

  ConstraintSet of_type(ConstraintType t) const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::set<Constraint> items_;
};

// {"constraints": ["Response(a, b)", ...]}
ConstraintSet parse_constraint_set_json(std::string_view document);
std::string write_constraint_set_json(const ConstraintSet& cs);

enum class Verdict { Satisfied, Violated };

struct Evaluation {
  Verdict verdict = Verdict::Satisfied;
  // 0-based position demonstrating the violation, when one exists.
  std::optional<std::size_t> witness;

  bool satisfied() const noexcept { return verdict == Verdict::Satisfied; }
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

Evaluation evaluate(const Constraint& c, const Trace& t);
bool is_activated(const Constraint& c, const Trace& t);

struct EvfRelation {
  std::string source;
  std::string target;

  friend auto operator<=>(const EvfRelation&, const EvfRelation&) = default;
};

std::set<EvfRelation> to_evf(const Constraint& c);
std::set<EvfRelation> to_evf(const ConstraintSet& cs);

}  // namespace semad
