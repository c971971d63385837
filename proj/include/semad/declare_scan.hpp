#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>

#include "semad/declare.hpp"

namespace semad::detail {

// Single left-to-right pass over positions [0, n). is_a(i) / is_b(i) test
// whether the event at i carries the first / second argument. Shared by the
// label-based evaluator and the symbol-encoded kernels.
template <typename IsA, typename IsB>
Evaluation scan(ConstraintType type, std::size_t n, IsA&& is_a, IsB&& is_b) {
  constexpr auto ok = Evaluation{Verdict::Satisfied, std::nullopt};
  auto bad = [](std::optional<std::size_t> w = std::nullopt) { return Evaluation{Verdict::Violated, w}; };

  auto response = [&]() -> std::optional<std::size_t> {
    std::optional<std::size_t> pending;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_a(i)) {
        if (!pending) pending = i;
      } else if (is_b(i)) {
        pending.reset();
      }
    }
    return pending;
  };
  auto precedence = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (is_a(i)) return std::nullopt;
      if (is_b(i)) return i;
    }
    return std::nullopt;
  };
  auto alt_response = [&]() -> std::optional<std::size_t> {
    std::optional<std::size_t> pending;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_a(i)) {
        if (pending) return i;
        pending = i;
      } else if (is_b(i)) {
        pending.reset();
      }
    }
    return pending;
  };
  auto alt_precedence = [&]() -> std::optional<std::size_t> {
    bool armed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_a(i)) {
        armed = true;
      } else if (is_b(i)) {
        if (!armed) return i;
        armed = false;
      }
    }
    return std::nullopt;
  };
  auto both = [&](std::optional<std::size_t> x, std::optional<std::size_t> y) {
    if (!x && !y) return ok;
    if (x && y) return bad(std::min(*x, *y));
    return bad(x ? x : y);
  };
  auto occurrences = [&](bool& has_a, bool& has_b) {
    has_a = has_b = false;
    for (std::size_t i = 0; i < n && !(has_a && has_b); ++i) {
      if (is_a(i)) has_a = true;
      else if (is_b(i)) has_b = true;
    }
  };

  switch (type) {
    case ConstraintType::Init:
      return n >= 1 && is_a(0) ? ok : bad();
    case ConstraintType::End:
      return n >= 1 && is_a(n - 1) ? ok : bad();
    case ConstraintType::Response:
      if (auto w = response()) return bad(w);
      return ok;
    case ConstraintType::Precedence:
      if (auto w = precedence()) return bad(w);
      return ok;
    case ConstraintType::Succession:
      return both(response(), precedence());
    case ConstraintType::AltResponse:
      if (auto w = alt_response()) return bad(w);
      return ok;
    case ConstraintType::AltPrecedence:
      if (auto w = alt_precedence()) return bad(w);
      return ok;
    case ConstraintType::AltSuccession:
      return both(alt_response(), alt_precedence());
    case ConstraintType::Choice: {
      bool a, b;
      occurrences(a, b);
      return a || b ? ok : bad();
    }
    case ConstraintType::ExclusiveChoice: {
      bool a, b;
      occurrences(a, b);
      return (a || b) && !(a && b) ? ok : bad();
    }
    case ConstraintType::CoExistence: {
      bool a, b;
      occurrences(a, b);
      return a == b ? ok : bad();
    }
  }
  return ok;
}

// Activation table; has_a / has_b say whether each argument occurs at all.
constexpr bool activated(ConstraintType type, bool has_a, bool has_b) noexcept {
  switch (type) {
    case ConstraintType::Response:
    case ConstraintType::AltResponse:
      return has_a;
    case ConstraintType::Precedence:
    case ConstraintType::AltPrecedence:
      return has_b;
    case ConstraintType::Succession:
    case ConstraintType::AltSuccession:
    case ConstraintType::CoExistence:
      return has_a || has_b;
    case ConstraintType::Init:
    case ConstraintType::End:
    case ConstraintType::Choice:
    case ConstraintType::ExclusiveChoice:
      return true;
  }
  return true;
}

}  // namespace semad::detail
