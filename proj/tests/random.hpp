#pragma once

#include <random>
#include <string>
#include <vector>

#include "semad/declare.hpp"

namespace randgen {

inline std::string label(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

inline std::vector<std::string> trace(std::mt19937_64& g, std::size_t alphabet, std::size_t max_len,
                                      std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet - 1);
  std::vector<std::string> t(len(g));
  for (auto& e : t) e = label(sym(g));
  return t;
}

inline semad::Constraint constraint(std::mt19937_64& g, std::size_t alphabet) {
  std::uniform_int_distribution<std::size_t> ty(0, semad::kAllConstraintTypes.size() - 1);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet - 1);
  const auto type = semad::kAllConstraintTypes[ty(g)];
  const auto a = sym(g);
  if (semad::is_unary(type)) return semad::Constraint::unary(type, label(a));
  auto b = sym(g);
  while (b == a) b = sym(g);
  return semad::Constraint::binary(type, label(a), label(b));
}

}  // namespace randgen
