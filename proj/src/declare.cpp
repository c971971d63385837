#include "semad/declare.hpp"

#include <cctype>

#include "json.hpp"
#include "semad/declare_scan.hpp"
#include "semad/error.hpp"

namespace semad {

std::string_view long_name(ConstraintType t) noexcept {
  switch (t) {
    case ConstraintType::Init: return "Init";
    case ConstraintType::End: return "End";
    case ConstraintType::Succession: return "Succession";
    case ConstraintType::AltSuccession: return "Alternate succession";
    case ConstraintType::Choice: return "Choice";
    case ConstraintType::CoExistence: return "Co-existence";
    case ConstraintType::ExclusiveChoice: return "Exclusive choice";
    case ConstraintType::Response: return "Response";
    case ConstraintType::AltResponse: return "Alternate response";
    case ConstraintType::Precedence: return "Precedence";
    case ConstraintType::AltPrecedence: return "Alternate precedence";
  }
  return "?";
}

std::string_view short_name(ConstraintType t) noexcept {
  switch (t) {
    case ConstraintType::Init: return "Init";
    case ConstraintType::End: return "End";
    case ConstraintType::Succession: return "Succ";
    case ConstraintType::AltSuccession: return "AltSucc";
    case ConstraintType::Choice: return "Ch";
    case ConstraintType::CoExistence: return "CoEx";
    case ConstraintType::ExclusiveChoice: return "ExCh";
    case ConstraintType::Response: return "Resp";
    case ConstraintType::AltResponse: return "AltResp";
    case ConstraintType::Precedence: return "Prec";
    case ConstraintType::AltPrecedence: return "AltPrec";
  }
  return "?";
}

std::optional<ConstraintType> constraint_type_from_name(std::string_view name) {
  std::string key;
  for (const char c : name) {
    if (c == ' ' || c == '-' || c == '_' || c == '\t') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  struct Alias {
    std::string_view key;
    ConstraintType type;
  };
  static constexpr Alias aliases[] = {
      {"init", ConstraintType::Init},
      {"initiation", ConstraintType::Init},
      {"end", ConstraintType::End},
      {"termination", ConstraintType::End},
      {"succession", ConstraintType::Succession},
      {"succ", ConstraintType::Succession},
      {"alternatesuccession", ConstraintType::AltSuccession},
      {"altsuccession", ConstraintType::AltSuccession},
      {"altsucc", ConstraintType::AltSuccession},
      {"choice", ConstraintType::Choice},
      {"ch", ConstraintType::Choice},
      {"coexistence", ConstraintType::CoExistence},
      {"coex", ConstraintType::CoExistence},
      {"exclusivechoice", ConstraintType::ExclusiveChoice},
      {"exch", ConstraintType::ExclusiveChoice},
      {"response", ConstraintType::Response},
      {"resp", ConstraintType::Response},
      {"alternateresponse", ConstraintType::AltResponse},
      {"altresponse", ConstraintType::AltResponse},
      {"altresp", ConstraintType::AltResponse},
      {"precedence", ConstraintType::Precedence},
      {"prec", ConstraintType::Precedence},
      {"alternateprecedence", ConstraintType::AltPrecedence},
      {"altprecedence", ConstraintType::AltPrecedence},
      {"altprec", ConstraintType::AltPrecedence},
  };
  for (const auto& a : aliases) {
    if (a.key == key) return a.type;
  }
  return std::nullopt;
}

Constraint Constraint::unary(ConstraintType type, std::string a) {
  if (!is_unary(type)) {
    throw ValidationError(std::string(long_name(type)) + " takes two arguments");
  }
  if (!is_normalized_label(a)) throw ValidationError("bad constraint argument \"" + a + "\"");
  return Constraint(type, std::move(a), {});
}

Constraint Constraint::binary(ConstraintType type, std::string a, std::string b) {
  if (is_unary(type)) {
    throw ValidationError(std::string(long_name(type)) + " takes one argument");
  }
  if (!is_normalized_label(a)) throw ValidationError("bad constraint argument \"" + a + "\"");
  if (!is_normalized_label(b)) throw ValidationError("bad constraint argument \"" + b + "\"");
  if (a == b) throw ValidationError("identical arguments in " + std::string(long_name(type)) + "(" + a + ", " + b + ")");
  if (is_symmetric(type) && b < a) std::swap(a, b);
  return Constraint(type, std::move(a), std::move(b));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Constraint parse_constraint(std::string_view text) {
  const std::string_view body = trim(text);
  const auto open = body.find('(');
  if (open == std::string_view::npos || body.back() != ')') {
    throw ValidationError("malformed constraint \"" + std::string(text) + "\"");
  }
  const std::string_view type_name = trim(body.substr(0, open));
  const auto type = constraint_type_from_name(type_name);
  if (!type) throw ValidationError("unknown constraint type \"" + std::string(type_name) + "\"");

  const std::string_view inner = body.substr(open + 1, body.size() - open - 2);
  std::vector<std::string_view> raw_args;
  std::size_t start = 0;
  for (;;) {
    const auto comma = inner.find(',', start);
    raw_args.push_back(trim(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::vector<std::string> args;
  for (const auto a : raw_args) {
    if (a.empty()) throw ValidationError("empty argument in \"" + std::string(text) + "\"");
    args.push_back(normalize_label(a));
  }
  const std::size_t want = is_unary(*type) ? 1 : 2;
  if (args.size() != want) {
    throw ValidationError(std::string(long_name(*type)) + " expects " + std::to_string(want) + " argument(s), got " +
                          std::to_string(args.size()));
  }
  return want == 1 ? Constraint::unary(*type, std::move(args[0]))
                   : Constraint::binary(*type, std::move(args[0]), std::move(args[1]));
}

std::string render_constraint(const Constraint& c) {
  std::string out(long_name(c.type()));
  out += '(';
  out += c.first();
  if (c.arity() == 2) {
    out += ", ";
    out += c.second();
  }
  out += ')';
  return out;
}

ConstraintSet ConstraintSet::of_type(ConstraintType t) const {
  ConstraintSet out;
  for (const auto& c : items_) {
    if (c.type() == t) out.insert(c);
  }
  return out;
}

ConstraintSet parse_constraint_set_json(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("constraint set JSON: ") + e.what(), 0, e.byte);
  }
  if (!doc.is_object() || !doc.contains("constraints") || !doc["constraints"].is_array()) {
    throw ValidationError("constraint set JSON must be {\"constraints\": [...]}");
  }
  ConstraintSet out;
  for (const auto& item : doc["constraints"]) {
    if (!item.is_string()) throw ValidationError("constraint entries must be strings");
    out.insert(parse_constraint(item.get<std::string>()));
  }
  return out;
}

std::string write_constraint_set_json(const ConstraintSet& cs) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : cs) list.push_back(render_constraint(c));
  return nlohmann::json{{"constraints", list}}.dump(2) + "\n";
}

Evaluation evaluate(const Constraint& c, const Trace& t) {
  const auto& a = c.first();
  const auto& b = c.second();
  return detail::scan(
      c.type(), t.size(), [&](std::size_t i) { return t[i] == a; },
      [&](std::size_t i) { return c.arity() == 2 && t[i] == b; });
}

bool is_activated(const Constraint& c, const Trace& t) {
  bool has_a = false;
  bool has_b = false;
  for (const auto& e : t.events) {
    if (e.label == c.first()) has_a = true;
    else if (c.arity() == 2 && e.label == c.second()) has_b = true;
  }
  return detail::activated(c.type(), has_a, has_b);
}

std::set<EvfRelation> to_evf(const Constraint& c) {
  switch (c.type()) {
    case ConstraintType::Response:
    case ConstraintType::AltResponse:
    case ConstraintType::Succession:
    case ConstraintType::AltSuccession:
    case ConstraintType::Precedence:
    case ConstraintType::AltPrecedence:
      return {EvfRelation{c.first(), c.second()}};
    case ConstraintType::CoExistence:
      return {EvfRelation{c.first(), c.second()}, EvfRelation{c.second(), c.first()}};
    case ConstraintType::Init:
    case ConstraintType::End:
    case ConstraintType::Choice:
    case ConstraintType::ExclusiveChoice:
      return {};
  }
  return {};
}

std::set<EvfRelation> to_evf(const ConstraintSet& cs) {
  std::set<EvfRelation> out;
  for (const auto& c : cs) out.merge(to_evf(c));
  return out;
}

}  // namespace semad
