#include "semad/log.hpp"

#include <algorithm>
#include <unordered_set>

#include "semad/error.hpp"

namespace semad {

std::string normalize_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (const char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\v' || c == '\f') {
      pending_space = !out.empty();
      continue;
    }
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    if (!alnum) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  if (out.empty()) {
    throw ValidationError("empty label after normalization: \"" + std::string(raw) + "\"");
  }
  return out;
}

bool is_normalized_label(std::string_view label) {
  if (label.empty() || label.front() == ' ' || label.back() == ' ') return false;
  char prev = 0;
  for (const char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ';
    if (!ok || (c == ' ' && prev == ' ')) return false;
    prev = c;
  }
  return true;
}

Trace::Trace(std::string id, const std::vector<std::string>& labels) : id(std::move(id)) {
  events.reserve(labels.size());
  for (const auto& l : labels) events.push_back(Event{l});
}

std::vector<std::string> Trace::labels() const {
  std::vector<std::string> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.label);
  return out;
}

EventLog::EventLog(std::string name, std::vector<Trace> traces, bool allow_empty_traces)
    : name_(std::move(name)), traces_(std::move(traces)) {
  std::unordered_set<std::string> ids;
  for (const auto& t : traces_) {
    if (!ids.insert(t.id).second) throw ValidationError("duplicate trace id \"" + t.id + "\"");
    if (t.empty() && !allow_empty_traces) {
      throw ValidationError("trace \"" + t.id + "\" has no events");
    }
    for (const auto& e : t.events) {
      if (!is_normalized_label(e.label)) {
        throw ValidationError("unnormalized label \"" + e.label + "\" in trace " + t.id);
      }
      alphabet_.insert(e.label);
    }
  }
}

std::vector<std::vector<std::string>> EventLog::variants() const {
  std::set<std::vector<std::string>> seen;
  for (const auto& t : traces_) seen.insert(t.labels());
  return {seen.begin(), seen.end()};
}

}  // namespace semad
