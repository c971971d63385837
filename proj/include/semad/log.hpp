#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace semad {

// Lowercases, maps line breaks and other whitespace to a single space, drops
// every character that is not an ASCII letter, digit or space, collapses
// space runs and trims. Throws ValidationError if nothing is left.
std::string normalize_label(std::string_view raw);

bool is_normalized_label(std::string_view label);

struct Event {
  std::string label;

  friend auto operator<=>(const Event&, const Event&) = default;
};

struct Trace {
  std::string id;
  std::vector<Event> events;

  Trace() = default;
  Trace(std::string id, std::vector<Event> events)
      : id(std::move(id)), events(std::move(events)) {}
  // Convenience for tests and generators: labels must already be normalized.
  Trace(std::string id, const std::vector<std::string>& labels);

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }
  const std::string& operator[](std::size_t i) const { return events[i].label; }
  std::vector<std::string> labels() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// A multiset of traces with a derived alphabet. Immutable once built.
class EventLog {
 public:
  EventLog() = default;
  // Validates unique trace ids, normalized labels and (unless allow_empty)
  // non-empty traces. Throws ValidationError.
  EventLog(std::string name, std::vector<Trace> traces, bool allow_empty_traces = false);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const std::set<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }

  // Distinct label sequences, sorted.
  std::vector<std::vector<std::string>> variants() const;

  friend bool operator==(const EventLog& a, const EventLog& b) {
    return a.name_ == b.name_ && a.traces_ == b.traces_;
  }

 private:
  std::string name_;
  std::vector<Trace> traces_;
  std::set<std::string> alphabet_;
};

}  // namespace semad
