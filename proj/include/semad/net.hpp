#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semad {

struct Transition {
  std::string id;
  std::optional<std::string> label;  // nullopt for silent transitions

  bool silent() const noexcept { return !label.has_value(); }
};

// Token count per place, indexed like WorkflowNet::places().
struct Marking {
  std::vector<std::uint32_t> tokens;

  friend auto operator<=>(const Marking&, const Marking&) = default;
};

// Petri net with a single source and sink place and every node on a
// source-to-sink path. Arcs have weight one.
class WorkflowNet {
 public:
  using Arc = std::pair<std::string, std::string>;

  // Validates the structure; throws ValidationError. Labels must be
  // normalized (parse_net normalizes before calling this).
  WorkflowNet(std::vector<std::string> places, std::vector<Transition> transitions, std::vector<Arc> arcs,
              std::string source, std::string sink, std::string name = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& places() const noexcept { return places_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  std::size_t source() const noexcept { return source_; }
  std::size_t sink() const noexcept { return sink_; }

  // Non-silent labels.
  std::set<std::string> activities() const;

  Marking initial_marking() const;
  Marking final_marking() const;
  bool enabled(const Marking& m, std::size_t t) const;
  Marking fire(const Marking& m, std::size_t t) const;
  const std::vector<std::size_t>& inputs(std::size_t t) const { return pre_[t]; }
  const std::vector<std::size_t>& outputs(std::size_t t) const { return post_[t]; }

 private:
  std::string name_;
  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
  std::vector<Arc> arcs_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
  std::vector<std::vector<std::size_t>> pre_;
  std::vector<std::vector<std::size_t>> post_;
};

// {"places": [...], "transitions": [{"id": .., "label": ..|null}],
//  "arcs": [["p1", "t1"], ...], "source": "p0", "sink": "pf"}
// Unnormalized labels are normalized with a warning.
WorkflowNet parse_net(std::string_view document, std::string name = {});
std::string write_net(const WorkflowNet& net);

struct Soundness {
  enum class Status { Sound, Unsound, Unknown };
  enum class Reason { None, ProperCompletion, OptionToComplete, DeadTransition, StateBound };

  Status status = Status::Unknown;
  Reason reason = Reason::None;
  std::string detail;
  std::size_t states = 0;
};

std::string_view to_string(Soundness::Status s) noexcept;
std::string_view to_string(Soundness::Reason r) noexcept;

inline constexpr std::size_t kDefaultStateBound = 100'000;

// Explores the reachability graph from the initial marking. Reports proper
// completion first, then option to complete, then dead transitions.
Soundness check_soundness(const WorkflowNet& net, std::size_t state_bound = kDefaultStateBound);

}  // namespace semad
