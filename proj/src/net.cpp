#include "semad/net.hpp"

#include <deque>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "semad/diagnostics.hpp"
#include "semad/error.hpp"
#include "semad/log.hpp"

namespace semad {

WorkflowNet::WorkflowNet(std::vector<std::string> places, std::vector<Transition> transitions, std::vector<Arc> arcs,
                         std::string source, std::string sink, std::string name)
    : name_(std::move(name)),
      places_(std::move(places)),
      transitions_(std::move(transitions)),
      arcs_(std::move(arcs)) {
  std::unordered_map<std::string, std::size_t> place_index;
  std::unordered_map<std::string, std::size_t> transition_index;
  for (std::size_t i = 0; i < places_.size(); ++i) {
    if (!place_index.emplace(places_[i], i).second) throw ValidationError("duplicate place id \"" + places_[i] + "\"");
  }
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    if (place_index.contains(t.id)) throw ValidationError("id \"" + t.id + "\" names both a place and a transition");
    if (!transition_index.emplace(t.id, i).second) throw ValidationError("duplicate transition id \"" + t.id + "\"");
    if (t.label && !is_normalized_label(*t.label)) {
      throw ValidationError("unnormalized label \"" + *t.label + "\" on transition " + t.id);
    }
  }
  if (places_.empty()) throw ValidationError("net has no places");

  pre_.assign(transitions_.size(), {});
  post_.assign(transitions_.size(), {});
  std::vector<std::size_t> place_in(places_.size(), 0);
  std::vector<std::size_t> place_out(places_.size(), 0);
  std::set<Arc> seen;
  for (const auto& arc : arcs_) {
    if (!seen.insert(arc).second) throw ValidationError("duplicate arc " + arc.first + " -> " + arc.second);
    const auto fp = place_index.find(arc.first);
    const auto ft = transition_index.find(arc.first);
    const auto tp = place_index.find(arc.second);
    const auto tt = transition_index.find(arc.second);
    if (fp == place_index.end() && ft == transition_index.end()) {
      throw ValidationError("dangling arc endpoint \"" + arc.first + "\"");
    }
    if (tp == place_index.end() && tt == transition_index.end()) {
      throw ValidationError("dangling arc endpoint \"" + arc.second + "\"");
    }
    if (fp != place_index.end() && tt != transition_index.end()) {
      pre_[tt->second].push_back(fp->second);
      ++place_out[fp->second];
    } else if (ft != transition_index.end() && tp != place_index.end()) {
      post_[ft->second].push_back(tp->second);
      ++place_in[tp->second];
    } else {
      throw ValidationError("arc " + arc.first + " -> " + arc.second + " must connect a place and a transition");
    }
  }

  std::vector<std::size_t> sources;
  std::vector<std::size_t> sinks;
  for (std::size_t p = 0; p < places_.size(); ++p) {
    if (place_in[p] == 0) sources.push_back(p);
    if (place_out[p] == 0) sinks.push_back(p);
  }
  if (sources.size() > 1) throw ValidationError("multiple source places");
  if (sinks.size() > 1) throw ValidationError("multiple sink places");
  if (sources.empty()) throw ValidationError("no source place");
  if (sinks.empty()) throw ValidationError("no sink place");
  if (places_[sources[0]] != source) {
    throw ValidationError("declared source \"" + source + "\" is not the place without incoming arcs");
  }
  if (places_[sinks[0]] != sink) {
    throw ValidationError("declared sink \"" + sink + "\" is not the place without outgoing arcs");
  }
  source_ = sources[0];
  sink_ = sinks[0];

  // Nodes: places [0, P), transitions [P, P+T).
  const std::size_t np = places_.size();
  const std::size_t n = np + transitions_.size();
  std::vector<std::vector<std::size_t>> fwd(n);
  std::vector<std::vector<std::size_t>> bwd(n);
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    for (auto p : pre_[t]) {
      fwd[p].push_back(np + t);
      bwd[np + t].push_back(p);
    }
    for (auto p : post_[t]) {
      fwd[np + t].push_back(p);
      bwd[p].push_back(np + t);
    }
  }
  auto reach = [n](std::size_t start, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  const auto from_source = reach(source_, fwd);
  const auto to_sink = reach(sink_, bwd);
  for (std::size_t u = 0; u < n; ++u) {
    if (!from_source[u] || !to_sink[u]) {
      const std::string& id = u < np ? places_[u] : transitions_[u - np].id;
      throw ValidationError("node \"" + id + "\" is not on a path from source to sink");
    }
  }
}

std::set<std::string> WorkflowNet::activities() const {
  std::set<std::string> out;
  for (const auto& t : transitions_) {
    if (t.label) out.insert(*t.label);
  }
  return out;
}

Marking WorkflowNet::initial_marking() const {
  Marking m{std::vector<std::uint32_t>(places_.size(), 0)};
  m.tokens[source_] = 1;
  return m;
}

Marking WorkflowNet::final_marking() const {
  Marking m{std::vector<std::uint32_t>(places_.size(), 0)};
  m.tokens[sink_] = 1;
  return m;
}

bool WorkflowNet::enabled(const Marking& m, std::size_t t) const {
  for (auto p : pre_[t]) {
    if (m.tokens[p] == 0) return false;
  }
  return true;
}

Marking WorkflowNet::fire(const Marking& m, std::size_t t) const {
  Marking next = m;
  for (auto p : pre_[t]) --next.tokens[p];
  for (auto p : post_[t]) ++next.tokens[p];
  return next;
}

WorkflowNet parse_net(std::string_view document, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("net JSON: ") + e.what(), 0, e.byte);
  }
  try {
    std::vector<std::string> places = doc.at("places").get<std::vector<std::string>>();
    std::vector<Transition> transitions;
    for (const auto& t : doc.at("transitions")) {
      Transition tr;
      tr.id = t.at("id").get<std::string>();
      if (t.contains("label") && !t["label"].is_null()) {
        const std::string raw = t["label"].get<std::string>();
        std::string label = normalize_label(raw);
        if (label != raw) warn("transition " + tr.id + ": label \"" + raw + "\" normalized to \"" + label + "\"");
        tr.label = std::move(label);
      }
      transitions.push_back(std::move(tr));
    }
    std::vector<WorkflowNet::Arc> arcs;
    for (const auto& a : doc.at("arcs")) {
      if (!a.is_array() || a.size() != 2) throw ValidationError("arcs must be [from, to] pairs");
      arcs.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
    }
    if (name.empty() && doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
    return WorkflowNet(std::move(places), std::move(transitions), std::move(arcs), doc.at("source").get<std::string>(),
                       doc.at("sink").get<std::string>(), std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("net JSON: ") + e.what());
  }
}

std::string write_net(const WorkflowNet& net) {
  nlohmann::json transitions = nlohmann::json::array();
  for (const auto& t : net.transitions()) {
    transitions.push_back({{"id", t.id}, {"label", t.label ? nlohmann::json(*t.label) : nlohmann::json(nullptr)}});
  }
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& [from, to] : net.arcs()) arcs.push_back({from, to});
  nlohmann::json doc = {{"places", net.places()},
                        {"transitions", transitions},
                        {"arcs", arcs},
                        {"source", net.places()[net.source()]},
                        {"sink", net.places()[net.sink()]}};
  if (!net.name().empty()) doc["name"] = net.name();
  return doc.dump(2) + "\n";
}

std::string_view to_string(Soundness::Status s) noexcept {
  switch (s) {
    case Soundness::Status::Sound: return "sound";
    case Soundness::Status::Unsound: return "unsound";
    case Soundness::Status::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(Soundness::Reason r) noexcept {
  switch (r) {
    case Soundness::Reason::None: return "none";
    case Soundness::Reason::ProperCompletion: return "proper completion";
    case Soundness::Reason::OptionToComplete: return "option to complete";
    case Soundness::Reason::DeadTransition: return "dead transition";
    case Soundness::Reason::StateBound: return "state bound";
  }
  return "?";
}

Soundness check_soundness(const WorkflowNet& net, std::size_t state_bound) {
  Soundness result;
  std::map<Marking, std::size_t> index;
  std::vector<const Marking*> states;
  std::vector<std::vector<std::size_t>> predecessors;
  std::vector<bool> fired(net.transitions().size(), false);

  auto intern = [&](Marking m) -> std::pair<std::size_t, bool> {
    auto [it, inserted] = index.emplace(std::move(m), states.size());
    if (inserted) {
      states.push_back(&it->first);
      predecessors.emplace_back();
    }
    return {it->second, inserted};
  };

  std::deque<std::size_t> queue;
  queue.push_back(intern(net.initial_marking()).first);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
      if (!net.enabled(*states[s], t)) continue;
      fired[t] = true;
      auto [next, inserted] = intern(net.fire(*states[s], t));
      predecessors[next].push_back(s);
      if (inserted) {
        if (states.size() > state_bound) {
          result.status = Soundness::Status::Unknown;
          result.reason = Soundness::Reason::StateBound;
          result.detail = "more than " + std::to_string(state_bound) + " reachable markings";
          result.states = states.size();
          return result;
        }
        queue.push_back(next);
      }
    }
  }
  result.states = states.size();

  const Marking final_marking = net.final_marking();
  for (const Marking* m : states) {
    bool covers = true;
    for (std::size_t p = 0; p < m->tokens.size(); ++p) covers = covers && m->tokens[p] >= final_marking.tokens[p];
    if (covers && *m != final_marking) {
      result.status = Soundness::Status::Unsound;
      result.reason = Soundness::Reason::ProperCompletion;
      result.detail = "a reachable marking strictly covers the final marking";
      return result;
    }
  }

  std::vector<bool> completes(states.size(), false);
  const auto f = index.find(final_marking);
  if (f != index.end()) {
    std::vector<std::size_t> stack{f->second};
    completes[f->second] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : predecessors[u]) {
        if (!completes[v]) {
          completes[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!completes[s]) {
      result.status = Soundness::Status::Unsound;
      result.reason = Soundness::Reason::OptionToComplete;
      result.detail = "the final marking is unreachable from some reachable marking";
      return result;
    }
  }

  for (std::size_t t = 0; t < fired.size(); ++t) {
    if (!fired[t]) {
      result.status = Soundness::Status::Unsound;
      result.reason = Soundness::Reason::DeadTransition;
      result.detail = "transition \"" + net.transitions()[t].id + "\" can never fire";
      return result;
    }
  }
  result.status = Soundness::Status::Sound;
  return result;
}

}  // namespace semad
