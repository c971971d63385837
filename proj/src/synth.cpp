#include "semad/synth.hpp"

#include <memory>
#include <string>
#include <vector>

#include "semad/error.hpp"
#include "semad/rng.hpp"

namespace semad {

namespace {

constexpr const char* kVerbs[] = {"receive", "check", "approve", "reject", "send", "archive", "register",
                                  "review", "sign", "ship", "pay", "notify", "cancel", "update", "verify"};
constexpr const char* kObjects[] = {"order", "invoice", "claim", "request", "contract", "payment",
                                    "document", "customer", "report", "shipment"};

struct Node {
  enum class Kind { Activity, Sequence, Choice, Parallel, Optional } kind;
  std::string label;
  std::vector<std::unique_ptr<Node>> children;
};

class TreeBuilder {
 public:
  TreeBuilder(Rng& rng, const SynthOptions& opts) : rng_(rng), opts_(opts) {
    for (const char* v : kVerbs) {
      for (const char* o : kObjects) pool_.push_back(std::string(v) + " " + o);
    }
    rng_.shuffle(std::span(pool_));
  }

  std::string next_label() { return pool_.at(next_label_++); }

  std::unique_ptr<Node> build(std::size_t activities) {
    auto node = std::make_unique<Node>();
    if (activities == 1) {
      node->kind = Node::Kind::Activity;
      node->label = pool_.at(next_label_++);
      if (opts_.allow_skips && rng_.index(6) == 0) return optional(std::move(node));
      return node;
    }
    const std::size_t roll = rng_.index(10);
    if (roll < 5) {
      node->kind = Node::Kind::Sequence;
    } else if (roll < 8) {
      node->kind = Node::Kind::Choice;
    } else {
      node->kind = Node::Kind::Parallel;
    }
    std::size_t branches = 2;
    if (node->kind == Node::Kind::Sequence) branches = 2 + rng_.index(std::min<std::size_t>(activities, 3) - 1);
    if (node->kind == Node::Kind::Parallel) {
      branches = 2 + rng_.index(std::min(activities, std::max<std::size_t>(opts_.max_parallel_branches, 2)) - 1);
    }
    branches = std::min(branches, activities);
    // Split the activity budget, each branch getting at least one.
    std::vector<std::size_t> sizes(branches, 1);
    for (std::size_t left = activities - branches; left > 0; --left) ++sizes[rng_.index(branches)];
    for (auto s : sizes) node->children.push_back(build(s));
    if (opts_.allow_skips && node->kind != Node::Kind::Sequence && rng_.index(8) == 0) return optional(std::move(node));
    return node;
  }

 private:
  std::unique_ptr<Node> optional(std::unique_ptr<Node> inner) {
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Optional;
    node->children.push_back(std::move(inner));
    return node;
  }

  Rng& rng_;
  const SynthOptions& opts_;
  std::vector<std::string> pool_;
  std::size_t next_label_ = 0;
};

class NetBuilder {
 public:
  std::string place() {
    places_.push_back("p" + std::to_string(places_.size()));
    return places_.back();
  }

  std::string transition(std::optional<std::string> label) {
    transitions_.push_back({"t" + std::to_string(transitions_.size()), std::move(label)});
    return transitions_.back().id;
  }

  void arc(const std::string& from, const std::string& to) { arcs_.emplace_back(from, to); }

  // Wires the subtree between the given entry and exit places.
  void emit(const Node& n, const std::string& in, const std::string& out) {
    switch (n.kind) {
      case Node::Kind::Activity: {
        const auto t = transition(n.label);
        arc(in, t);
        arc(t, out);
        break;
      }
      case Node::Kind::Sequence: {
        std::string cur = in;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          const std::string next = i + 1 == n.children.size() ? out : place();
          emit(*n.children[i], cur, next);
          cur = next;
        }
        break;
      }
      case Node::Kind::Choice:
        for (const auto& c : n.children) emit(*c, in, out);
        break;
      case Node::Kind::Parallel: {
        const auto split = transition(std::nullopt);
        const auto join = transition(std::nullopt);
        arc(in, split);
        arc(join, out);
        for (const auto& c : n.children) {
          const auto b_in = place();
          const auto b_out = place();
          arc(split, b_in);
          arc(b_out, join);
          emit(*c, b_in, b_out);
        }
        break;
      }
      case Node::Kind::Optional: {
        emit(*n.children[0], in, out);
        const auto skip = transition(std::nullopt);
        arc(in, skip);
        arc(skip, out);
        break;
      }
    }
  }

  WorkflowNet finish(const std::string& source, const std::string& sink, std::string name) {
    return WorkflowNet(places_, transitions_, arcs_, source, sink, std::move(name));
  }

 private:
  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
  std::vector<WorkflowNet::Arc> arcs_;
};

}  // namespace

WorkflowNet random_block_net(std::uint64_t seed, const SynthOptions& opts) {
  if (opts.min_activities == 0 || opts.min_activities > opts.max_activities) {
    throw ValidationError("bad activity range for random net");
  }
  Rng rng(seed);
  const std::size_t n = opts.min_activities + rng.index(opts.max_activities - opts.min_activities + 1);
  TreeBuilder tree(rng, opts);
  auto root = std::make_unique<Node>();
  root->kind = Node::Kind::Sequence;
  auto first = std::make_unique<Node>();
  first->kind = Node::Kind::Activity;
  first->label = tree.next_label();
  root->children.push_back(std::move(first));
  if (n > 1) root->children.push_back(tree.build(n - 1));

  NetBuilder nb;
  const auto source = nb.place();
  const auto sink = nb.place();
  const auto inner_in = nb.place();
  const auto inner_out = nb.place();
  const auto start = nb.transition(std::nullopt);
  const auto end = nb.transition(std::nullopt);
  nb.arc(source, start);
  nb.arc(start, inner_in);
  nb.arc(inner_out, end);
  nb.arc(end, sink);
  nb.emit(*root, inner_in, inner_out);
  return nb.finish(source, sink, "random-" + std::to_string(seed));
}

}  // namespace semad
