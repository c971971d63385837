#pragma once

#include <cstdint>

#include "semad/net.hpp"

namespace semad {

struct SynthOptions {
  std::size_t min_activities = 3;
  std::size_t max_activities = 8;
  // Maximum branches under one parallel block.
  std::size_t max_parallel_branches = 2;
  bool allow_skips = true;  // silent bypass of a block
};

// Random sound, loop-free, block-structured workflow net built from a
// process tree (sequence / exclusive choice / parallel / optional blocks)
// with distinct activity labels.
WorkflowNet random_block_net(std::uint64_t seed, const SynthOptions& opts = {});

}  // namespace semad
