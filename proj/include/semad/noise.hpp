#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semad/log.hpp"

namespace semad {

struct NoiseConfig {
  std::size_t target_traces = 1000;
  double noisy_fraction = 0.3;
  std::size_t ops_per_noisy_trace = 1;
  std::uint64_t seed = 0;
};

enum class NoiseKind { Insert, Delete, Swap };

std::string_view to_string(NoiseKind k) noexcept;

struct NoiseOp {
  NoiseKind kind;
  std::size_t position;               // Swap exchanges position and position + 1
  std::optional<std::string> label;   // inserted label

  friend bool operator==(const NoiseOp&, const NoiseOp&) = default;
};

// One record per selected trace; ops lists only the operations actually
// applied (Delete on a single-event trace and Swap on a trace shorter than
// two are skipped).
struct NoiseRecord {
  std::string trace_id;
  std::vector<NoiseOp> ops;

  friend bool operator==(const NoiseRecord&, const NoiseRecord&) = default;
};

struct NoisyLog {
  EventLog log;
  std::vector<NoiseRecord> records;
};

// Samples target_traces traces uniformly with replacement from the distinct
// variants of `clean`, then corrupts floor(noisy_fraction * target_traces)
// of them chosen uniformly without replacement. Output trace ids are
// "t1".."tN".
NoisyLog expand_and_corrupt(const EventLog& clean, const NoiseConfig& cfg);

// Applies one operation in place.
void apply(const NoiseOp& op, std::vector<std::string>& labels);

// Sidecar JSONL: {"trace": id, "ops": [{"kind": "swap", "position": 0}, ...]}
std::string write_noise_records(const std::vector<NoiseRecord>& records);
std::vector<NoiseRecord> read_noise_records(std::string_view document);

}  // namespace semad
