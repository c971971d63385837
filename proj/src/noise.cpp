#include "semad/noise.hpp"

#include <cmath>
#include <numeric>

#include "json.hpp"
#include "semad/error.hpp"
#include "semad/rng.hpp"

namespace semad {

std::string_view to_string(NoiseKind k) noexcept {
  switch (k) {
    case NoiseKind::Insert: return "insert";
    case NoiseKind::Delete: return "delete";
    case NoiseKind::Swap: return "swap";
  }
  return "?";
}

void apply(const NoiseOp& op, std::vector<std::string>& labels) {
  switch (op.kind) {
    case NoiseKind::Insert:
      if (op.position > labels.size() || !op.label) throw ValidationError("bad insert operation");
      labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(op.position), *op.label);
      break;
    case NoiseKind::Delete:
      if (op.position >= labels.size()) throw ValidationError("bad delete operation");
      labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(op.position));
      break;
    case NoiseKind::Swap:
      if (op.position + 1 >= labels.size()) throw ValidationError("bad swap operation");
      std::swap(labels[op.position], labels[op.position + 1]);
      break;
  }
}

NoisyLog expand_and_corrupt(const EventLog& clean, const NoiseConfig& cfg) {
  if (clean.empty() || clean.alphabet().empty()) throw ValidationError("cannot add noise to an empty log");
  if (cfg.target_traces == 0 || cfg.ops_per_noisy_trace == 0) throw ValidationError("noise counts must be positive");
  if (!(cfg.noisy_fraction >= 0.0 && cfg.noisy_fraction <= 1.0)) {
    throw ValidationError("noisy fraction must lie in [0, 1]");
  }

  Rng rng(cfg.seed);
  const auto variants = clean.variants();
  const std::vector<std::string> alphabet(clean.alphabet().begin(), clean.alphabet().end());

  std::vector<std::vector<std::string>> sampled;
  sampled.reserve(cfg.target_traces);
  for (std::size_t i = 0; i < cfg.target_traces; ++i) sampled.push_back(variants[rng.index(variants.size())]);

  // Partial Fisher-Yates picks the noisy subset; records follow trace order.
  const auto n_noisy = static_cast<std::size_t>(
      std::floor(cfg.noisy_fraction * static_cast<double>(cfg.target_traces) + 1e-9));
  std::vector<std::size_t> order(cfg.target_traces);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < n_noisy; ++i) std::swap(order[i], order[i + rng.index(order.size() - i)]);
  std::vector<bool> noisy(cfg.target_traces, false);
  for (std::size_t i = 0; i < n_noisy; ++i) noisy[order[i]] = true;

  std::vector<NoiseRecord> records;
  std::vector<Trace> traces;
  traces.reserve(cfg.target_traces);
  for (std::size_t i = 0; i < cfg.target_traces; ++i) {
    std::string id = "t" + std::to_string(i + 1);
    auto& labels = sampled[i];
    if (noisy[i]) {
      NoiseRecord rec{id, {}};
      for (std::size_t k = 0; k < cfg.ops_per_noisy_trace; ++k) {
        const auto kind = static_cast<NoiseKind>(rng.index(3));
        NoiseOp op{kind, 0, std::nullopt};
        switch (kind) {
          case NoiseKind::Insert:
            op.label = alphabet[rng.index(alphabet.size())];
            op.position = rng.index(labels.size() + 1);
            break;
          case NoiseKind::Delete:
            if (labels.size() < 2) continue;
            op.position = rng.index(labels.size());
            break;
          case NoiseKind::Swap:
            if (labels.size() < 2) continue;
            op.position = rng.index(labels.size() - 1);
            break;
        }
        semad::apply(op, labels);
        rec.ops.push_back(std::move(op));
      }
      records.push_back(std::move(rec));
    }
    traces.emplace_back(std::move(id), labels);
  }
  return {EventLog(clean.name(), std::move(traces)), std::move(records)};
}

std::string write_noise_records(const std::vector<NoiseRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : r.ops) {
      nlohmann::json o = {{"kind", to_string(op.kind)}, {"position", op.position}};
      if (op.label) o["label"] = *op.label;
      ops.push_back(std::move(o));
    }
    out += nlohmann::json{{"trace", r.trace_id}, {"ops", ops}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<NoiseRecord> read_noise_records(std::string_view document) {
  std::vector<NoiseRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    const auto line = document.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      NoiseRecord rec{obj.at("trace").get<std::string>(), {}};
      for (const auto& o : obj.at("ops")) {
        const auto kind = o.at("kind").get<std::string>();
        NoiseOp op{NoiseKind::Insert, o.at("position").get<std::size_t>(), std::nullopt};
        if (kind == "insert") {
          op.label = o.at("label").get<std::string>();
        } else if (kind == "delete") {
          op.kind = NoiseKind::Delete;
        } else if (kind == "swap") {
          op.kind = NoiseKind::Swap;
        } else {
          throw ParseError("noise record: unknown kind \"" + kind + "\"", line_no, 1);
        }
        rec.ops.push_back(std::move(op));
      }
      out.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("noise record: ") + e.what(), line_no, 1);
    }
  }
  return out;
}

}  // namespace semad
