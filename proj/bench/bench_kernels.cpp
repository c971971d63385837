#include <benchmark/benchmark.h>

#include <random>

#include "semad/checker.hpp"
#include "semad/kernels.hpp"
#include "semad/miner.hpp"
#include "semad/playout.hpp"
#include "semad/synth.hpp"

using namespace semad;

namespace {

EventLog random_log(std::size_t traces, std::size_t alphabet, std::size_t max_len) {
  std::mt19937_64 g(7);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet - 1);
  std::vector<Trace> out;
  for (std::size_t i = 0; i < traces; ++i) {
    std::vector<std::string> t(len(g));
    for (auto& e : t) e = "l" + std::to_string(sym(g));
    out.emplace_back("t" + std::to_string(i + 1), t);
  }
  return EventLog("bench", std::move(out));
}

ConstraintSet truth_like(const EventLog& log, std::size_t n) {
  const auto cands = enumerate_candidates(log.alphabet());
  ConstraintSet cs;
  for (std::size_t i = 0; i < cands.size() && cs.size() < n; i += 3) cs.insert(cands[i]);
  return cs;
}

void BM_CheckSerial(benchmark::State& state) {
  const auto log = random_log(static_cast<std::size_t>(state.range(0)), 12, 30);
  const auto cs = truth_like(log, 200);
  for (auto _ : state) benchmark::DoNotOptimize(check_serial(log, cs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CheckParallel(benchmark::State& state) {
  const auto log = random_log(static_cast<std::size_t>(state.range(0)), 12, 30);
  const auto cs = truth_like(log, 200);
  for (auto _ : state) benchmark::DoNotOptimize(check(log, cs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CountSerial(benchmark::State& state) {
  const auto log = random_log(static_cast<std::size_t>(state.range(0)), 15, 30);
  const EncodedLog enc(log);
  const auto cands = enumerate_candidates(log.alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(count_candidates_serial(enc, cands));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cands.size()));
}

void BM_CountParallel(benchmark::State& state) {
  const auto log = random_log(static_cast<std::size_t>(state.range(0)), 15, 30);
  const EncodedLog enc(log);
  const auto cands = enumerate_candidates(log.alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(count_candidates(enc, cands));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cands.size()));
}

void BM_TruthExtraction(benchmark::State& state) {
  const auto net = random_block_net(static_cast<std::uint64_t>(state.range(0)));
  const auto lang = playout_exhaustive(net);
  for (auto _ : state) benchmark::DoNotOptimize(extract_truth(lang, net.activities()));
}

}  // namespace

BENCHMARK(BM_CheckSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountSerial)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountParallel)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruthExtraction)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
