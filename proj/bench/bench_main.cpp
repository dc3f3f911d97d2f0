// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "ttree/claims.hpp"
#include "ttree/oracle/oracle.hpp"
#include "ttree/trees.hpp"

using namespace ttree;

namespace {

TrimmedTree ternary_every_other() {
  return TrimmedTree(Alphabet(Eventual<Symbol>::constant(3)), NatSet::up({}, {true, false}), Point());
}

void BM_Levels(benchmark::State& state) {
  const TrimmedTree t = ternary_every_other();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(levels(t, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(level_count(t, n)));
}

void BM_LevelsSerial(benchmark::State& state) {
  const TrimmedTree t = ternary_every_other();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(levels_serial(t, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(level_count(t, n)));
}

std::vector<Json> claim_batch(std::size_t count) {
  std::vector<Json> out;
  const TrimmedTree t = ternary_every_other();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 6 + k % 8;
    out.push_back(claims::levels(t, n, levels(t, n)));
  }
  return out;
}

void BM_VerifyBatch(benchmark::State& state) {
  const auto batch = claim_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::verify_batch(batch));
}

void BM_VerifyBatchSerial(benchmark::State& state) {
  const auto batch = claim_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::verify_batch_serial(batch));
}

}  // namespace

BENCHMARK(BM_Levels)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelsSerial)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyBatch)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyBatchSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
