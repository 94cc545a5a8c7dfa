// Parallel kernels against their serial references on one generated chain.
#include <benchmark/benchmark.h>

#include <memory>

#include "ringtrace/heuristics.hpp"
#include "ringtrace/synth.hpp"

using namespace ringtrace;

namespace {

const ChainStore& chain() {
  static const std::unique_ptr<ChainStore> store = [] {
    synth::GeneratorConfig c;
    c.seed = 99;
    c.blocks = 4000;
    c.start_time = start_of_day(make_date(2022, 3, 1));
    c.wallets = {{synth::WalletPolicy::Correct, 1}, {synth::WalletPolicy::TenBlockBug, 1},
                 {synth::WalletPolicy::CachedDecoys, 1}};
    c.mint_rate = 0.3;
    c.transfer_rate = 0.3;
    return std::make_unique<ChainStore>(build_chain(synth::generate(c).transactions));
  }();
  return *store;
}

template <LabelSet (*Kernel)(const ChainStore&)>
void run(benchmark::State& state) {
  const ChainStore& c = chain();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(c));
  state.counters["rings"] = static_cast<double>(c.ring_count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.ring_count()));
}

LabelSet ten_block_parallel(const ChainStore& c) { return ten_block_decoy_bug(c); }
LabelSet ten_block_serial(const ChainStore& c) { return serial::ten_block_decoy_bug(c); }
LabelSet mordinal_parallel(const ChainStore& c) { return mordinal_decoys(c); }
LabelSet mordinal_serial(const ChainStore& c) { return serial::mordinal_decoys(c); }
LabelSet coinbase_parallel(const ChainStore& c) { return coinbase_decoys(c); }
LabelSet coinbase_serial(const ChainStore& c) { return serial::coinbase_decoys(c); }

}  // namespace

BENCHMARK(run<ten_block_parallel>)->Name("ten_block/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(run<ten_block_serial>)->Name("ten_block/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(run<differ_by_one>)->Name("differ_by_one/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(run<serial::differ_by_one>)->Name("differ_by_one/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(run<mordinal_parallel>)->Name("mordinal/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(run<mordinal_serial>)->Name("mordinal/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(run<coinbase_parallel>)->Name("coinbase/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(run<coinbase_serial>)->Name("coinbase/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(run<zero_mixin>)->Name("zero_mixin/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(run<serial::zero_mixin>)->Name("zero_mixin/serial")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
