#include <benchmark/benchmark.h>

#include <random>

#include "mkpolar/channel.hpp"
#include "mkpolar/construction.hpp"
#include "mkpolar/encoder.hpp"
#include "mkpolar/fast_ssc.hpp"
#include "mkpolar/sc_decoder.hpp"

using namespace mkpolar;

namespace {

OrderingStrategy order_arg(std::int64_t v) { return v ? OrderingStrategy::First : OrderingStrategy::Last; }

std::vector<std::vector<Llr>> make_frames(const CodeSpec& s, std::size_t count, double ebn0_db) {
  std::mt19937_64 rng(1);
  const ChannelConfig ch{ebn0_db, s.rate(), 1, {}};
  std::vector<std::vector<Llr>> frames;
  BitVector msg(s.k_bits);
  for (std::size_t i = 0; i < count; ++i) {
    for (auto& b : msg) b = static_cast<Bit>(rng() & 1u);
    frames.push_back(awgn_llr(modulate(encode_recursive(expand_message(msg, s), s)), ch, rng));
  }
  return frames;
}

void BM_DecodeSC(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CodeSpec s = make_code(n, n / 2, order_arg(state.range(1)), 3.0);
  const auto frames = make_frames(s, 64, 3.0);
  ScDecoder dec(s);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dec.decode(frames[i++ % frames.size()]));
  state.SetItemsProcessed(state.iterations());
}

void BM_DecodeFastSSC(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CodeSpec s = make_code(n, n / 2, order_arg(state.range(1)), 3.0);
  const auto frames = make_frames(s, 64, 3.0);
  FastSscDecoder dec(s, NodeLimits{});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dec.decode(frames[i++ % frames.size()]));
  state.SetItemsProcessed(state.iterations());
}

void BM_EncodeRecursive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CodeSpec s = make_code(n, n / 2, OrderingStrategy::Last, 3.0);
  std::mt19937_64 rng(2);
  BitVector u(n);
  for (auto& b : u) b = static_cast<Bit>(rng() & 1u);
  for (auto _ : state) benchmark::DoNotOptimize(encode_recursive(u, s));
}

void BM_GaConstruction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto [twos, threes] = factor_length(n);
  const KernelVector kv = KernelVector::binary_then_ternary(twos, threes);
  for (auto _ : state) benchmark::DoNotOptimize(ga_reliabilities(kv, 0.5, 3.0));
}

void BM_BuildSchedule(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CodeSpec s = make_code(n, n / 2, OrderingStrategy::Last, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_schedule(s));
}

}  // namespace

BENCHMARK(BM_DecodeSC)->ArgsProduct({{96, 432, 768, 2304}, {0, 1}});
BENCHMARK(BM_DecodeFastSSC)->ArgsProduct({{96, 432, 768, 2304}, {0, 1}});
BENCHMARK(BM_EncodeRecursive)->Arg(96)->Arg(432)->Arg(2304);
BENCHMARK(BM_GaConstruction)->Arg(96)->Arg(2304);
BENCHMARK(BM_BuildSchedule)->Arg(96)->Arg(2304);

BENCHMARK_MAIN();
