#include <benchmark/benchmark.h>

#include "fota/constructions.hpp"
#include "fota/decisions.hpp"
#include "fota/expressions.hpp"
#include "fota/semantics.hpp"
#include "support/generators.hpp"

using namespace fota;
using namespace fota::testing;

namespace {

// Ring plus two random edges per state; sparse good states, 30% bad.
Automaton ring_conj(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Transition> ts;
  for (State q = 0; q < n; ++q) {
    ts.push_back({q, 0, static_cast<State>((q + 1) % n)});
    for (Symbol j = 0; j < 2; ++j) ts.push_back({q, j, static_cast<State>(pick(rng, 0, n - 1))});
  }
  IdSet good(n), bad(n);
  for (State q = 0; q < n; ++q) {
    if (q % 97 == 0) good.insert(q);
    if (coin(rng, 0.3)) bad.insert(q);
  }
  return Automaton(ab(), n, {0}, std::move(ts), Acceptance::conj(good, bad));
}

void BM_EmptinessConj(benchmark::State& state) {
  const Automaton a = ring_conj(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(emptiness_conj(a).holds);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.transitions().size()));
}
BENCHMARK(BM_EmptinessConj)->Arg(10'000)->Arg(100'000)->Arg(200'000)->Unit(benchmark::kMillisecond);

void BM_Member(benchmark::State& state) {
  Rng rng(3);
  const Automaton a = random_automaton(rng, AcceptanceKind::Streett, 64, Mode::Finitary,
                                       {.density = 0.05}, 2);
  LassoWord w;
  for (int i = 0; i < state.range(0); ++i) { w.spoke.push_back(i % 2); w.cycle.push_back((i / 3) % 2); }
  for (auto _ : state) benchmark::DoNotOptimize(member(a, w).accepted);
}
BENCHMARK(BM_Member)->Arg(8)->Arg(64)->Arg(512);

void BM_StreettToBuchi(benchmark::State& state) {
  Rng rng(4);
  Automaton a;
  do a = random_automaton(rng, AcceptanceKind::Streett, 40, Mode::Finitary, {.density = 0.08},
                          static_cast<std::size_t>(state.range(0)));
  while (a.num_states() < 30);
  for (auto _ : state) benchmark::DoNotOptimize(to_nfb(a).num_states());
}
BENCHMARK(BM_StreettToBuchi)->Arg(1)->Arg(2)->Arg(3);

void BM_Inclusion(benchmark::State& state) {
  Rng rng(5);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Automaton a = random_nfb(rng, n, {.density = 0.3});
  const Automaton b = random_nfb(rng, n, {.density = 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(inclusion(a, b).holds);
}
BENCHMARK(BM_Inclusion)->Arg(4)->Arg(8)->Arg(12);

void BM_Compile(benchmark::State& state) {
  const Alphabet sigma = ab();
  const OmegaBExpr e = parse_expr("(a+b)* . (b + a^B . b + (a . b)^B . (b + a . a))^w");
  for (auto _ : state) benchmark::DoNotOptimize(compile_expr(e, sigma).num_states());
}
BENCHMARK(BM_Compile);

void BM_Extract(benchmark::State& state) {
  Rng rng(6);
  const Automaton a = random_nfb(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_expr(a).branches.size());
}
BENCHMARK(BM_Extract)->Arg(3)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
