// Acceptance checks: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fota/constructions.hpp"
#include "fota/decisions.hpp"
#include "fota/error.hpp"
#include "fota/expressions.hpp"
#include "fota/oracle.hpp"
#include "fota/semantics.hpp"
#include "support/generators.hpp"

using namespace fota;
using namespace fota::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

// 1. bounded-a automaton membership
Outcome bounded_a_members() {
  Outcome o;
  const Automaton a = bounded_a();
  const std::vector<std::pair<std::string, bool>> cases{
      {"(ab)", true}, {"(b)", true}, {"ab(b)", true}, {"(a)", false}, {"b(a)", false}};
  for (const auto& [w, expected] : cases)
    if (member(a, lasso(w)).accepted != expected) fail(o, "wrong verdict on " + w);
  if (o.pass) o.detail = "5/5 verdicts";
  return o;
}

// 2. emptiness under both Conj modes
Outcome conj_coincidence() {
  Outcome o;
  Rng rng(0xC0FFEE);
  const auto words = sweep(2, 2);
  std::size_t nonempty = 0;
  for (int i = 0; i < 200; ++i) {
    const Automaton fin = random_automaton(rng, AcceptanceKind::Conj, 6, Mode::Finitary);
    const Automaton cl = with_mode(fin, Mode::Classical);
    const Verdict vf = emptiness_conj(fin);
    const Verdict vc = emptiness_conj(cl);
    if (vf.holds != vc.holds) {
      fail(o, "verdicts differ on instance " + std::to_string(i));
      continue;
    }
    if (!vf.holds) {
      ++nonempty;
      if (!vf.witness || !oracle_member(fin, *vf.witness) || !oracle_member(cl, *vc.witness))
        fail(o, "witness rejected by oracle on instance " + std::to_string(i));
    } else {
      for (const auto& w : words)
        if (oracle_member(fin, w) || oracle_member(cl, w))
          fail(o, "oracle finds a member of an empty instance " + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "200/200 agree, " + std::to_string(nonempty) + " nonempty";
  return o;
}

// 3. finitary and classical membership coincide on lassos
Outcome lasso_coincidence() {
  Outcome o;
  Rng rng(0x1A550);
  const auto words = sweep(3, 3);
  std::size_t checks = 0;
  for (AcceptanceKind kind :
       {AcceptanceKind::Buchi, AcceptanceKind::Parity, AcceptanceKind::Streett}) {
    for (int i = 0; i < 100; ++i) {
      const Automaton fin = random_automaton(rng, kind, 5, Mode::Finitary);
      const Automaton cl = with_mode(fin, Mode::Classical);
      for (const auto& w : words) {
        ++checks;
        const bool of = oracle_member(fin, w);
        const bool oc = oracle_member(cl, w);
        const bool mf = member(fin, w).accepted;
        const bool mc = member(cl, w).accepted;
        if (of != oc || mf != mc || of != mf)
          fail(o, std::string(to_string(kind)) + " instance " + std::to_string(i) + " on " +
                      format_lasso(w, fin.alphabet()));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " (automaton, lasso) pairs";
  return o;
}

// 4. constructions against the oracle
Outcome construction_soundness() {
  Outcome o;
  Rng rng(0x50D);
  const auto words = sweep(3, 3);
  for (int i = 0; i < 50; ++i) {
    const Automaton a = random_nfb(rng, 4);
    const Automaton b = random_nfb(rng, 4);
    const Automaton both = intersect(a, b);
    const Automaton either = unite(a, b);
    for (const auto& w : words) {
      const bool ma = oracle_member(a, w), mb = oracle_member(b, w);
      if (member(both, w).accepted != (ma && mb))
        fail(o, "intersect pair " + std::to_string(i) + " on " + format_lasso(w, a.alphabet()));
      if (member(either, w).accepted != (ma || mb))
        fail(o, "union pair " + std::to_string(i) + " on " + format_lasso(w, a.alphabet()));
    }
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t pairs = 1 + static_cast<std::size_t>(i % 2);
    const Automaton s =
        random_automaton(rng, AcceptanceKind::Streett, 4, Mode::Finitary, {}, pairs);
    const Automaton nb = streett_to_buchi(s);
    const Automaton nfb = to_nfb(s);
    for (const auto& w : words) {
      const bool expected = oracle_member(s, w);
      if (member(nb, w).accepted != expected || member(nfb, w).accepted != expected)
        fail(o, "streett instance " + std::to_string(i) + " on " + format_lasso(w, s.alphabet()));
    }
  }
  if (o.pass) o.detail = "0 disagreements over 100 instances";
  return o;
}

// 5. inclusion and universality witnesses
Outcome inclusion_witnesses() {
  Outcome o;
  Rng rng(0x1AC);
  const auto words = sweep(3, 3);
  std::size_t refuted = 0;
  for (int i = 0; i < 50; ++i) {
    const Automaton a = random_nfb(rng, 4);
    const Automaton b = random_nfb(rng, 4);
    const Verdict v = inclusion(a, b);
    if (!v.holds) {
      ++refuted;
      if (!v.witness || !member(a, *v.witness).accepted || member(b, *v.witness).accepted ||
          !oracle_member(a, *v.witness) || oracle_member(b, *v.witness))
        fail(o, "invalid counterexample for pair " + std::to_string(i));
    } else {
      for (const auto& w : words)
        if (oracle_member(a, w) && !oracle_member(b, w))
          fail(o, "sweep counterexample for included pair " + std::to_string(i));
    }
  }
  const Automaton u = universal_automaton(ab());
  if (!universality(u).holds) fail(o, "one-state automaton not universal");
  const Verdict f = universality(bounded_a());
  if (f.holds || !f.witness || member(bounded_a(), *f.witness).accepted ||
      oracle_member(bounded_a(), *f.witness))
    fail(o, "bounded-a automaton universality verdict or counterexample wrong");
  if (o.pass)
    o.detail = std::to_string(refuted) + "/50 refuted with valid witnesses, bounded-a refuted by " +
               format_lasso(*f.witness, ab());
  return o;
}

// 6. expressions
Outcome expression_characterization() {
  Outcome o;
  const auto words = sweep(4, 4);
  const Alphabet sigma = ab();
  const Automaton reference = bounded_a();
  std::vector<bool> bounded_a_verdicts;
  for (const auto& w : words) bounded_a_verdicts.push_back(oracle_member(reference, w));

  const Automaton c = compile_expr(parse_expr("(a+b)* . (b + a^B . b)^w", &sigma), sigma);
  for (std::size_t i = 0; i < words.size(); ++i)
    if (member(c, words[i]).accepted != bounded_a_verdicts[i])
      fail(o, "(a) compiled expression differs on " + format_lasso(words[i], sigma));

  auto round_trip = [&](const Automaton& a, const std::string& name) {
    const Automaton back = compile_expr(extract_expr(a), sigma);
    for (const auto& w : words)
      if (member(back, w).accepted != oracle_member(a, w))
        fail(o, "(b) round trip of " + name + " differs on " + format_lasso(w, sigma));
  };
  round_trip(reference, "bounded-a automaton");
  Rng rng(0xE4);
  int produced = 0;
  while (produced < 20) {
    const Automaton a = random_nfb(rng, 3);
    if (is_empty(a).holds) continue;
    round_trip(a, "random automaton " + std::to_string(produced));
    ++produced;
  }

  try {
    parse_expr("(a*)^w");
    fail(o, "(c) star under ^w accepted");
  } catch (const StarFreeViolation&) {
  }
  if (o.pass) o.detail = "(a) " + std::to_string(words.size()) + " lassos, (b) 21 round trips, (c) rejected";
  return o;
}

// 7. distance functions
Outcome distance_suite() {
  Outcome o;
  const ExtendedNat inf = ExtendedNat::infinity();
  auto expect = [&](const std::string& what, ExtendedNat got, ExtendedNat want) {
    if (got != want) fail(o, what + ": got " + got.str() + ", want " + want.str());
  };
  const Alphabet rxg({"r", "x", "g"});
  const IdSet b(2, {1}), a(2, {0});
  const LassoWord ab_w = lasso("(ab)"), a_w = lasso("(a)"), abb = lasso("ab(b)");
  expect("next (ab) F={b} k=0", next_distance(PeriodicSequence(ab_w), b, 0), ExtendedNat(1));
  expect("next (ab) F={b} k=1", next_distance(PeriodicSequence(ab_w), b, 1), ExtendedNat(0));
  for (std::size_t k = 0; k < 4; ++k)
    expect("next (a) F={b}", next_distance(PeriodicSequence(a_w), b, k), inf);
  expect("next ab(b) F={a} k=1", next_distance(PeriodicSequence(abb), a, 1), inf);

  const std::vector<StreettPair> rg{{IdSet(3, {0}), IdSet(3, {2})}};
  const LassoWord r_g = parse_lasso("r(g)", rxg), r_x = parse_lasso("r(x)", rxg);
  const LassoWord x_only = parse_lasso("(x)", rxg), rx = parse_lasso("(rx)", rxg);
  expect("streett w_k not a request", streett_distance(PeriodicSequence(x_only), rg, 0), ExtendedNat(0));
  expect("streett r(g) k=0", streett_distance(PeriodicSequence(r_g), rg, 0), ExtendedNat(1));
  expect("streett r(x) k=0", streett_distance(PeriodicSequence(r_x), rg, 0), inf);
  expect("streett no pairs", streett_distance(PeriodicSequence(r_x), {}, 0), ExtendedNat(0));

  const Alphabet xy({"x", "y"});
  const LassoWord xyw = parse_lasso("(xy)", xy), xw = parse_lasso("(x)", xy);
  const std::vector<unsigned> p{1, 0};
  expect("parity even priority", parity_distance(PeriodicSequence(xyw), p, 1), ExtendedNat(0));
  expect("parity (xy) k=0", parity_distance(PeriodicSequence(xyw), p, 0), ExtendedNat(1));
  for (std::size_t k = 0; k < 3; ++k)
    expect("parity (x) p(x)=1", parity_distance(PeriodicSequence(xw), {1, 1}, k), inf);

  expect("limsup (ab) FinBuchi F={b}",
         limsup_distance(PeriodicSequence(ab_w), Acceptance::buchi(b)), ExtendedNat(1));
  expect("limsup r(g) Streett",
         limsup_distance(PeriodicSequence(r_g), Acceptance::streett(rg)), ExtendedNat(0));
  const std::vector<StreettPair> r_never{{IdSet(3, {0}), IdSet(3)}};
  expect("limsup (rx) R={r} G={}",
         limsup_distance(PeriodicSequence(rx), Acceptance::streett(r_never)), inf);
  expect("inf of the empty set", ExtendedNat::infinity(), inf);
  if (o.pass) o.detail = "all examples exact";
  return o;
}

Automaton big_conj(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Transition> ts;
  ts.reserve(3 * n);
  for (State q = 0; q < n; ++q) {
    ts.push_back({q, 0, static_cast<State>((q + 1) % n)});
    for (int j = 0; j < 2; ++j)
      ts.push_back({q, static_cast<Symbol>(j), static_cast<State>(pick(rng, 0, n - 1))});
  }
  IdSet good(n), bad(n);
  for (State q = 0; q < n; ++q) {
    if (q % 97 == 0) good.insert(q);
    if (coin(rng, 0.3)) bad.insert(q);
  }
  return Automaton(ab(), n, {0}, std::move(ts), Acceptance::conj(good, bad));
}

double time_once(const Automaton& a) {
  const auto t0 = Clock::now();
  volatile bool empty = emptiness_conj(a).holds;
  (void)empty;
  return seconds_since(t0);
}

// Best of several rounds, alternating the two sizes so that a noisy stretch
// of machine time hits both.
std::pair<double, double> time_emptiness(const Automaton& a, const Automaton& b) {
  double best_a = 1e9, best_b = 1e9;
  for (int i = 0; i < 15; ++i) {
    best_a = std::min(best_a, time_once(a));
    best_b = std::min(best_b, time_once(b));
  }
  return {best_a, best_b};
}

// 8. linear-time emptiness
Outcome emptiness_scaling() {
  Outcome o;
  const Automaton small = big_conj(100'000, 8);
  const Automaton large = big_conj(200'000, 8);
  const auto [t1, t2] = time_emptiness(small, large);
  char buf[128];
  std::snprintf(buf, sizeof buf, "100k: %.3fs (%zu transitions), 200k: %.3fs, ratio %.2f", t1,
                small.transitions().size(), t2, t2 / t1);
  o.detail = buf;
  if (small.transitions().size() < 290'000) fail(o, std::string("instance too small; ") + buf);
  if (t1 >= 1.0) fail(o, std::string("too slow; ") + buf);
  if (t2 / t1 >= 3.0) fail(o, std::string("superlinear; ") + buf);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bounded-a automaton membership", 1.0, bounded_a_members},
      {2, "Conj emptiness, finitary = classical", 5.0, conj_coincidence},
      {3, "lasso coincidence (Buchi, parity, Streett)", 30.0, lasso_coincidence},
      {4, "construction soundness vs oracle", 60.0, construction_soundness},
      {5, "inclusion and universality witnesses", 60.0, inclusion_witnesses},
      {6, "expression characterization", 120.0, expression_characterization},
      {7, "distance functions", 1.0, distance_suite},
      {8, "emptiness performance smoke", 30.0, emptiness_scaling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= c.limit_seconds) fail(o, "time limit exceeded");
    std::printf("[%s] criterion %d: %s -- %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
