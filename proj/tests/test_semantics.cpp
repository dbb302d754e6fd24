#include <gtest/gtest.h>

#include "fota/constructions.hpp"
#include "fota/error.hpp"
#include "fota/oracle.hpp"
#include "fota/semantics.hpp"
#include "support/generators.hpp"

using namespace fota;
using namespace fota::testing;

namespace {

const ExtendedNat kInf = ExtendedNat::infinity();

// The word spelled out: 3 * (|u| + |v|) letters.
std::vector<Symbol> unroll(const LassoWord& w) {
  std::vector<Symbol> out;
  const std::size_t len = 3 * (w.spoke.size() + w.cycle.size());
  for (std::size_t k = 0; k < len; ++k) out.push_back(w.at(k));
  return out;
}

template <class Pred>
ExtendedNat scan(const std::vector<Symbol>& letters, std::size_t k, Pred good) {
  for (std::size_t j = k; j < letters.size(); ++j)
    if (good(letters[j])) return ExtendedNat(j - k);
  return kInf;
}

bool inf_meets(const LassoWord& w, const IdSet& s) {
  for (Symbol x : w.cycle)
    if (s.contains(x)) return true;
  return false;
}

}  // namespace

// ------------------------------------------------------------- distances

TEST(NextDistance, Examples) {
  const LassoWord ab_w = lasso("(ab)"), a_w = lasso("(a)"), abb = lasso("ab(b)");
  const IdSet b(2, {1}), a(2, {0});
  EXPECT_EQ(next_distance(PeriodicSequence(ab_w), b, 0), ExtendedNat(1));
  EXPECT_EQ(next_distance(PeriodicSequence(ab_w), b, 1), ExtendedNat(0));
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(next_distance(PeriodicSequence(a_w), b, k), kInf);
  EXPECT_EQ(next_distance(PeriodicSequence(abb), a, 1), kInf);
  EXPECT_EQ(next_distance(PeriodicSequence(abb), a, 0), ExtendedNat(0));
}

TEST(StreettDistance, Examples) {
  const Alphabet rxg({"r", "x", "g"});
  const std::vector<StreettPair> rg{{IdSet(3, {0}), IdSet(3, {2})}};
  const LassoWord r_g = parse_lasso("r(g)", rxg), r_x = parse_lasso("r(x)", rxg);
  const LassoWord xs = parse_lasso("(x)", rxg);
  EXPECT_EQ(streett_distance(PeriodicSequence(xs), rg, 0), ExtendedNat(0));
  EXPECT_EQ(streett_distance(PeriodicSequence(r_g), rg, 0), ExtendedNat(1));
  EXPECT_EQ(streett_distance(PeriodicSequence(r_x), rg, 0), kInf);
  EXPECT_EQ(streett_distance(PeriodicSequence(r_x), {}, 0), ExtendedNat(0));
  // a request that is also a grant is answered at distance 0
  const std::vector<StreettPair> both{{IdSet(3, {0}), IdSet(3, {0})}};
  EXPECT_EQ(streett_distance(PeriodicSequence(r_x), both, 0), ExtendedNat(0));
}

TEST(ParityDistance, Examples) {
  const Alphabet xy({"x", "y"});
  const LassoWord xyw = parse_lasso("(xy)", xy), xw = parse_lasso("(x)", xy);
  const std::vector<unsigned> p{1, 0};
  EXPECT_EQ(parity_distance(PeriodicSequence(xyw), p, 1), ExtendedNat(0));
  EXPECT_EQ(parity_distance(PeriodicSequence(xyw), p, 0), ExtendedNat(1));
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_EQ(parity_distance(PeriodicSequence(xw), {1, 1}, k), kInf);
  // an even priority above p(w_k) does not count
  EXPECT_EQ(parity_distance(PeriodicSequence(xyw), {1, 2}, 0), kInf);
}

TEST(LimsupDistance, Examples) {
  const Alphabet rxg({"r", "x", "g"});
  const LassoWord ab_w = lasso("(ab)");
  EXPECT_EQ(limsup_distance(PeriodicSequence(ab_w), Acceptance::buchi(IdSet(2, {1}))),
            ExtendedNat(1));
  const LassoWord r_g = parse_lasso("xr(g)", rxg), rx = parse_lasso("(rx)", rxg);
  const std::vector<StreettPair> rg{{IdSet(3, {0}), IdSet(3, {2})}};
  EXPECT_EQ(limsup_distance(PeriodicSequence(r_g), Acceptance::streett(rg)), ExtendedNat(0));
  EXPECT_EQ(limsup_distance(PeriodicSequence(rx),
                            Acceptance::streett({{IdSet(3, {0}), IdSet(3)}})),
            kInf);
  // spoke distances never matter
  const LassoWord spoke_only = lasso("aaaa(b)");
  EXPECT_EQ(limsup_distance(PeriodicSequence(spoke_only), Acceptance::buchi(IdSet(2, {1}))),
            ExtendedNat(0));
  EXPECT_THROW(limsup_distance(PeriodicSequence(ab_w), Acceptance::co_buchi(IdSet(2))),
               PreconditionError);
}

TEST(Distances, AgreeWithNaiveScanner) {
  Rng rng(51);
  const auto words = oracle::enumerate_lassos(3, 3, 4, {.max_lassos = 100'000});
  for (const auto& w : words) {
    const auto letters = unroll(w);
    const PeriodicSequence seq(w);
    const IdSet f = random_set(rng, 3);
    std::vector<unsigned> p(3);
    for (auto& x : p) x = static_cast<unsigned>(pick(rng, 0, 4));
    std::vector<StreettPair> pairs;
    for (std::size_t j = 0, d = pick(rng, 0, 2); j < d; ++j)
      pairs.push_back({random_set(rng, 3), random_set(rng, 3)});
    for (std::size_t k = 0; k < w.spoke.size() + w.cycle.size(); ++k) {
      ASSERT_EQ(next_distance(seq, f, k),
                scan(letters, k, [&](Symbol x) { return f.contains(x); }));
      const unsigned pk = p[letters[k]];
      ASSERT_EQ(parity_distance(seq, p, k),
                scan(letters, k, [&](Symbol x) { return p[x] % 2 == 0 && p[x] <= pk; }));
      ExtendedNat want(0);
      for (const auto& pr : pairs)
        if (pr.request.contains(letters[k]))
          want = std::max(want, scan(letters, k, [&](Symbol x) { return pr.grant.contains(x); }));
      ASSERT_EQ(streett_distance(seq, pairs, k), want);
    }
  }
}

TEST(Distances, ParityEqualsStreettEncodingPointwise) {
  Rng rng(52);
  const auto words = oracle::enumerate_lassos(3, 2, 4, {.max_lassos = 100'000});
  for (int round = 0; round < 30; ++round) {
    std::vector<unsigned> p(3);
    for (auto& x : p) x = static_cast<unsigned>(pick(rng, 0, 5));
    const auto pairs = encode_parity_as_streett(p);
    for (const auto& w : words) {
      const PeriodicSequence seq(w);
      for (std::size_t k = 0; k < w.spoke.size() + 2 * w.cycle.size(); ++k)
        ASSERT_EQ(parity_distance(seq, p, k), streett_distance(seq, pairs, k));
    }
  }
}

// Bounded limsup holds exactly when the classical condition holds on Inf(w).
TEST(LimsupDistance, FiniteIffClassicalOnInf) {
  const auto words = oracle::enumerate_lassos(2, 2, 4, {.max_lassos = 100'000});
  std::vector<IdSet> subsets;
  for (std::uint32_t m = 0; m < 4; ++m) {
    IdSet s(2);
    for (std::uint32_t i = 0; i < 2; ++i)
      if (m & (1u << i)) s.insert(i);
    subsets.push_back(s);
  }
  std::vector<std::vector<StreettPair>> configs{{}};
  for (const auto& r : subsets)
    for (const auto& g : subsets) configs.push_back({{r, g}});
  for (const auto& r1 : subsets)
    for (const auto& g1 : subsets)
      for (const auto& r2 : subsets)
        for (const auto& g2 : subsets) configs.push_back({{r1, g1}, {r2, g2}});

  for (const auto& w : words) {
    const PeriodicSequence seq(w);
    for (const auto& pairs : configs) {
      bool classical = true;
      for (const auto& pr : pairs)
        if (inf_meets(w, pr.request) && !inf_meets(w, pr.grant)) classical = false;
      ASSERT_EQ(limsup_distance(seq, Acceptance::streett(pairs)).is_finite(), classical);
    }
    for (const auto& f : subsets)
      ASSERT_EQ(limsup_distance(seq, Acceptance::buchi(f)).is_finite(), inf_meets(w, f));
    for (unsigned p0 = 0; p0 < 4; ++p0)
      for (unsigned p1 = 0; p1 < 4; ++p1) {
        const std::vector<unsigned> p{p0, p1};
        unsigned lowest = 99;
        for (Symbol x : w.cycle) lowest = std::min(lowest, p[x]);
        ASSERT_EQ(limsup_distance(seq, Acceptance::parity(p)).is_finite(), lowest % 2 == 0);
      }
  }
}

// ------------------------------------------------------------ accepts_run

TEST(AcceptsRun, Examples) {
  const LassoRun s0{{}, {0}};
  EXPECT_TRUE(accepts_run(s0, Acceptance::buchi(IdSet(2, {0}), Mode::Classical)));
  EXPECT_TRUE(accepts_run(s0, Acceptance::buchi(IdSet(2, {0}))));
  const LassoRun two{{}, {0, 1}};
  EXPECT_FALSE(accepts_run(two, Acceptance::parity({1, 2}, Mode::Classical)));
  EXPECT_FALSE(accepts_run(two, Acceptance::parity({1, 2})));
  EXPECT_TRUE(accepts_run(two, Acceptance::buchi(IdSet(2, {0}))));
  EXPECT_EQ(limsup_distance(PeriodicSequence(two), Acceptance::buchi(IdSet(2, {0}))),
            ExtendedNat(1));
  EXPECT_FALSE(accepts_run(two, Acceptance::co_buchi(IdSet(2, {1}))));
  EXPECT_TRUE(accepts_run(LassoRun{{1}, {0}}, Acceptance::co_buchi(IdSet(2, {1}))));
  EXPECT_TRUE(accepts_run(LassoRun{{1}, {0}}, Acceptance::conj(IdSet(2, {0}), IdSet(2, {1}))));
  EXPECT_FALSE(accepts_run(two, Acceptance::conj(IdSet(2, {0}), IdSet(2, {1}))));
  EXPECT_TRUE(accepts_run(two, Acceptance::streett({})));
}

// ---------------------------------------------------------------- member

TEST(Member, BoundedA) {
  const Automaton a = bounded_a();
  EXPECT_TRUE(member(a, lasso("(ab)")).accepted);
  EXPECT_TRUE(member(a, lasso("(b)")).accepted);
  EXPECT_TRUE(member(a, lasso("ab(b)")).accepted);
  EXPECT_FALSE(member(a, lasso("(a)")).accepted);
  EXPECT_FALSE(member(a, lasso("b(a)")).accepted);
  // frozen from an oracle sweep: only the 16 lassos with cycle a are rejected
  std::size_t accepted = 0;
  const auto words = sweep(4, 4);
  for (const auto& w : words) accepted += member(a, w).accepted ? 1 : 0;
  EXPECT_EQ(words.size(), 352u);
  EXPECT_EQ(accepted, 336u);
}

TEST(Member, Errors) {
  const Automaton eps(ab(), 2, {0}, {{0, kEpsilon, 1}}, Acceptance::buchi(IdSet(2)));
  EXPECT_THROW(member(eps, lasso("(a)")), PreconditionError);
  EXPECT_THROW(member(bounded_a(), LassoWord{{}, {7}}), InputError);
}

TEST(Member, NoInfiniteRunMeansReject) {
  const Automaton a(ab(), 1, {0}, {}, Acceptance::buchi(IdSet(1, {0})));
  for (const auto& w : sweep(2, 2)) EXPECT_FALSE(member(a, w).accepted);
}

TEST(Member, WitnessRunsAreValid) {
  Rng rng(61);
  const auto words = sweep(3, 3);
  for (AcceptanceKind kind : {AcceptanceKind::Buchi, AcceptanceKind::CoBuchi,
                              AcceptanceKind::Parity, AcceptanceKind::Streett,
                              AcceptanceKind::Conj}) {
    for (int i = 0; i < 20; ++i) {
      const Automaton a = random_automaton(rng, kind, 5);
      for (const auto& w : words) {
        const Membership m = member(a, w);
        if (!m.accepted) continue;
        ASSERT_TRUE(m.run);
        ASSERT_TRUE(is_run_on(a, w, *m.run)) << to_string(kind);
        ASSERT_TRUE(accepts_run(*m.run, a.acceptance())) << to_string(kind);
        ASSERT_TRUE(accepts_run(*m.run, with_mode(a, Mode::Classical).acceptance()));
      }
    }
  }
}

TEST(Member, MatchesOracle) {
  Rng rng(62);
  const auto words = sweep(3, 3);
  for (AcceptanceKind kind : {AcceptanceKind::Buchi, AcceptanceKind::CoBuchi,
                              AcceptanceKind::Parity, AcceptanceKind::Streett,
                              AcceptanceKind::Conj}) {
    for (Mode mode : {Mode::Finitary, Mode::Classical}) {
      for (int i = 0; i < 20; ++i) {
        const Automaton a = random_automaton(rng, kind, 5, mode);
        for (const auto& w : words)
          ASSERT_EQ(member(a, w).accepted, oracle::member_oracle(a, w))
              << to_string(kind) << " instance " << i << " " << format_lasso(w, ab());
      }
    }
  }
}

// Finitary and classical variants accept the same lasso words.
TEST(LassoCoincidence, OracleAgreesAcrossModes) {
  Rng rng(63);
  const auto words = sweep(4, 4);
  for (AcceptanceKind kind : {AcceptanceKind::Buchi, AcceptanceKind::CoBuchi,
                              AcceptanceKind::Parity, AcceptanceKind::Streett,
                              AcceptanceKind::Conj}) {
    for (int i = 0; i < 15; ++i) {
      const Automaton fin = random_automaton(rng, kind, 5);
      const Automaton cl = with_mode(fin, Mode::Classical);
      for (const auto& w : words)
        ASSERT_EQ(oracle::member_oracle(fin, w), oracle::member_oracle(cl, w))
            << to_string(kind) << " " << format_lasso(w, ab());
    }
  }
}

TEST(IsRunOn, RejectsBrokenRuns) {
  const Automaton a = bounded_a();
  EXPECT_TRUE(is_run_on(a, lasso("(ab)"), LassoRun{{1}, {1, 0}}));
  EXPECT_FALSE(is_run_on(a, lasso("(ab)"), LassoRun{{1}, {0, 1}}));
  EXPECT_FALSE(is_run_on(a, lasso("(ab)"), LassoRun{{0}, {1, 0}}));  // wrong start
  EXPECT_FALSE(is_run_on(a, lasso("(a)"), LassoRun{{}, {0}}));
}
