#include "fota/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "fota/error.hpp"

namespace fota::oracle {

std::vector<LassoWord> enumerate_lassos(std::size_t alphabet_size,
                                        std::size_t max_u, std::size_t max_v,
                                        const Limits& limits) {
  if (max_v < 1) throw InputError("enumerate_lassos: max_v must be at least 1");
  auto words_of = [&](std::size_t len) {
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> w(len, 0);
    if (alphabet_size == 0) {
      if (len == 0) out.push_back(w);
      return out;
    }
    while (true) {
      out.push_back(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == alphabet_size) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
    return out;
  };

  std::set<LassoWord> seen;
  for (std::size_t lu = 0; lu <= max_u; ++lu)
    for (const auto& u : words_of(lu))
      for (std::size_t lv = 1; lv <= max_v; ++lv)
        for (const auto& v : words_of(lv)) {
          seen.insert(canonicalize(LassoWord{u, v}));
          if (seen.size() > limits.max_lassos)
            throw BudgetExceeded("oracle refuses: too many lassos");
        }

  std::vector<LassoWord> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const LassoWord& x, const LassoWord& y) {
    const auto nx = x.spoke.size() + x.cycle.size();
    const auto ny = y.spoke.size() + y.cycle.size();
    if (nx != ny) return nx < ny;
    if (x.spoke.size() != y.spoke.size()) return x.spoke.size() < y.spoke.size();
    return x < y;
  });
  return out;
}

namespace {

// ---- acceptance straight from the definitions -------------------------

constexpr std::size_t kNever = static_cast<std::size_t>(-1);

// Unrolls alpha . beta^3 and measures distances at the middle copy of beta,
// where every later id of the run is still within the unrolled window.
class Unrolled {
 public:
  Unrolled(const std::vector<State>& alpha, const std::vector<State>& beta)
      : alpha_len_(alpha.size()), period_(beta.size()) {
    seq_ = alpha;
    for (int r = 0; r < 3; ++r) seq_.insert(seq_.end(), beta.begin(), beta.end());
  }

  template <typename Good>
  std::size_t distance(std::size_t k, Good&& good) const {
    for (std::size_t t = k; t < seq_.size(); ++t)
      if (good(t)) return t - k;
    return kNever;
  }

  // max distance over the middle period; kNever when some distance is
  // unbounded
  template <typename Dist>
  std::size_t limsup(Dist&& dist) const {
    std::size_t worst = 0;
    for (std::size_t k = alpha_len_ + period_; k < alpha_len_ + 2 * period_; ++k) {
      const std::size_t d = dist(k);
      if (d == kNever) return kNever;
      worst = std::max(worst, d);
    }
    return worst;
  }

  State operator[](std::size_t t) const { return seq_[t]; }

 private:
  std::size_t alpha_len_;
  std::size_t period_;
  std::vector<State> seq_;
};

std::size_t buchi_limsup(const Unrolled& run, const IdSet& f) {
  return run.limsup([&](std::size_t k) {
    return run.distance(k, [&](std::size_t t) { return f.contains(run[t]); });
  });
}

bool oracle_accepts(const std::vector<State>& alpha,
                    const std::vector<State>& beta, const Acceptance& acc) {
  std::set<State> inf(beta.begin(), beta.end());
  auto meets = [&](const IdSet& s) {
    for (State q : inf)
      if (s.contains(q)) return true;
    return false;
  };

  bool classical = false;
  switch (acc.kind) {
    case AcceptanceKind::Buchi: classical = meets(acc.accepting); break;
    case AcceptanceKind::CoBuchi: classical = !meets(acc.accepting); break;
    case AcceptanceKind::Parity: {
      unsigned low = ~0u;
      for (State q : inf) low = std::min(low, acc.priorities[q]);
      classical = low % 2 == 0;
      break;
    }
    case AcceptanceKind::Streett:
      classical = true;
      for (const auto& pr : acc.pairs)
        if (meets(pr.request) && !meets(pr.grant)) classical = false;
      break;
    case AcceptanceKind::Conj:
      classical = meets(acc.good) && !meets(acc.bad);
      break;
  }
  if (!acc.finitary()) return classical;

  const Unrolled run(alpha, beta);
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
      return classical && buchi_limsup(run, acc.accepting) != kNever;
    case AcceptanceKind::CoBuchi:
      return buchi_limsup(run, acc.accepting) == kNever;
    case AcceptanceKind::Conj:
      return buchi_limsup(run, acc.good) != kNever &&
             buchi_limsup(run, acc.bad) == kNever;
    case AcceptanceKind::Parity: {
      const auto& p = acc.priorities;
      const std::size_t b = run.limsup([&](std::size_t k) {
        const unsigned here = p[run[k]];
        return run.distance(k, [&](std::size_t t) {
          return p[run[t]] % 2 == 0 && p[run[t]] <= here;
        });
      });
      return classical && b != kNever;
    }
    case AcceptanceKind::Streett: {
      const std::size_t b = run.limsup([&](std::size_t k) {
        std::size_t worst = 0;
        for (const auto& pr : acc.pairs) {
          if (!pr.request.contains(run[k])) continue;
          const std::size_t d = run.distance(
              k, [&](std::size_t t) { return pr.grant.contains(run[t]); });
          if (d == kNever) return kNever;
          worst = std::max(worst, d);
        }
        return worst;
      });
      return classical && b != kNever;
    }
  }
  return false;
}

// ---- run search ---------------------------------------------------------

struct Edge {
  std::uint32_t to;
  bool letter;
};

struct Cycle {
  std::vector<std::uint32_t> nodes;  // starts at its smallest node
  bool letter = false;
};

class RunSearch {
 public:
  RunSearch(const Automaton& a, const LassoWord& w, const Limits& limits)
      : a_(a), limits_(limits) {
    len_ = w.spoke.size() + w.cycle.size();
    const std::size_t n = a.num_states() * len_;
    adj_.resize(n);
    for (State q = 0; q < a.num_states(); ++q)
      for (std::size_t i = 0; i < len_; ++i) {
        const Symbol s = i < w.spoke.size() ? w.spoke[i] : w.cycle[i - w.spoke.size()];
        const std::size_t next = i + 1 < len_ ? i + 1 : w.spoke.size();
        for (const auto& t : a.transitions()) {
          if (t.from != q) continue;
          if (t.label == s) adj_[id(q, i)].push_back({id(t.to, next), true});
          if (t.label == kEpsilon) adj_[id(q, i)].push_back({id(t.to, i), false});
        }
      }
    reach();
  }

  bool accepted() {
    enumerate_simple_cycles();
    for (const auto& c : cycles_)
      if (c.letter && try_walk(c.nodes)) return true;
    const bool unions = a_.acceptance().kind == AcceptanceKind::Streett ||
                        a_.has_epsilon();
    return unions && try_unions();
  }

 private:
  std::uint32_t id(State q, std::size_t i) const {
    return static_cast<std::uint32_t>(q * len_ + i);
  }
  State state(std::uint32_t v) const { return static_cast<State>(v / len_); }

  void reach() {
    const std::size_t n = adj_.size();
    parent_.assign(n, ~0u);
    reached_.assign(n, 0);
    std::deque<std::uint32_t> queue;
    for (State q : a_.initial()) {
      const auto v = id(q, 0);
      if (!reached_[v]) {
        reached_[v] = 1;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (const auto& e : adj_[v])
        if (!reached_[e.to]) {
          reached_[e.to] = 1;
          parent_[e.to] = v;
          queue.push_back(e.to);
        }
    }
  }

  void enumerate_simple_cycles() {
    const std::size_t n = adj_.size();
    std::vector<std::uint32_t> path;
    std::vector<char> on_path(n, 0);
    std::vector<char> letters;
    for (std::uint32_t s = 0; s < n; ++s) {
      if (!reached_[s]) continue;
      path = {s};
      on_path[s] = 1;
      letters.clear();
      dfs(s, s, path, on_path, letters);
      on_path[s] = 0;
    }
  }

  void dfs(std::uint32_t start, std::uint32_t v, std::vector<std::uint32_t>& path,
           std::vector<char>& on_path, std::vector<char>& letters) {
    for (const auto& e : adj_[v]) {
      if (e.to == start) {
        Cycle c;
        c.nodes = path;
        c.letter = e.letter ||
                   std::any_of(letters.begin(), letters.end(), [](char x) { return x; });
        cycles_.push_back(std::move(c));
        if (cycles_.size() > limits_.max_cycles)
          throw BudgetExceeded("oracle refuses: too many cycles");
        continue;
      }
      if (e.to < start || on_path[e.to]) continue;
      on_path[e.to] = 1;
      path.push_back(e.to);
      letters.push_back(e.letter ? 1 : 0);
      dfs(start, e.to, path, on_path, letters);
      letters.pop_back();
      path.pop_back();
      on_path[e.to] = 0;
    }
  }

  // Evaluates the run that follows the BFS prefix to walk[0] and then
  // repeats the closed walk.
  bool try_walk(const std::vector<std::uint32_t>& walk) {
    std::vector<State> alpha;
    for (std::uint32_t x = parent_[walk[0]]; x != ~0u; x = parent_[x])
      alpha.push_back(state(x));
    std::reverse(alpha.begin(), alpha.end());
    std::vector<State> beta;
    for (auto v : walk) beta.push_back(state(v));
    return oracle_accepts(alpha, beta, a_.acceptance());
  }

  // Strongly connected unions of simple cycles sharing nodes. The closed
  // walk splices every member cycle in at a shared node.
  bool try_unions() {
    struct Group {
      std::vector<std::uint32_t> walk;
      std::set<std::uint32_t> nodes;
      bool letter;
    };
    std::set<std::pair<std::set<std::uint32_t>, bool>> seen;
    std::deque<Group> work;
    for (const auto& c : cycles_) {
      Group g{c.nodes, {c.nodes.begin(), c.nodes.end()}, c.letter};
      if (seen.insert({g.nodes, g.letter}).second) work.push_back(std::move(g));
    }
    while (!work.empty()) {
      Group g = std::move(work.front());
      work.pop_front();
      if (g.letter && try_walk(g.walk)) return true;
      for (const auto& c : cycles_) {
        auto it = std::find_if(c.nodes.begin(), c.nodes.end(),
                               [&](std::uint32_t v) { return g.nodes.count(v); });
        if (it == c.nodes.end()) continue;
        Group h = g;
        bool grows = !h.letter && c.letter;
        for (auto v : c.nodes) grows = h.nodes.insert(v).second || grows;
        if (!grows) continue;
        h.letter = h.letter || c.letter;
        if (!seen.insert({h.nodes, h.letter}).second) continue;
        // rotate c to start at the shared node and splice it in
        std::vector<std::uint32_t> rot(it, c.nodes.end());
        rot.insert(rot.end(), c.nodes.begin(), it);
        auto at = std::find(h.walk.begin(), h.walk.end(), *it);
        h.walk.insert(at, rot.begin(), rot.end());
        if (seen.size() > limits_.max_cycles)
          throw BudgetExceeded("oracle refuses: too many cycle unions");
        work.push_back(std::move(h));
      }
    }
    return false;
  }

  const Automaton& a_;
  const Limits& limits_;
  std::size_t len_ = 0;
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::uint32_t> parent_;
  std::vector<char> reached_;
  std::vector<Cycle> cycles_;
};

}  // namespace

bool member_oracle(const Automaton& a, const LassoWord& w, const Limits& limits) {
  if (w.cycle.empty()) throw InputError("lasso cycle must be nonempty");
  for (Symbol s : w.spoke)
    if (s >= a.alphabet().size()) throw InputError("lasso symbol not in alphabet");
  for (Symbol s : w.cycle)
    if (s >= a.alphabet().size()) throw InputError("lasso symbol not in alphabet");
  if (a.num_states() > limits.max_states)
    throw BudgetExceeded("oracle refuses: automaton has " +
                         std::to_string(a.num_states()) + " states");
  RunSearch search(a, w, limits);
  return search.accepted();
}

EquivReport check_equiv(const Automaton& a, const Automaton& b,
                        std::size_t max_u, std::size_t max_v,
                        const Limits& limits) {
  if (!(a.alphabet() == b.alphabet()))
    throw InputError("check_equiv: alphabet mismatch");
  EquivReport report;
  for (const auto& w : enumerate_lassos(a.alphabet().size(), max_u, max_v, limits)) {
    ++report.checked;
    if (member_oracle(a, w, limits) != member_oracle(b, w, limits))
      report.disagreements.push_back(w);
  }
  return report;
}

}  // namespace fota::oracle
