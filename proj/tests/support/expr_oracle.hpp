#pragma once

// Direct word matching against expression semantics, independent of the
// automaton compiler. A B-expression is read as a set of finite words with
// M^B matching one or more M-words; a lasso u v^w is in L . M^w when it
// splits into an L-prefix and infinitely many nonempty M-words. Prefix and
// segment lengths are capped, so a miss can mean "beyond the caps".

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "fota/expressions.hpp"
#include "fota/lasso.hpp"

namespace fota::testing {

class WordMatcher {
 public:
  WordMatcher(const std::vector<Symbol>& word, const Alphabet& alphabet)
      : w_(word), sigma_(alphabet) {}

  bool matches(const ExprPtr& e, std::size_t i, std::size_t j) {
    const auto key = std::make_tuple(e.get(), std::size_t{0}, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    memo_[key] = false;  // cuts epsilon recursion in star and ^B
    bool r = false;
    using K = Expr::Kind;
    switch (e->kind) {
      case K::Empty: r = false; break;
      case K::Epsilon: r = i == j; break;
      case K::Symbol: r = j == i + 1 && sigma_.name(w_[i]) == e->symbol; break;
      case K::Concat: r = seq(e, 0, i, j); break;
      case K::Union:
        for (const auto& c : e->children) r = r || matches(c, i, j);
        break;
      case K::Star:
        r = i == j;
        for (std::size_t k = i + 1; k <= j && !r; ++k)
          r = matches(e->children[0], i, k) && matches(e, k, j);
        break;
      case K::BPow:
        for (std::size_t k = i; k <= j && !r; ++k)
          r = matches(e->children[0], i, k) && (k == j || (k > i && matches(e, k, j)));
        break;
    }
    memo_[key] = r;
    return r;
  }

 private:
  bool seq(const ExprPtr& e, std::size_t c, std::size_t i, std::size_t j) {
    if (c == e->children.size()) return i == j;
    const auto key = std::make_tuple(e.get(), c + 1, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = false;
    for (std::size_t k = i; k <= j && !r; ++k)
      r = matches(e->children[c], i, k) && seq(e, c + 1, k, j);
    memo_[key] = r;
    return r;
  }

  const std::vector<Symbol>& w_;
  const Alphabet& sigma_;
  std::map<std::tuple<const Expr*, std::size_t, std::size_t, std::size_t>, bool> memo_;
};

struct ExprOracleCaps {
  std::size_t extra_prefix_periods = 6;
  std::size_t max_segment = 16;
};

inline bool expr_member(const OmegaBExpr& e, const LassoWord& w, const Alphabet& sigma,
                        const ExprOracleCaps& caps = {}) {
  const std::size_t u = w.spoke.size(), v = w.cycle.size();
  const std::size_t max_prefix = u + caps.extra_prefix_periods * v + 6;
  std::vector<Symbol> letters;
  for (std::size_t k = 0; k < max_prefix + caps.max_segment + u + v; ++k)
    letters.push_back(w.at(k));
  auto norm = [&](std::size_t k) { return k < u ? k : u + (k - u) % v; };

  for (const auto& b : e.branches) {
    WordMatcher m(letters, sigma);
    // positions in normal form: 0..u+v-1; edge n -> norm(n+len) when the
    // segment at n of that length is a nonempty M-word
    const std::size_t nodes = u + v;
    std::vector<std::vector<std::size_t>> next(nodes);
    for (std::size_t n = 0; n < nodes; ++n)
      for (std::size_t len = 1; len <= caps.max_segment; ++len)
        if (m.matches(b.body, n, n + len)) next[n].push_back(norm(n + len));
    // nodes on a cycle
    std::vector<bool> cyclic(nodes, false);
    for (std::size_t s = 0; s < nodes; ++s) {
      std::vector<bool> seen(nodes, false);
      std::vector<std::size_t> stack(next[s].begin(), next[s].end());
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (seen[x]) continue;
        seen[x] = true;
        for (auto y : next[x]) stack.push_back(y);
      }
      cyclic[s] = seen[s];
    }
    std::vector<bool> good(nodes, false);  // can reach a cycle
    for (std::size_t s = 0; s < nodes; ++s) {
      std::vector<bool> seen(nodes, false);
      std::vector<std::size_t> stack{s};
      while (!stack.empty() && !good[s]) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (seen[x]) continue;
        seen[x] = true;
        if (cyclic[x]) good[s] = true;
        for (auto y : next[x]) stack.push_back(y);
      }
    }
    for (std::size_t p = 0; p <= max_prefix; ++p)
      if (good[norm(p)] && m.matches(b.prefix, 0, p)) return true;
  }
  return false;
}

/// Nonempty words of length <= max_len in the B-expression's word set.
inline std::vector<std::vector<Symbol>> words_of(const ExprPtr& m, const Alphabet& sigma,
                                                 std::size_t max_len) {
  std::vector<std::vector<Symbol>> out;
  const std::size_t k = sigma.size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Symbol> w(len, 0);
    while (true) {
      WordMatcher matcher(w, sigma);
      if (matcher.matches(m, 0, len)) out.push_back(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == k) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return out;
}

}  // namespace fota::testing
