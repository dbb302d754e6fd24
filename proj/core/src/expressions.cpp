#include "fota/expressions.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "fota/constructions.hpp"
#include "fota/error.hpp"
#include "fota/structure.hpp"

namespace fota {

using Kind = Expr::Kind;

// ===== AST ==================================================================

namespace expr {

namespace {

ExprPtr leaf(Kind k, std::string name = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->symbol = std::move(name);
  return e;
}

ExprPtr node(Kind k, std::vector<ExprPtr> children) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->children = std::move(children);
  return e;
}

std::vector<ExprPtr> flatten(Kind k, std::vector<ExprPtr> parts) {
  std::vector<ExprPtr> out;
  for (auto& p : parts) {
    if (p->kind == k)
      out.insert(out.end(), p->children.begin(), p->children.end());
    else
      out.push_back(std::move(p));
  }
  return out;
}

ExprPtr nary(Kind k, std::vector<ExprPtr> parts, Kind unit) {
  parts = flatten(k, std::move(parts));
  if (parts.empty()) return leaf(unit);
  if (parts.size() == 1) return parts.front();
  return node(k, std::move(parts));
}

}  // namespace

ExprPtr empty() { return leaf(Kind::Empty); }
ExprPtr epsilon() { return leaf(Kind::Epsilon); }
ExprPtr symbol(std::string name) { return leaf(Kind::Symbol, std::move(name)); }
ExprPtr concat(std::vector<ExprPtr> parts) {
  return nary(Kind::Concat, std::move(parts), Kind::Epsilon);
}
ExprPtr alt(std::vector<ExprPtr> parts) {
  return nary(Kind::Union, std::move(parts), Kind::Empty);
}
ExprPtr star(ExprPtr e) { return node(Kind::Star, {std::move(e)}); }
ExprPtr bpow(ExprPtr e) { return node(Kind::BPow, {std::move(e)}); }

ExprPtr concat_s(std::vector<ExprPtr> parts) {
  std::vector<ExprPtr> kept;
  for (auto& p : flatten(Kind::Concat, std::move(parts))) {
    if (p->kind == Kind::Empty) return empty();
    if (p->kind != Kind::Epsilon) kept.push_back(std::move(p));
  }
  return concat(std::move(kept));
}

ExprPtr alt_s(std::vector<ExprPtr> parts) {
  std::vector<ExprPtr> kept;
  for (auto& p : flatten(Kind::Union, std::move(parts))) {
    if (p->kind == Kind::Empty) continue;
    if (std::any_of(kept.begin(), kept.end(),
                    [&](const ExprPtr& k) { return equal(k, p); }))
      continue;
    kept.push_back(std::move(p));
  }
  return alt(std::move(kept));
}

ExprPtr star_s(ExprPtr e) {
  if (e->kind == Kind::Empty || e->kind == Kind::Epsilon) return epsilon();
  if (e->kind == Kind::Star) return e;
  return star(std::move(e));
}

ExprPtr bpow_s(ExprPtr e) {
  if (e->kind == Kind::Empty || e->kind == Kind::Epsilon || e->kind == Kind::BPow)
    return e;
  return bpow(std::move(e));
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->symbol != b->symbol ||
      a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

bool contains(const ExprPtr& e, Kind kind) {
  if (e->kind == kind) return true;
  return std::any_of(e->children.begin(), e->children.end(),
                     [&](const ExprPtr& c) { return contains(c, kind); });
}

std::size_t tree_size(const ExprPtr& e) {
  std::size_t n = 1;
  for (const auto& c : e->children) n += tree_size(c);
  return n;
}

bool denotes_empty(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::Empty: return true;
    case Kind::Epsilon:
    case Kind::Symbol: return false;
    case Kind::Concat:
      return std::any_of(e->children.begin(), e->children.end(), denotes_empty);
    case Kind::Union:
      return std::all_of(e->children.begin(), e->children.end(), denotes_empty);
    case Kind::Star: return false;
    case Kind::BPow: return denotes_empty(e->children.front());
  }
  return false;
}

}  // namespace expr

bool operator==(const OmegaBExpr& a, const OmegaBExpr& b) {
  if (a.branches.size() != b.branches.size()) return false;
  for (std::size_t i = 0; i < a.branches.size(); ++i)
    if (!expr::equal(a.branches[i].prefix, b.branches[i].prefix) ||
        !expr::equal(a.branches[i].body, b.branches[i].body))
      return false;
  return true;
}

// ===== parser ===============================================================

namespace {

bool bare_symbol_char(char c) {
  return (std::isalnum(static_cast<unsigned char>(c)) || c == '_') && c != '0' &&
         c != 'e';
}

// Parse tree with source positions; Omega marks a ^w application.
struct PNode {
  enum class K { Empty, Epsilon, Symbol, Concat, Union, Star, BPow, Omega };
  K kind;
  std::size_t pos;
  std::string name;
  std::vector<std::shared_ptr<PNode>> kids;
};
using PPtr = std::shared_ptr<PNode>;

class Parser {
 public:
  Parser(std::string_view text, const Alphabet* alphabet)
      : text_(text), alphabet_(alphabet) {}

  PPtr parse() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    PPtr e = parse_union();
    skip();
    if (!at_end()) throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool starts_atom() {
    skip();
    if (at_end()) return false;
    const char c = peek();
    return c == '(' || c == '0' || c == 'e' || c == '\'' || bare_symbol_char(c);
  }

  static PPtr make(PNode::K k, std::size_t pos, std::vector<PPtr> kids = {}) {
    auto n = std::make_shared<PNode>();
    n->kind = k;
    n->pos = pos;
    n->kids = std::move(kids);
    return n;
  }

  static PPtr nary(PNode::K k, std::size_t pos, std::vector<PPtr> parts) {
    if (parts.size() == 1) return parts.front();
    std::vector<PPtr> flat;
    for (auto& p : parts) {
      if (p->kind == k)
        flat.insert(flat.end(), p->kids.begin(), p->kids.end());
      else
        flat.push_back(p);
    }
    return make(k, pos, std::move(flat));
  }

  PPtr parse_union() {
    const std::size_t start = pos_;
    std::vector<PPtr> parts{parse_concat()};
    while (true) {
      skip();
      if (at_end() || peek() != '+') break;
      ++pos_;
      parts.push_back(parse_concat());
    }
    return nary(PNode::K::Union, start, std::move(parts));
  }

  PPtr parse_concat() {
    skip();
    const std::size_t start = pos_;
    std::vector<PPtr> parts{parse_postfix()};
    while (true) {
      skip();
      if (!at_end() && peek() == '.') {
        ++pos_;
        parts.push_back(parse_postfix());
      } else if (starts_atom()) {
        parts.push_back(parse_postfix());
      } else {
        break;
      }
    }
    return nary(PNode::K::Concat, start, std::move(parts));
  }

  PPtr parse_postfix() {
    PPtr e = parse_atom();
    while (true) {
      skip();
      if (at_end()) break;
      const std::size_t op = pos_;
      if (peek() == '*') {
        ++pos_;
        e = make(PNode::K::Star, op, {e});
      } else if (peek() == '^') {
        ++pos_;
        if (at_end()) throw ParseError("expected 'B' or 'w' after '^'", pos_);
        const char c = peek();
        ++pos_;
        if (c == 'B') e = make(PNode::K::BPow, op, {e});
        else if (c == 'w') e = make(PNode::K::Omega, op, {e});
        else throw ParseError("expected 'B' or 'w' after '^'", pos_ - 1);
      } else {
        break;
      }
    }
    return e;
  }

  PPtr parse_atom() {
    skip();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      PPtr e = parse_union();
      skip();
      if (at_end() || peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (c == '0') {
      ++pos_;
      return make(PNode::K::Empty, start);
    }
    if (c == 'e') {
      ++pos_;
      return make(PNode::K::Epsilon, start);
    }
    std::string name;
    if (c == '\'') {
      ++pos_;
      while (!at_end() && peek() != '\'') name += text_[pos_++];
      if (at_end()) throw ParseError("unterminated quoted symbol", start);
      ++pos_;
      if (name.empty()) throw ParseError("empty quoted symbol", start);
    } else if (bare_symbol_char(c)) {
      name = std::string(1, c);
      ++pos_;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
    }
    if (alphabet_ && !alphabet_->find(name))
      throw ParseError("unknown symbol '" + name + "'", start);
    auto n = make(PNode::K::Symbol, start);
    n->name = std::move(name);
    return n;
  }

  std::string_view text_;
  const Alphabet* alphabet_;
  std::size_t pos_ = 0;
};

ExprPtr to_expr(const PPtr& p, bool b_part) {
  std::vector<ExprPtr> kids;
  for (const auto& k : p->kids) kids.push_back(to_expr(k, b_part));
  switch (p->kind) {
    case PNode::K::Empty: return expr::empty();
    case PNode::K::Epsilon: return expr::epsilon();
    case PNode::K::Symbol: return expr::symbol(p->name);
    case PNode::K::Concat: return expr::concat(std::move(kids));
    case PNode::K::Union: return expr::alt(std::move(kids));
    case PNode::K::Star:
      if (b_part) throw StarFreeViolation(p->pos);
      return expr::star(std::move(kids.front()));
    case PNode::K::BPow:
      if (!b_part) throw ParseError("^B is only allowed inside a ^w body", p->pos);
      return expr::bpow(std::move(kids.front()));
    case PNode::K::Omega:
      throw ParseError("^w must close a top-level branch", p->pos);
  }
  return expr::empty();
}

// Star-free check runs first so that "(a*)^w" reports the violation even
// when other errors would also apply.
void check_star_free(const PPtr& p) {
  if (p->kind == PNode::K::Star) throw StarFreeViolation(p->pos);
  for (const auto& k : p->kids) check_star_free(k);
}

}  // namespace

OmegaBExpr parse_expr(std::string_view text, const Alphabet* alphabet) {
  const PPtr root = Parser(text, alphabet).parse();
  std::vector<PPtr> branches =
      root->kind == PNode::K::Union ? root->kids : std::vector<PPtr>{root};

  OmegaBExpr out;
  for (const auto& b : branches) {
    if (b->kind == PNode::K::Empty) {
      out.branches.push_back({expr::epsilon(), expr::empty()});
      continue;
    }
    std::vector<PPtr> factors =
        b->kind == PNode::K::Concat ? b->kids : std::vector<PPtr>{b};
    const PPtr last = factors.back();
    if (last->kind != PNode::K::Omega)
      throw ParseError("each branch must end with a (M)^w factor", b->pos);
    check_star_free(last->kids.front());
    factors.pop_back();
    std::vector<ExprPtr> prefix;
    for (const auto& f : factors) prefix.push_back(to_expr(f, false));
    out.branches.push_back(
        {expr::concat(std::move(prefix)), to_expr(last->kids.front(), true)});
  }
  return out;
}

// ===== printer ==============================================================

namespace {

std::string symbol_text(const std::string& name) {
  if (name.size() == 1 && bare_symbol_char(name[0])) return name;
  return "'" + name + "'";
}

// precedence levels: 0 union, 1 concat, 2 postfix operand
std::string print_at(const ExprPtr& e, int ctx) {
  switch (e->kind) {
    case Kind::Empty: return "0";
    case Kind::Epsilon: return "e";
    case Kind::Symbol: return symbol_text(e->symbol);
    case Kind::Union: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += " + ";
        s += print_at(e->children[i], 1);
      }
      return ctx > 0 ? "(" + s + ")" : s;
    }
    case Kind::Concat: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += " . ";
        s += print_at(e->children[i], 2);
      }
      return ctx > 1 ? "(" + s + ")" : s;
    }
    case Kind::Star: return print_at(e->children.front(), 2) + "*";
    case Kind::BPow: return print_at(e->children.front(), 2) + "^B";
  }
  return "?";
}

}  // namespace

std::string print_expr(const ExprPtr& e) { return print_at(e, 0); }

std::string print_expr(const OmegaBExpr& e) {
  std::string s;
  for (std::size_t i = 0; i < e.branches.size(); ++i) {
    if (i) s += " + ";
    const auto& b = e.branches[i];
    if (b.prefix->kind == Kind::Epsilon && b.body->kind == Kind::Empty) {
      s += "0";
      continue;
    }
    if (b.prefix->kind != Kind::Epsilon) s += print_at(b.prefix, 1) + " . ";
    s += "(" + print_at(b.body, 0) + ")^w";
  }
  return s;
}

std::vector<std::string> symbols_of(const OmegaBExpr& e) {
  std::set<std::string> names;
  std::vector<ExprPtr> stack;
  for (const auto& b : e.branches) {
    stack.push_back(b.prefix);
    stack.push_back(b.body);
  }
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    if (x->kind == Kind::Symbol) names.insert(x->symbol);
    for (const auto& c : x->children) stack.push_back(c);
  }
  return {names.begin(), names.end()};
}

// ===== compilation ==========================================================

namespace {

// Mutable sequence automaton used while compiling. `label` kEpsilon marks
// an epsilon move; every transition into a state of `fin` ends a coordinate.
struct Seq {
  std::size_t n = 0;
  std::vector<State> initial;
  std::vector<Transition> trans;
  std::vector<char> fin;
  bool block_closed = false;

  State add(bool final_state) {
    fin.push_back(final_state ? 1 : 0);
    return static_cast<State>(n++);
  }
  bool is_final(State q) const { return fin[q] != 0; }

  std::vector<std::vector<std::pair<Symbol, State>>> adjacency() const {
    std::vector<std::vector<std::pair<Symbol, State>>> adj(n);
    for (const auto& t : trans) adj[t.from].emplace_back(t.label, t.to);
    return adj;
  }
};

Seq seq_empty() { return {}; }

Seq seq_loop(Symbol label) {
  Seq s;
  const State f = s.add(true);
  s.initial = {f};
  s.trans.push_back({f, label, f});
  return s;
}

// Every accepting state gets a non-accepting twin with the same outgoing
// moves, so a run may merge consecutive coordinates into one block.
Seq seq_bpow(const Seq& a) {
  if (a.block_closed) return a;
  Seq s = a;
  std::vector<State> twin(a.n, kEpsilon);
  for (State q = 0; q < a.n; ++q)
    if (a.is_final(q)) twin[q] = s.add(false);
  for (const auto& t : a.trans) {
    if (twin[t.to] != kEpsilon) s.trans.push_back({t.from, t.label, twin[t.to]});
    if (twin[t.from] != kEpsilon) {
      s.trans.push_back({twin[t.from], t.label, t.to});
      if (twin[t.to] != kEpsilon)
        s.trans.push_back({twin[t.from], t.label, twin[t.to]});
    }
  }
  s.block_closed = true;
  return s;
}

// Coordinates u_i v_i. P1(p1, r2) reads u_i with A2 parked at r2; entering
// F1 switches to P2(r1, p2), and entering F2 there closes the coordinate.
Seq seq_concat(const Seq& a1, const Seq& a2) {
  const auto adj1 = a1.adjacency();
  const auto adj2 = a2.adjacency();
  using Key = std::tuple<int, State, State>;
  std::map<Key, State> ids;
  std::vector<Key> keys;
  Seq s;
  auto intern = [&](const Key& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
    if (fresh) {
      keys.push_back(k);
      s.add(std::get<0>(k) == 1 && a1.is_final(std::get<1>(k)));
    }
    return it->second;
  };
  for (State p : a1.initial)
    for (State r : a2.initial) s.initial.push_back(intern({1, p, r}));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto [phase, x, y] = keys[i];
    const auto from = static_cast<State>(i);
    if (phase == 1) {
      for (auto [label, to] : adj1[x]) {
        const Key k = a1.is_final(to) ? Key{2, to, y} : Key{1, to, y};
        s.trans.push_back({from, label, intern(k)});
      }
    } else {
      for (auto [label, to] : adj2[y]) {
        const Key k = a2.is_final(to) ? Key{1, x, to} : Key{2, x, to};
        s.trans.push_back({from, label, intern(k)});
      }
    }
  }
  return s;
}

// Accepting states reachable from `from` by a nonempty path that enters an
// accepting state only at its last step: the possible ends of one coordinate.
class NextFinals {
 public:
  explicit NextFinals(const Seq& a) : a_(a), adj_(a.adjacency()) {}

  const std::vector<State>& of(const std::vector<State>& from) {
    auto it = memo_.find(from);
    if (it != memo_.end()) return it->second;
    std::vector<char> seen(a_.n, 0);
    std::deque<State> queue;
    std::set<State> out;
    auto visit = [&](State q) {
      for (auto [label, to] : adj_[q]) {
        if (a_.is_final(to)) {
          out.insert(to);
        } else if (!seen[to]) {
          seen[to] = 1;
          queue.push_back(to);
        }
      }
    };
    for (State q : from) visit(q);
    while (!queue.empty()) {
      const State q = queue.front();
      queue.pop_front();
      visit(q);
    }
    return memo_.emplace(from, std::vector<State>(out.begin(), out.end()))
        .first->second;
  }

 private:
  const Seq& a_;
  std::vector<std::vector<std::pair<Symbol, State>>> adj_;
  std::map<std::vector<State>, std::vector<State>> memo_;
};

// Each coordinate comes from A1 or A2. Guess states G(S1, S2) hold the
// states where either automaton may start its next coordinate; a
// computation state C_k(p, T) runs A_k from p while T collects where the
// other automaton could be after one coordinate of its own.
Seq seq_sum(const Seq& a1, const Seq& a2) {
  const auto adj1 = a1.adjacency();
  const auto adj2 = a2.adjacency();
  NextFinals next1(a1), next2(a2);
  // tag 0: G(A, B); tag 1: C1(p, B); tag 2: C2(p, A)
  using Key = std::tuple<int, State, std::vector<State>, std::vector<State>>;
  std::map<Key, State> ids;
  std::vector<Key> keys;
  Seq s;
  auto intern = [&](Key k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
    if (fresh) {
      s.add(std::get<0>(k) == 0);
      keys.push_back(std::move(k));
    }
    return it->second;
  };
  auto sorted = [](std::vector<State> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  s.initial.push_back(intern({0, 0, sorted(a1.initial), sorted(a2.initial)}));

  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Key key = keys[i];
    const auto from = static_cast<State>(i);
    const int tag = std::get<0>(key);
    if (tag == 0) {
      const auto& s1 = std::get<2>(key);
      const auto& s2 = std::get<3>(key);
      const auto t2 = next2.of(s2);
      if (!t2.empty())
        for (State p : s1) s.trans.push_back({from, kEpsilon, intern({1, p, {}, t2})});
      const auto t1 = next1.of(s1);
      if (!t1.empty())
        for (State p : s2) s.trans.push_back({from, kEpsilon, intern({2, p, t1, {}})});
    } else if (tag == 1) {
      const State p = std::get<1>(key);
      const auto& t = std::get<3>(key);
      for (auto [label, to] : adj1[p]) {
        const Key k = a1.is_final(to) ? Key{0, 0, {to}, t} : Key{1, to, {}, t};
        s.trans.push_back({from, label, intern(k)});
      }
    } else {
      const State p = std::get<1>(key);
      const auto& t = std::get<2>(key);
      for (auto [label, to] : adj2[p]) {
        const Key k = a2.is_final(to) ? Key{0, 0, t, {to}} : Key{2, to, t, {}};
        s.trans.push_back({from, label, intern(k)});
      }
    }
  }
  return s;
}

Seq compile_seq(const ExprPtr& m, const Alphabet& alphabet) {
  if (expr::denotes_empty(m)) return seq_empty();
  switch (m->kind) {
    case Kind::Empty: return seq_empty();
    case Kind::Epsilon: return seq_loop(kEpsilon);
    case Kind::Symbol: {
      const auto s = alphabet.find(m->symbol);
      if (!s) throw InputError("unknown symbol '" + m->symbol + "'");
      return seq_loop(*s);
    }
    case Kind::Concat: {
      Seq acc = compile_seq(m->children.front(), alphabet);
      for (std::size_t i = 1; i < m->children.size(); ++i)
        acc = seq_concat(acc, compile_seq(m->children[i], alphabet));
      return acc;
    }
    case Kind::Union: {
      // empty alternatives are units of the sum
      std::vector<Seq> parts;
      for (const auto& c : m->children)
        if (!expr::denotes_empty(c)) parts.push_back(compile_seq(c, alphabet));
      Seq acc = std::move(parts.front());
      for (std::size_t i = 1; i < parts.size(); ++i) acc = seq_sum(acc, parts[i]);
      return acc;
    }
    case Kind::BPow:
      return seq_bpow(compile_seq(m->children.front(), alphabet));
    case Kind::Star:
      throw PreconditionError("compile_bexpr: '*' is not allowed in a B-expression");
  }
  return seq_empty();
}

Automaton to_automaton(const Seq& s, const Alphabet& alphabet) {
  IdSet f(s.n);
  for (State q = 0; q < s.n; ++q)
    if (s.is_final(q)) f.insert(q);
  return Automaton(alphabet, s.n, s.initial, s.trans, Acceptance::buchi(std::move(f)));
}

// Thompson construction for a finite-word regular expression; returns
// (start, accept) inside `out`.
std::pair<State, State> thompson(const ExprPtr& e, const Alphabet& alphabet, Seq& out) {
  const State in = out.add(false);
  const State fin = out.add(false);
  switch (e->kind) {
    case Kind::Empty: break;
    case Kind::Epsilon: out.trans.push_back({in, kEpsilon, fin}); break;
    case Kind::Symbol: {
      const auto s = alphabet.find(e->symbol);
      if (!s) throw InputError("unknown symbol '" + e->symbol + "'");
      out.trans.push_back({in, *s, fin});
      break;
    }
    case Kind::Concat: {
      State cur = in;
      for (const auto& c : e->children) {
        auto [a, b] = thompson(c, alphabet, out);
        out.trans.push_back({cur, kEpsilon, a});
        cur = b;
      }
      out.trans.push_back({cur, kEpsilon, fin});
      break;
    }
    case Kind::Union:
      for (const auto& c : e->children) {
        auto [a, b] = thompson(c, alphabet, out);
        out.trans.push_back({in, kEpsilon, a});
        out.trans.push_back({b, kEpsilon, fin});
      }
      break;
    case Kind::Star: {
      auto [a, b] = thompson(e->children.front(), alphabet, out);
      out.trans.push_back({in, kEpsilon, fin});
      out.trans.push_back({in, kEpsilon, a});
      out.trans.push_back({b, kEpsilon, a});
      out.trans.push_back({b, kEpsilon, fin});
      break;
    }
    case Kind::BPow:
      throw PreconditionError("^B is not allowed in a regular expression");
  }
  return {in, fin};
}

Automaton compile_branch(const OmegaBranch& b, const Alphabet& alphabet) {
  const Seq m = compile_seq(b.body, alphabet);
  Seq glued;
  auto [start, accept] = thompson(b.prefix, alphabet, glued);
  const auto offset = static_cast<State>(glued.n);
  for (State q = 0; q < m.n; ++q) glued.add(m.is_final(q));
  for (const auto& t : m.trans)
    glued.trans.push_back({t.from + offset, t.label, t.to + offset});
  for (State q : m.initial) glued.trans.push_back({accept, kEpsilon, q + offset});
  glued.initial = {start};
  return eliminate_epsilon(to_automaton(glued, alphabet));
}

}  // namespace

SequenceAutomaton compile_bexpr(const ExprPtr& m, const Alphabet& alphabet) {
  const Seq s = compile_seq(m, alphabet);
  return {to_automaton(s, alphabet), s.block_closed};
}

Automaton compile_expr(const OmegaBExpr& e, const Alphabet& alphabet) {
  Automaton result(alphabet, 0, {}, {}, Acceptance::buchi(IdSet(0)));
  bool first = true;
  for (const auto& b : e.branches) {
    if (expr::denotes_empty(b.body)) continue;
    Automaton part = compile_branch(b, alphabet);
    result = first ? std::move(part) : unite(result, part);
    first = false;
  }
  return result;
}

// ===== extraction ===========================================================

namespace {

class Budget {
 public:
  explicit Budget(std::size_t max) : max_(max) {}
  const ExprPtr& check(const ExprPtr& e) {
    if (expr::tree_size(e) > max_)
      throw BudgetExceeded("extract_expr: expression exceeds " +
                           std::to_string(max_) + " nodes");
    return e;
  }

 private:
  std::size_t max_;
};

using Table = std::vector<std::vector<ExprPtr>>;

}  // namespace

ExprPtr direct_moves(const Automaton& a, State p, State q) {
  std::vector<ExprPtr> letters;
  if (p == q) letters.push_back(expr::epsilon());
  for (Symbol s = 0; s < a.alphabet().size(); ++s) {
    auto succ = a.successors(p, s);
    if (std::binary_search(succ.begin(), succ.end(), q))
      letters.push_back(expr::symbol(a.alphabet().name(s)));
  }
  return expr::alt_s(std::move(letters));
}

namespace {

Table base_table(const Automaton& a) {
  const std::size_t n = a.num_states();
  Table t(n, std::vector<ExprPtr>(n));
  for (State p = 0; p < n; ++p)
    for (State q = 0; q < n; ++q) t[p][q] = direct_moves(a, p, q);
  return t;
}

}  // namespace

OmegaBExpr extract_expr(const Automaton& a, const ExtractOptions& options) {
  if (a.has_epsilon())
    throw PreconditionError("extract_expr: epsilon transitions present");
  if (a.acceptance().kind != AcceptanceKind::Buchi)
    throw PreconditionError("extract_expr: Buchi acceptance required");
  Budget budget(options.max_nodes);
  const std::size_t n = a.num_states();

  // finite-word languages L_{p,q}: state elimination with Kleene star
  Table lang = base_table(a);
  // bounded loop sequences M^k_{p,q}: same recursion with ^B in place of *
  Table seq = base_table(a);
  for (State k = 0; k < n; ++k) {
    Table lang2 = lang, seq2 = seq;
    const ExprPtr lk = expr::star_s(lang[k][k]);
    const ExprPtr mk = expr::bpow_s(seq[k][k]);
    for (State p = 0; p < n; ++p)
      for (State q = 0; q < n; ++q) {
        lang2[p][q] = budget.check(expr::alt_s(
            {expr::concat_s({lang[p][k], lk, lang[k][q]}), lang[p][q]}));
        seq2[p][q] = budget.check(expr::alt_s(
            {expr::concat_s({seq[p][k], mk, seq[k][q]}), seq[p][q]}));
      }
    lang = std::move(lang2);
    seq = std::move(seq2);
  }

  OmegaBExpr out;
  const IdSet& f = a.acceptance().accepting;
  for (State q0 : a.initial())
    for (State q : f.members()) {
      OmegaBranch b{lang[q0][q], seq[q][q]};
      if (b.prefix->kind == Kind::Empty || b.body->kind == Kind::Empty) continue;
      out.branches.push_back(std::move(b));
    }
  if (out.branches.empty()) out.branches.push_back({expr::epsilon(), expr::empty()});
  return out;
}

}  // namespace fota
