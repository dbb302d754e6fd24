#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fota/automaton.hpp"

namespace fota {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression node shared by finite-word regular expressions (no BPow) and
/// star-free B-expressions (no Star). Concat and Union are n-ary with at
/// least two children and never directly nest themselves.
struct Expr {
  enum class Kind { Empty, Epsilon, Symbol, Concat, Union, Star, BPow };

  Kind kind = Kind::Empty;
  std::string symbol;
  std::vector<ExprPtr> children;
};

namespace expr {

// Plain constructors: flatten associative nodes, nothing else.
ExprPtr empty();
ExprPtr epsilon();
ExprPtr symbol(std::string name);
ExprPtr concat(std::vector<ExprPtr> parts);
ExprPtr alt(std::vector<ExprPtr> parts);
ExprPtr star(ExprPtr e);
ExprPtr bpow(ExprPtr e);

// Simplifying constructors: empty-set absorption, epsilon units, duplicate
// removal in unions, e^B = e, (X^B)^B = X^B, 0* = e* = e.
ExprPtr concat_s(std::vector<ExprPtr> parts);
ExprPtr alt_s(std::vector<ExprPtr> parts);
ExprPtr star_s(ExprPtr e);
ExprPtr bpow_s(ExprPtr e);

bool equal(const ExprPtr& a, const ExprPtr& b);
bool contains(const ExprPtr& e, Expr::Kind kind);
/// Node count of the expression tree, shared subtrees counted each time.
std::size_t tree_size(const ExprPtr& e);
/// True iff the sequence language of the B-expression is empty.
bool denotes_empty(const ExprPtr& e);

}  // namespace expr

/// One branch L . M^omega.
struct OmegaBranch {
  ExprPtr prefix;  // regular expression, may use Star
  ExprPtr body;    // star-free B-expression
};

struct OmegaBExpr {
  std::vector<OmegaBranch> branches;
};

bool operator==(const OmegaBExpr& a, const OmegaBExpr& b);

/// Parses the concrete syntax: 0, e, symbols (single characters or 'quoted'
/// names), juxtaposition or '.', '+', postfix '*', '^B', '^w'; '#' starts a
/// comment. When `alphabet` is given, unknown symbols are an error. Throws
/// ParseError, or StarFreeViolation for '*' inside a ^w body.
OmegaBExpr parse_expr(std::string_view text,
                      const Alphabet* alphabet = nullptr);

/// Inverse of parse_expr up to flattening; minimal parentheses.
std::string print_expr(const OmegaBExpr& e);
std::string print_expr(const ExprPtr& e);

/// Automaton reading infinite sequences of finite words: every transition
/// into an accepting state closes the current coordinate.
struct SequenceAutomaton {
  Automaton automaton;
  bool block_closed = false;  // result of ^B; a second ^B is the identity
};

SequenceAutomaton compile_bexpr(const ExprPtr& m, const Alphabet& alphabet);

/// Finitary Buchi automaton without epsilon transitions for the expression.
Automaton compile_expr(const OmegaBExpr& e, const Alphabet& alphabet);

struct ExtractOptions {
  std::size_t max_nodes = 2'000'000;
};

/// Expression for a finitary Buchi automaton, as the union over initial q0
/// and accepting q of L_{q0,q} . (M_q)^omega. Throws BudgetExceeded when the
/// expression grows beyond the node budget.
OmegaBExpr extract_expr(const Automaton& a, const ExtractOptions& options = {});

/// Base entry of the extraction tables: the letters of direct transitions
/// p -> q, plus e when p == q.
ExprPtr direct_moves(const Automaton& a, State p, State q);

/// Symbols occurring in the expression, sorted.
std::vector<std::string> symbols_of(const OmegaBExpr& e);

}  // namespace fota
