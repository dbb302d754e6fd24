#include "cli.hpp"

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fota/constructions.hpp"
#include "fota/decisions.hpp"
#include "fota/error.hpp"
#include "fota/expressions.hpp"
#include "fota/lasso.hpp"
#include "fota/oracle.hpp"
#include "fota/semantics.hpp"
#include "io.hpp"

namespace fota::cli {

namespace {

struct Settings {
  std::string file_a, file_b, output, word, op, target, expr, expr_file, alphabet;
  std::size_t max_states = BuildOptions{}.max_states;
  std::size_t max_u = 3, max_v = 3;
  std::size_t oracle_states = oracle::Limits{}.max_states;
  std::size_t max_nodes = ExtractOptions{}.max_nodes;
};

void emit(std::ostream& out, const Automaton& a, const std::string& path) {
  if (path.empty() || path == "-")
    io::write_automaton(out, a);
  else
    io::write_automaton_file(path, a);
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("alphabet mismatch");
}

int verdict(std::ostream& out, const Verdict& v, const char* yes, const char* no,
            const Alphabet& alphabet) {
  out << (v.holds ? yes : no) << '\n';
  if (v.witness)
    out << "witness: " << format_lasso(canonicalize(*v.witness), alphabet) << '\n';
  return v.holds ? kTrue : kFalse;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Alphabet expression_alphabet(const OmegaBExpr& e, const std::string& extra) {
  std::vector<std::string> names;
  std::stringstream ss(extra);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) names.push_back(item);
  for (auto& s : symbols_of(e))
    if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
  if (names.empty()) throw InputError("expression uses no symbols; pass --alphabet");
  return Alphabet(std::move(names));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const std::atomic<bool>* cancel) {
  CLI::App app{"Finitary omega-automata toolkit", "fota"};
  app.require_subcommand(1);
  Settings s;
  auto with_budget = [&](CLI::App* c) {
    c->add_option("--max-states", s.max_states, "State budget for subset products");
  };

  auto* empty = app.add_subcommand("empty", "Emptiness check; prints a witness when nonempty");
  empty->add_option("FILE", s.file_a)->required();
  with_budget(empty);

  auto* universal = app.add_subcommand("universal", "Universality check");
  universal->add_option("FILE", s.file_a)->required();
  with_budget(universal);

  auto* include = app.add_subcommand("include", "Is L(FILE_A) contained in L(FILE_B)?");
  include->add_option("FILE_A", s.file_a)->required();
  include->add_option("FILE_B", s.file_b)->required();
  with_budget(include);

  auto* equiv = app.add_subcommand("equiv", "Language equivalence");
  equiv->add_option("FILE_A", s.file_a)->required();
  equiv->add_option("FILE_B", s.file_b)->required();
  with_budget(equiv);

  auto* member = app.add_subcommand("member", "Membership of a lasso word u(v)");
  member->add_option("FILE", s.file_a)->required();
  member->add_option("--word", s.word, "Lasso word, e.g. \"ab(b)\"")->required();

  auto* product = app.add_subcommand("product", "Intersection or union of two Buchi automata");
  product->add_option("--op", s.op)->required()->check(CLI::IsMember({"intersect", "union"}));
  product->add_option("FILE_A", s.file_a)->required();
  product->add_option("FILE_B", s.file_b)->required();
  product->add_option("-o,--output", s.output, "Output file (default: stdout)");

  auto* convert = app.add_subcommand("convert", "Convert to another automaton class");
  convert->add_option("--to", s.target)->required()->check(CLI::IsMember({"nfb"}));
  convert->add_option("FILE", s.file_a)->required();
  convert->add_option("-o,--output", s.output, "Output file (default: stdout)");

  auto* restrict = app.add_subcommand(
      "restrict-finitary", "Retag a deterministic complete classical automaton as finitary");
  restrict->add_option("FILE", s.file_a)->required();
  restrict->add_option("-o,--output", s.output, "Output file (default: stdout)");

  auto* compile = app.add_subcommand("compile", "Compile an omega-B expression to a finitary Buchi automaton");
  auto* expr_opt = compile->add_option("EXPR", s.expr, "Expression text");
  auto* file_opt = compile->add_option("-f,--file", s.expr_file, "Read the expression from a file");
  expr_opt->excludes(file_opt);
  compile->add_option("--alphabet", s.alphabet, "Comma-separated symbols to include first");
  compile->add_option("-o,--output", s.output, "Output file (default: stdout)");

  auto* to_expr = app.add_subcommand("to-expr", "Extract an expression from a finitary Buchi automaton");
  to_expr->add_option("FILE", s.file_a)->required();
  to_expr->add_option("--max-nodes", s.max_nodes, "Expression size budget");

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("FILE", s.file_a)->required();

  auto* oracle_check = app.add_subcommand("oracle-check", "Brute-force comparison on a lasso sweep");
  oracle_check->add_option("FILE_A", s.file_a)->required();
  oracle_check->add_option("FILE_B", s.file_b)->required();
  oracle_check->add_option("--max-u", s.max_u, "Longest spoke")->capture_default_str();
  oracle_check->add_option("--max-v", s.max_v, "Longest cycle")->check(CLI::PositiveNumber)->capture_default_str();
  oracle_check->add_option("--oracle-states", s.oracle_states, "Oracle size guard")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Parse and check an automaton file");
  validate->add_option("FILE", s.file_a)->required();

  std::vector<std::string> argv_store{"fota"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kError;
  }

  const DecisionOptions options{s.max_states, cancel};
  try {
    if (*empty) {
      const Automaton a = io::read_automaton_file(s.file_a);
      return verdict(out, is_empty(a, options), "empty", "nonempty", a.alphabet());
    }
    if (*universal) {
      const Automaton a = io::read_automaton_file(s.file_a);
      return verdict(out, universality(a, options), "universal", "not universal", a.alphabet());
    }
    if (*include || *equiv) {
      const Automaton a = io::read_automaton_file(s.file_a);
      const Automaton b = io::read_automaton_file(s.file_b);
      require_same_alphabet(a, b);
      if (*include)
        return verdict(out, inclusion(a, b, options), "included", "not included", a.alphabet());
      return verdict(out, equivalence(a, b, options), "equivalent", "not equivalent", a.alphabet());
    }
    if (*member) {
      const Automaton a = io::read_automaton_file(s.file_a);
      const Membership m = fota::member(a, parse_lasso(s.word, a.alphabet()));
      out << (m.accepted ? "true" : "false") << '\n';
      return m.accepted ? kTrue : kFalse;
    }
    if (*product) {
      const Automaton a = io::read_automaton_file(s.file_a);
      const Automaton b = io::read_automaton_file(s.file_b);
      require_same_alphabet(a, b);
      emit(out, s.op == "intersect" ? intersect(a, b) : unite(a, b), s.output);
      return kTrue;
    }
    if (*convert) {
      emit(out, to_nfb(io::read_automaton_file(s.file_a)), s.output);
      return kTrue;
    }
    if (*restrict) {
      emit(out, finitary_restriction(io::read_automaton_file(s.file_a)), s.output);
      return kTrue;
    }
    if (*compile) {
      if (s.expr.empty() && s.expr_file.empty())
        throw InputError("compile needs EXPR or -f FILE");
      const std::string text = s.expr_file.empty() ? s.expr : read_text(s.expr_file);
      const OmegaBExpr e = parse_expr(text);
      emit(out, compile_expr(e, expression_alphabet(e, s.alphabet)), s.output);
      return kTrue;
    }
    if (*to_expr) {
      const Automaton a = io::read_automaton_file(s.file_a);
      out << print_expr(extract_expr(a, {s.max_nodes})) << '\n';
      return kTrue;
    }
    if (*dot) {
      out << io::to_dot(io::read_automaton_file(s.file_a));
      return kTrue;
    }
    if (*oracle_check) {
      const Automaton a = io::read_automaton_file(s.file_a);
      const Automaton b = io::read_automaton_file(s.file_b);
      require_same_alphabet(a, b);
      const auto report = oracle::check_equiv(a, b, s.max_u, s.max_v,
                                              {.max_states = s.oracle_states});
      if (report.equivalent()) {
        out << "agree on " << report.checked << " lassos\n";
        return kTrue;
      }
      out << "disagree on " << report.disagreements.size() << " of " << report.checked
          << " lassos\n";
      for (const auto& w : report.disagreements)
        out << "  " << format_lasso(w, a.alphabet()) << '\n';
      return kFalse;
    }
    if (*validate) {
      const Automaton a = io::read_automaton_file(s.file_a);
      out << "valid: " << a.num_states() << " states, " << a.transitions().size()
          << " transitions, " << (a.acceptance().finitary() ? "finitary " : "classical ")
          << to_string(a.acceptance().kind) << (a.is_deterministic() ? ", deterministic" : "")
          << (a.is_complete() ? ", complete" : "") << '\n';
      return kTrue;
    }
  } catch (const Error& e) {
    err << "fota: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "fota: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace fota::cli
