#include "fota/lasso.hpp"

#include <algorithm>
#include <cctype>

#include "fota/error.hpp"

namespace fota {

Symbol LassoWord::at(std::size_t k) const {
  return PeriodicSequence(*this).at(k);
}

State LassoRun::at(std::size_t k) const {
  return PeriodicSequence(*this).at(k);
}

namespace {

std::vector<Symbol> parse_names(std::string_view text, std::size_t base,
                                const Alphabet& alphabet) {
  std::vector<std::size_t> order(alphabet.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return alphabet.name(a).size() > alphabet.name(b).size();
  });

  std::vector<Symbol> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    bool matched = false;
    for (std::size_t s : order) {
      const std::string& nm = alphabet.name(s);
      if (text.substr(i, nm.size()) == nm) {
        out.push_back(static_cast<Symbol>(s));
        i += nm.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("unknown symbol in lasso word", base + i);
  }
  return out;
}

}  // namespace

LassoWord parse_lasso(std::string_view text, const Alphabet& alphabet) {
  const auto open = text.find('(');
  if (open == std::string_view::npos)
    throw ParseError("expected '(' in lasso word", text.size());
  const auto close = text.find(')', open);
  if (close == std::string_view::npos)
    throw ParseError("expected ')' in lasso word", text.size());
  for (std::size_t i = close + 1; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i])))
      throw ParseError("trailing characters after ')'", i);
  if (text.find('(', open + 1) < close)
    throw ParseError("nested '(' in lasso word", text.find('(', open + 1));

  LassoWord w;
  w.spoke = parse_names(text.substr(0, open), 0, alphabet);
  w.cycle = parse_names(text.substr(open + 1, close - open - 1), open + 1,
                        alphabet);
  if (w.cycle.empty()) throw ParseError("empty lasso cycle", open + 1);
  return w;
}

std::string format_lasso(const LassoWord& w, const Alphabet& alphabet) {
  const bool compact = alphabet.single_char_names();
  auto emit = [&](const std::vector<Symbol>& part) {
    std::string s;
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (!compact && i > 0) s += ' ';
      s += alphabet.name(part[i]);
    }
    return s;
  };
  return emit(w.spoke) + "(" + emit(w.cycle) + ")";
}

LassoWord canonicalize(const LassoWord& w) {
  LassoWord c = w;
  const std::size_t n = c.cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i)
      periodic = c.cycle[i] == c.cycle[i - p];
    if (periodic) {
      c.cycle.resize(p);
      break;
    }
  }
  while (!c.spoke.empty() && c.spoke.back() == c.cycle.back()) {
    c.spoke.pop_back();
    std::rotate(c.cycle.rbegin(), c.cycle.rbegin() + 1, c.cycle.rend());
  }
  return c;
}

}  // namespace fota
