#include "io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fota/error.hpp"

namespace fota::io {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> strings(const json& arr, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : arr) {
    if (!x.is_string()) throw InputError(std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

class StateTable {
 public:
  explicit StateTable(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!index_.emplace(names[i], static_cast<State>(i)).second)
        throw InputError("duplicate state '" + names[i] + "'");
  }
  State at(const json& v) const {
    if (!v.is_string()) throw InputError("state references must be strings");
    auto it = index_.find(v.get<std::string>());
    if (it == index_.end()) throw InputError("unknown state '" + v.get<std::string>() + "'");
    return it->second;
  }
  IdSet set(const json& arr, std::size_t n) const {
    if (!arr.is_array()) throw InputError("state sets must be lists");
    IdSet s(n);
    for (const auto& v : arr) s.insert(at(v));
    return s;
  }
  std::size_t size() const { return index_.size(); }

 private:
  std::unordered_map<std::string, State> index_;
};

Acceptance read_acceptance(const json& acc, const StateTable& states) {
  const std::size_t n = states.size();
  const std::string type = field(acc, "type").get<std::string>();
  Mode mode = Mode::Finitary;
  if (auto it = acc.find("finitary"); it != acc.end()) {
    if (!it->is_boolean()) throw InputError("'finitary' must be a boolean");
    mode = it->get<bool>() ? Mode::Finitary : Mode::Classical;
  }
  if (type == "buchi") return Acceptance::buchi(states.set(field(acc, "F"), n), mode);
  if (type == "cobuchi") return Acceptance::co_buchi(states.set(field(acc, "F"), n), mode);
  if (type == "conj")
    return Acceptance::conj(states.set(field(acc, "Fb"), n),
                            states.set(field(acc, "Fc"), n), mode);
  if (type == "parity") {
    const json& p = field(acc, "priorities");
    if (!p.is_object()) throw InputError("priorities must map state names to integers");
    std::vector<unsigned> prio(n, 0);
    std::vector<bool> seen(n, false);
    for (auto it = p.begin(); it != p.end(); ++it) {
      const State q = states.at(json(it.key()));
      if (!it->is_number_unsigned()) throw InputError("priorities must be nonnegative integers");
      prio[q] = it->get<unsigned>();
      seen[q] = true;
    }
    for (std::size_t q = 0; q < n; ++q)
      if (!seen[q]) throw InputError("priority map is not total");
    return Acceptance::parity(std::move(prio), mode);
  }
  if (type == "streett") {
    const json& arr = field(acc, "pairs");
    if (!arr.is_array()) throw InputError("pairs must be a list");
    std::vector<StreettPair> pairs;
    for (const auto& pr : arr)
      pairs.push_back({states.set(field(pr, "R"), n), states.set(field(pr, "G"), n)});
    return Acceptance::streett(std::move(pairs), mode);
  }
  throw InputError("unknown acceptance type '" + type + "'");
}

json names_of(const Automaton& a, const IdSet& s) {
  json arr = json::array();
  for (State q : s.members()) arr.push_back(a.state_name(q));
  return arr;
}

}  // namespace

Automaton from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("automaton document must be an object");
  Alphabet alphabet(strings(field(doc, "alphabet"), "alphabet"));
  const auto names = strings(field(doc, "states"), "states");
  const StateTable states(names);

  std::vector<State> initial;
  for (const auto& v : field(doc, "initial")) initial.push_back(states.at(v));

  std::vector<Transition> transitions;
  const json& ts = field(doc, "transitions");
  if (!ts.is_array()) throw InputError("transitions must be a list");
  for (const auto& t : ts) {
    const json& sym = field(t, "symbol");
    Symbol label = kEpsilon;
    if (!sym.is_null()) {
      if (!sym.is_string()) throw InputError("symbol must be a string or null");
      label = alphabet.at(sym.get<std::string>());
    }
    transitions.push_back({states.at(field(t, "from")), label, states.at(field(t, "to"))});
  }

  Acceptance acc = read_acceptance(field(doc, "acceptance"), states);
  Automaton a(std::move(alphabet), names.size(), std::move(initial),
              std::move(transitions), std::move(acc), names);

  if (auto it = doc.find("flags"); it != doc.end()) {
    auto check = [&](const char* key, bool actual) {
      auto f = it->find(key);
      if (f != it->end() && f->get<bool>() != actual)
        throw InputError(std::string("stored flag '") + key + "' does not match the automaton");
    };
    check("deterministic", a.is_deterministic());
    check("complete", a.is_complete());
  }
  return a;
}

json to_json(const Automaton& a) {
  json doc;
  doc["alphabet"] = a.alphabet().names();
  doc["states"] = a.state_names();
  json init = json::array();
  for (State q : a.initial()) init.push_back(a.state_name(q));
  doc["initial"] = init;
  json ts = json::array();
  for (const auto& t : a.transitions()) {
    json sym = t.label == kEpsilon ? json(nullptr) : json(a.alphabet().name(t.label));
    ts.push_back({{"from", a.state_name(t.from)}, {"symbol", sym}, {"to", a.state_name(t.to)}});
  }
  doc["transitions"] = ts;

  const Acceptance& acc = a.acceptance();
  json j;
  j["type"] = to_string(acc.kind);
  j["finitary"] = acc.finitary();
  switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::CoBuchi: j["F"] = names_of(a, acc.accepting); break;
    case AcceptanceKind::Parity: {
      json p = json::object();
      for (State q = 0; q < a.num_states(); ++q) p[a.state_name(q)] = acc.priorities[q];
      j["priorities"] = p;
      break;
    }
    case AcceptanceKind::Streett: {
      json pairs = json::array();
      for (const auto& pr : acc.pairs)
        pairs.push_back({{"R", names_of(a, pr.request)}, {"G", names_of(a, pr.grant)}});
      j["pairs"] = pairs;
      break;
    }
    case AcceptanceKind::Conj:
      j["Fb"] = names_of(a, acc.good);
      j["Fc"] = names_of(a, acc.bad);
      break;
  }
  doc["acceptance"] = j;
  doc["flags"] = {{"deterministic", a.is_deterministic()}, {"complete", a.is_complete()}};
  return doc;
}

Automaton read_automaton(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed automaton file: ") + e.what());
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed automaton file: ") + e.what());
  }
}

Automaton read_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return read_automaton(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const StructuralError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_automaton(std::ostream& out, const Automaton& a) {
  out << to_json(a).dump(2) << '\n';
}

void write_automaton_file(const std::string& path, const Automaton& a) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_automaton(out, a);
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_dot(const Automaton& a) {
  const Acceptance& acc = a.acceptance();
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  label=" << quote(std::string(acc.finitary() ? "finitary " : "classical ") +
                            to_string(acc.kind))
     << ";\n";
  for (State q = 0; q < a.num_states(); ++q) {
    std::string label = a.state_name(q);
    bool doubled = false;
    switch (acc.kind) {
      case AcceptanceKind::Buchi:
      case AcceptanceKind::CoBuchi: doubled = acc.accepting.contains(q); break;
      case AcceptanceKind::Parity: label += " / " + std::to_string(acc.priorities[q]); break;
      case AcceptanceKind::Streett: {
        std::string marks;
        for (std::size_t i = 0; i < acc.pairs.size(); ++i) {
          if (acc.pairs[i].request.contains(q)) marks += " R" + std::to_string(i);
          if (acc.pairs[i].grant.contains(q)) marks += " G" + std::to_string(i);
        }
        if (!marks.empty()) label += " /" + marks;
        break;
      }
      case AcceptanceKind::Conj:
        doubled = acc.good.contains(q);
        if (acc.bad.contains(q)) label += " / Fc";
        break;
    }
    os << "  s" << q << " [label=" << quote(label);
    if (doubled) os << ", shape=doublecircle";
    os << "];\n";
    if (a.is_initial(q)) {
      os << "  init" << q << " [shape=point];\n  init" << q << " -> s" << q << ";\n";
    }
  }
  for (const auto& t : a.transitions()) {
    const std::string sym = t.label == kEpsilon ? "ε" : a.alphabet().name(t.label);
    os << "  s" << t.from << " -> s" << t.to << " [label=" << quote(sym) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fota::io
