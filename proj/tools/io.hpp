#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fota/automaton.hpp"

namespace fota::io {

/// JSON document with fields alphabet, states, initial, transitions
/// ({from, symbol, to}; symbol null for epsilon) and acceptance. State sets
/// are lists of state names. An optional `flags` object
/// ({deterministic, complete}) is checked against the parsed automaton.
Automaton from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Automaton& a);

Automaton read_automaton(std::istream& in);
Automaton read_automaton_file(const std::string& path);
void write_automaton(std::ostream& out, const Automaton& a);
void write_automaton_file(const std::string& path, const Automaton& a);

/// Graphviz rendering: double circles for Buchi/co-Buchi F and Conj F_b,
/// priorities and pair memberships in the state labels.
std::string to_dot(const Automaton& a);

}  // namespace fota::io
