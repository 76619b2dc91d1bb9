// Copyright 2026 The transduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Machine file format: a JSON document with input_alphabet, output_alphabet,
// states (order is the priority order), initial, transitions and finals.
// Words serialize as plain strings when every symbol of the alphabet is a
// single character, and as arrays of symbol names otherwise.

#ifndef TRANSDUCE_IO_HPP_
#define TRANSDUCE_IO_HPP_

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "transduce/machine.hpp"

namespace transduce {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool single_char_alphabet(const std::vector<std::string>& alphabet) {
  for (const std::string& s : alphabet)
    if (s.size() != 1) return false;
  return true;
}

inline std::map<std::string, Sym> index_of(
    const std::vector<std::string>& alphabet) {
  std::map<std::string, Sym> m;
  for (size_t i = 0; i < alphabet.size(); i++) m[alphabet[i]] = (Sym)i;
  return m;
}

}  // namespace detail

inline nlohmann::json word_to_json(const Word& w,
                                   const std::vector<std::string>& alphabet) {
  for (Sym s : w)
    if (s < 0 || s >= (Sym)alphabet.size())
      throw ParseError("word symbol out of alphabet range");
  if (detail::single_char_alphabet(alphabet)) {
    std::string out;
    for (Sym s : w) out += alphabet[s];
    return out;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (Sym s : w) arr.push_back(alphabet[s]);
  return arr;
}

inline Word word_from_json(const nlohmann::json& j,
                           const std::vector<std::string>& alphabet) {
  auto idx = detail::index_of(alphabet);
  Word w;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) {
      auto it = idx.find(std::string(1, c));
      if (it == idx.end())
        throw ParseError("symbol '" + std::string(1, c) +
                         "' not in alphabet");
      w.push_back(it->second);
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      auto it = idx.find(e.get<std::string>());
      if (it == idx.end())
        throw ParseError("symbol '" + e.get<std::string>() +
                         "' not in alphabet");
      w.push_back(it->second);
    }
  } else {
    throw ParseError("word must be a string or an array of symbols");
  }
  return w;
}

inline nlohmann::json machine_to_json(const Transducer& t) {
  nlohmann::json j;
  j["input_alphabet"] = t.input_alphabet;
  j["output_alphabet"] = t.output_alphabet;
  j["states"] = t.states;
  nlohmann::json init = nlohmann::json::array();
  for (int q : t.initial) init.push_back(t.states[q]);
  j["initial"] = init;
  nlohmann::json trs = nlohmann::json::array();
  for (const Transition& tr : t.transitions) {
    nlohmann::json e;
    e["from"] = t.states[tr.from];
    e["input"] = t.input_alphabet[tr.input];
    e["output"] = word_to_json(tr.output, t.output_alphabet);
    e["to"] = t.states[tr.to];
    trs.push_back(e);
  }
  j["transitions"] = trs;
  nlohmann::json fins = nlohmann::json::array();
  for (const auto& [q, w] : t.finals) {
    nlohmann::json e;
    e["state"] = t.states[q];
    e["output"] = word_to_json(w, t.output_alphabet);
    fins.push_back(e);
  }
  j["finals"] = fins;
  return j;
}

inline Transducer machine_from_json(const nlohmann::json& j) {
  Transducer t;
  try {
    t.input_alphabet = j.at("input_alphabet").get<std::vector<std::string>>();
    t.output_alphabet =
        j.at("output_alphabet").get<std::vector<std::string>>();
    t.states = j.at("states").get<std::vector<std::string>>();
    std::map<std::string, int> sidx;
    for (size_t i = 0; i < t.states.size(); i++) sidx[t.states[i]] = (int)i;
    auto state = [&](const std::string& name) {
      auto it = sidx.find(name);
      if (it == sidx.end()) throw ParseError("undeclared state " + name);
      return it->second;
    };
    auto in_idx = detail::index_of(t.input_alphabet);
    for (const auto& e : j.at("initial"))
      t.initial.push_back(state(e.get<std::string>()));
    for (const auto& e : j.at("transitions")) {
      Transition tr;
      tr.from = state(e.at("from").get<std::string>());
      std::string in = e.at("input").get<std::string>();
      auto it = in_idx.find(in);
      if (it == in_idx.end())
        throw ParseError("input symbol '" + in + "' not in alphabet");
      tr.input = it->second;
      tr.output = word_from_json(e.at("output"), t.output_alphabet);
      tr.to = state(e.at("to").get<std::string>());
      t.transitions.push_back(tr);
    }
    for (const auto& e : j.at("finals")) {
      int q = state(e.at("state").get<std::string>());
      t.finals[q] = word_from_json(e.at("output"), t.output_alphabet);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed machine file: ") + ex.what());
  }
  auto bad = validate(t);
  if (!bad.empty()) throw ParseError("invalid machine: " + bad.front());
  return t;
}

// Canonical text form: two-space indent, keys sorted (the default for
// nlohmann json objects), trailing newline. Parsing then re-serializing a
// canonical file is byte-identical.
inline std::string canonical_json(const nlohmann::json& j) {
  return j.dump(2) + "\n";
}

inline Transducer load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("bad JSON in ") + path + ": " + ex.what());
  }
  return machine_from_json(j);
}

inline void save_machine(const Transducer& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << canonical_json(machine_to_json(t));
}

}  // namespace transduce

#endif  // TRANSDUCE_IO_HPP_
