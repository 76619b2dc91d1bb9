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
// Report and witness serialization. A witness document embeds the machine
// it refers to, so replay needs nothing but the document itself: `kind`
// selects between a stem/loop pattern and a pair of runs, `claim` names
// the property the witness refutes.

#ifndef TRANSDUCE_REPORT_HPP_
#define TRANSDUCE_REPORT_HPP_

#include "transduce/io.hpp"
#include "transduce/relations.hpp"

namespace transduce {

inline nlohmann::json pattern_witness_json(const Transducer& t,
                                           const TwinningPattern& w,
                                           const std::string& claim,
                                           const std::string& detail = "") {
  nlohmann::json j;
  j["kind"] = "pattern";
  j["claim"] = claim;
  if (!detail.empty()) {
    if (claim == "htp") j["range"] = detail;
    if (claim == "diff") j["metric"] = detail;
  }
  j["machine"] = machine_to_json(t);
  j["p1"] = t.states[w.p1];
  j["p2"] = t.states[w.p2];
  j["q1"] = t.states[w.q1];
  j["q2"] = t.states[w.q2];
  j["u"] = word_to_json(w.u, t.input_alphabet);
  j["v"] = word_to_json(w.v, t.input_alphabet);
  j["u1"] = word_to_json(w.u1, t.output_alphabet);
  j["u2"] = word_to_json(w.u2, t.output_alphabet);
  j["v1"] = word_to_json(w.v1, t.output_alphabet);
  j["v2"] = word_to_json(w.v2, t.output_alphabet);
  j["stem1"] = w.stem1;
  j["stem2"] = w.stem2;
  j["cycle1"] = w.cycle1;
  j["cycle2"] = w.cycle2;
  return j;
}

inline nlohmann::json runs_witness_json(const Transducer& t,
                                        const Word& input, int start1,
                                        const std::vector<int>& run1,
                                        const Word& out1, int start2,
                                        const std::vector<int>& run2,
                                        const Word& out2,
                                        const std::string& claim) {
  nlohmann::json j;
  j["kind"] = "runs";
  j["claim"] = claim;
  j["machine"] = machine_to_json(t);
  j["input"] = word_to_json(input, t.input_alphabet);
  j["start1"] = t.states[start1];
  j["start2"] = t.states[start2];
  j["run1"] = run1;
  j["run2"] = run2;
  j["out1"] = word_to_json(out1, t.output_alphabet);
  j["out2"] = word_to_json(out2, t.output_alphabet);
  return j;
}

inline nlohmann::json runs_witness_json(const Transducer& t,
                                        const FunctionalityWitness& w,
                                        const std::string& claim) {
  return runs_witness_json(t, w.input, w.start1, w.run1, w.out1, w.start2,
                           w.run2, w.out2, claim);
}

inline nlohmann::json runs_witness_json(const Transducer& t,
                                        const AmbiguityWitness& w) {
  auto produced = [&](int start, const std::vector<int>& run) {
    Word out;
    int q = start;
    for (int e : run) {
      out = concat(out, t.transitions[e].output);
      q = t.transitions[e].to;
    }
    return concat(out, t.finals.at(q));
  };
  return runs_witness_json(t, w.input, w.start1, w.run1,
                           produced(w.start1, w.run1), w.start2, w.run2,
                           produced(w.start2, w.run2), "distinct-runs");
}

struct VerifyResult {
  bool ok = false;
  std::string message;
};

namespace detail {

inline int state_index(const Transducer& t, const std::string& name) {
  for (size_t i = 0; i < t.states.size(); i++)
    if (t.states[i] == name) return (int)i;
  throw ParseError("unknown state " + name);
}

inline VerifyResult verify_pattern(const nlohmann::json& j) {
  Transducer t = machine_from_json(j.at("machine"));
  TwinningPattern w;
  w.p1 = state_index(t, j.at("p1").get<std::string>());
  w.p2 = state_index(t, j.at("p2").get<std::string>());
  w.q1 = state_index(t, j.at("q1").get<std::string>());
  w.q2 = state_index(t, j.at("q2").get<std::string>());
  w.u = word_from_json(j.at("u"), t.input_alphabet);
  w.v = word_from_json(j.at("v"), t.input_alphabet);
  w.u1 = word_from_json(j.at("u1"), t.output_alphabet);
  w.u2 = word_from_json(j.at("u2"), t.output_alphabet);
  w.v1 = word_from_json(j.at("v1"), t.output_alphabet);
  w.v2 = word_from_json(j.at("v2"), t.output_alphabet);
  w.stem1 = j.at("stem1").get<std::vector<int>>();
  w.stem2 = j.at("stem2").get<std::vector<int>>();
  w.cycle1 = j.at("cycle1").get<std::vector<int>>();
  w.cycle2 = j.at("cycle2").get<std::vector<int>>();

  std::string err;
  if (!replay_pattern(t, w, &err)) return {false, "replay failed: " + err};

  std::string claim = j.at("claim").get<std::string>();
  if (claim == "tp" || claim == "atp" || claim == "stp" || claim == "htp") {
    TwinProperty prop = claim == "tp"    ? TwinProperty::tp
                        : claim == "atp" ? TwinProperty::atp
                        : claim == "stp" ? TwinProperty::stp
                                         : TwinProperty::htp;
    HtpRange range = HtpRange::defn;
    if (j.contains("range") && j.at("range") == "proof")
      range = HtpRange::proof;
    if (claim == "stp" && w.p1 != w.p2)
      return {false, "stp pattern must start both stems in one state"};
    if (pattern_satisfies(w, prop, range))
      return {false, "pattern does not violate " + claim};
    return {true, "pattern replays and violates " + claim};
  }
  if (claim == "diff") {
    MetricKind m = MetricKind::levenshtein;
    if (j.contains("metric")) {
      std::string name = j.at("metric").get<std::string>();
      if (name == "hamming") m = MetricKind::hamming;
      if (name == "lcs") m = MetricKind::lcs;
      if (name == "damerau") m = MetricKind::damerau;
    }
    if (!diff_pattern_violates(w, m))
      return {false, "pattern does not witness unbounded diff"};
    return {true, "pattern replays and pumps the output distance"};
  }
  return {false, "unknown claim " + claim};
}

inline VerifyResult verify_runs(const nlohmann::json& j) {
  Transducer t = machine_from_json(j.at("machine"));
  Word input = word_from_json(j.at("input"), t.input_alphabet);
  int start1 = state_index(t, j.at("start1").get<std::string>());
  int start2 = state_index(t, j.at("start2").get<std::string>());
  auto run1 = j.at("run1").get<std::vector<int>>();
  auto run2 = j.at("run2").get<std::vector<int>>();
  Word out1 = word_from_json(j.at("out1"), t.output_alphabet);
  Word out2 = word_from_json(j.at("out2"), t.output_alphabet);

  auto accepting = [&](int start, const std::vector<int>& run,
                       const Word& out, std::string* err) {
    bool init = false;
    for (int i : t.initial) init = init || i == start;
    if (!init) return (*err = "start state is not initial"), false;
    if (run.size() != input.size())
      return (*err = "run length differs from input length"), false;
    int q = start;
    Word produced;
    for (size_t i = 0; i < run.size(); i++) {
      if (run[i] < 0 || run[i] >= (int)t.transitions.size())
        return (*err = "bad transition index"), false;
      const Transition& tr = t.transitions[run[i]];
      if (tr.from != q) return (*err = "broken chain"), false;
      if (tr.input != input[i]) return (*err = "input mismatch"), false;
      produced = concat(produced, tr.output);
      q = tr.to;
    }
    if (!t.finals.count(q)) return (*err = "run ends non-final"), false;
    if (concat(produced, t.finals.at(q)) != out)
      return (*err = "output mismatch"), false;
    return true;
  };
  std::string err;
  if (!accepting(start1, run1, out1, &err))
    return {false, "run1: " + err};
  if (!accepting(start2, run2, out2, &err))
    return {false, "run2: " + err};

  std::string claim = j.at("claim").get<std::string>();
  if (claim == "outputs-differ") {
    if (out1 == out2) return {false, "outputs are equal"};
    return {true, "two accepting runs with different outputs"};
  }
  if (claim == "lengths-differ") {
    if (out1.size() == out2.size())
      return {false, "output lengths are equal"};
    return {true, "two accepting runs with outputs of different length"};
  }
  if (claim == "distinct-runs") {
    if (start1 == start2 && run1 == run2)
      return {false, "the two runs are identical"};
    return {true, "two distinct accepting runs over one input"};
  }
  return {false, "unknown claim " + claim};
}

}  // namespace detail

// Replays a witness document (or the "witness" member of a report).
inline VerifyResult verify_witness(const nlohmann::json& doc) {
  try {
    const nlohmann::json& j = doc.contains("witness") ? doc.at("witness")
                                                      : doc;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "pattern") return detail::verify_pattern(j);
    if (kind == "runs") return detail::verify_runs(j);
    return {false, "unknown witness kind " + kind};
  } catch (const nlohmann::json::exception& e) {
    return {false, std::string("malformed witness: ") + e.what()};
  } catch (const ParseError& e) {
    return {false, std::string("malformed witness: ") + e.what()};
  }
}

}  // namespace transduce

#endif  // TRANSDUCE_REPORT_HPP_
