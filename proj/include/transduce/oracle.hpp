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
// Brute-force ground truth: exhaustive bounded evaluation, empirical
// distance profiles, plateau detection and seeded random machine generation
// for differential testing.

#ifndef TRANSDUCE_ORACLE_HPP_
#define TRANSDUCE_ORACLE_HPP_

#include <functional>
#include <random>
#include <string>

#include "transduce/machine.hpp"

namespace transduce {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GenerationExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// input word -> set of outputs; only words in the domain appear.
using OutputSet = std::map<Word, std::set<Word>>;

inline OutputSet enumerate_outputs(const Transducer& t, size_t max_len,
                                   size_t budget = 10000000) {
  OutputSet result;
  auto out = out_index(t);
  using Config = std::pair<int, Word>;  // (state, produced so far)
  std::set<Config> start;
  for (int i : t.initial) start.insert({i, {}});

  size_t used = 0;
  // Depth-first over the input tree; configurations are deduplicated per
  // input word, and the budget counts configurations created.
  std::function<void(const Word&, const std::set<Config>&)> go =
      [&](const Word& u, const std::set<Config>& configs) {
        std::set<Word> outs;
        for (const auto& [q, w] : configs) {
          auto fin = t.finals.find(q);
          if (fin != t.finals.end()) outs.insert(concat(w, fin->second));
        }
        if (!outs.empty()) result[u] = outs;
        if (u.size() == max_len) return;
        for (Sym a = 0; a < (Sym)t.input_alphabet.size(); a++) {
          std::set<Config> next;
          for (const auto& [q, w] : configs) {
            for (int e : out[q]) {
              const Transition& tr = t.transitions[e];
              if (tr.input != a) continue;
              next.insert({tr.to, concat(w, tr.output)});
              if (++used > budget)
                throw BudgetExceeded("run tree budget exceeded");
            }
          }
          if (next.empty()) continue;
          Word v = u;
          v.push_back(a);
          go(v, next);
        }
      };
  go({}, start);
  return result;
}

struct DistanceProfile {
  std::vector<DistanceValue> values;  // index = input length bound
  MetricKind metric = MetricKind::levenshtein;
  std::string lhs, rhs;
};

// Cumulative sup over inputs of length <= l of the Hausdorff distance of
// the two output sets; Infinite from the first length where the domains
// disagree. Collapses to the plain function distance for functional inputs.
inline DistanceProfile empirical_distance(const Transducer& t1,
                                          const Transducer& t2, MetricKind m,
                                          size_t max_len,
                                          size_t budget = 10000000) {
  OutputSet o1 = enumerate_outputs(t1, max_len, budget);
  OutputSet o2 = enumerate_outputs(t2, max_len, budget);
  DistanceProfile p;
  p.metric = m;
  std::map<size_t, DistanceValue> per_len;
  std::set<Word> keys;
  for (const auto& [u, v] : o1) keys.insert(u);
  for (const auto& [u, v] : o2) keys.insert(u);
  for (const Word& u : keys) {
    auto i1 = o1.find(u);
    auto i2 = o2.find(u);
    DistanceValue d;
    if (i1 == o1.end() || i2 == o2.end()) {
      d = DistanceValue::inf();  // domain mismatch
    } else {
      d = hausdorff(m, i1->second, i2->second);
    }
    auto [it, fresh] = per_len.try_emplace(u.size(), d);
    if (!fresh && it->second < d) it->second = d;
  }
  DistanceValue acc = DistanceValue::of(0);
  for (size_t l = 0; l <= max_len; l++) {
    auto it = per_len.find(l);
    if (it != per_len.end() && acc < it->second) acc = it->second;
    p.values.push_back(acc);
  }
  return p;
}

inline bool plateau(const DistanceProfile& p, size_t window = 5) {
  if (window < 2 || p.values.size() < window) return false;
  const DistanceValue& last = p.values.back();
  if (last.infinite) return false;
  for (size_t i = p.values.size() - window; i < p.values.size(); i++)
    if (p.values[i] != last) return false;
  return true;
}

struct GeneratorParams {
  std::uint64_t seed = 1;
  int state_count = 3;
  int input_alphabet_size = 2;
  int output_alphabet_size = 2;
  int max_output_len = 2;
  double density = 0.3;
  bool trim_required = true;
};

// Deterministic from the seed. When trim_required, rejection-samples fresh
// draws from the same stream until the trimmed machine is nonempty.
inline Transducer random_transducer(const GeneratorParams& g) {
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> outlen(0, g.max_output_len);
  std::uniform_int_distribution<int> outsym(0, g.output_alphabet_size - 1);
  std::uniform_int_distribution<int> anystate(0, g.state_count - 1);
  auto random_word = [&]() {
    Word w;
    int n = outlen(rng);
    for (int i = 0; i < n; i++) w.push_back(outsym(rng));
    return w;
  };
  for (int attempt = 0; attempt < 64; attempt++) {
    Transducer t;
    for (int i = 0; i < g.state_count; i++)
      t.states.push_back("s" + std::to_string(i));
    for (int i = 0; i < g.input_alphabet_size; i++)
      t.input_alphabet.push_back(std::string(1, (char)('a' + i)));
    for (int i = 0; i < g.output_alphabet_size; i++)
      t.output_alphabet.push_back(std::string(1, (char)('a' + i)));
    t.initial.push_back(0);
    for (int q = 0; q < g.state_count; q++)
      for (Sym a = 0; a < (Sym)g.input_alphabet_size; a++)
        for (int p = 0; p < g.state_count; p++)
          if (coin(rng) < g.density)
            t.transitions.push_back({q, a, random_word(), p});
    for (int q = 0; q < g.state_count; q++)
      if (coin(rng) < 0.5) t.finals[q] = random_word();
    if (t.finals.empty()) t.finals[anystate(rng)] = random_word();
    if (!g.trim_required) return t;
    Transducer r = trim(t);
    if (!r.states.empty()) return r;
  }
  throw GenerationExhausted("no trim machine within retry budget");
}

}  // namespace transduce

#endif  // TRANSDUCE_ORACLE_HPP_
