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
// Real-time word transducers: the model, evaluation, product, and the
// structural predicates (trim, sequential, unambiguous, functional) plus
// disambiguation by lexicographically least run selection.

#ifndef TRANSDUCE_MACHINE_HPP_
#define TRANSDUCE_MACHINE_HPP_

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "transduce/words.hpp"

namespace transduce {

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFunctional : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Transition {
  int from;
  Sym input;   // exactly one symbol (real-time form)
  Word output;
  int to;
};

// A real-time nondeterministic transducer. The order of `states` is the
// declared priority order used for all tie-breaking downstream; transitions
// are likewise kept in declared order.
struct Transducer {
  std::vector<std::string> input_alphabet;
  std::vector<std::string> output_alphabet;
  std::vector<std::string> states;
  std::vector<int> initial;
  std::vector<Transition> transitions;
  std::map<int, Word> finals;  // state -> final output

  bool is_final(int q) const { return finals.count(q) != 0; }
};

// Sequential transducers share the representation; is_sequential checks the
// single-initial, input-deterministic restriction.
using SequentialTransducer = Transducer;

struct Run {
  int start = -1;
  std::vector<int> steps;  // transition indices
  Word produced;           // concatenated outputs, final output included
};

// Transition indices leaving each state, in declared order.
inline std::vector<std::vector<int>> out_index(const Transducer& t) {
  std::vector<std::vector<int>> out(t.states.size());
  for (size_t i = 0; i < t.transitions.size(); i++)
    out[t.transitions[i].from].push_back((int)i);
  return out;
}

// Longest output over transitions and final outputs; the M of all bounds.
inline size_t max_output_len(const Transducer& t) {
  size_t m = 0;
  for (const Transition& tr : t.transitions)
    m = std::max(m, tr.output.size());
  for (const auto& [q, w] : t.finals) m = std::max(m, w.size());
  return m;
}

inline std::vector<std::string> validate(const Transducer& t) {
  std::vector<std::string> bad;
  int n = (int)t.states.size();
  auto name = [&](int q) {
    return q >= 0 && q < n ? t.states[q] : "#" + std::to_string(q);
  };
  std::set<std::string> seen;
  for (const std::string& s : t.states)
    if (!seen.insert(s).second) bad.push_back("duplicate state name " + s);
  for (int q : t.initial)
    if (q < 0 || q >= n) bad.push_back("undeclared initial state " + name(q));
  for (size_t i = 0; i < t.transitions.size(); i++) {
    const Transition& tr = t.transitions[i];
    std::string where = "transition " + std::to_string(i);
    if (tr.from < 0 || tr.from >= n)
      bad.push_back(where + ": undeclared source " + name(tr.from));
    if (tr.to < 0 || tr.to >= n)
      bad.push_back(where + ": undeclared target " + name(tr.to));
    if (tr.input < 0 || tr.input >= (Sym)t.input_alphabet.size())
      bad.push_back(where + ": input symbol out of range");
    for (Sym s : tr.output)
      if (s < 0 || s >= (Sym)t.output_alphabet.size())
        bad.push_back(where + ": output symbol out of range");
  }
  for (const auto& [q, w] : t.finals) {
    if (q < 0 || q >= n) bad.push_back("undeclared final state " + name(q));
    for (Sym s : w)
      if (s < 0 || s >= (Sym)t.output_alphabet.size())
        bad.push_back("final output of " + name(q) + " out of range");
  }
  return bad;
}

// Keeps exactly the accessible and co-accessible part, preserving declared
// orders. May return the empty transducer.
inline Transducer trim(const Transducer& t) {
  int n = (int)t.states.size();
  std::vector<bool> acc(n, false), coacc(n, false);
  {
    std::queue<int> q;
    for (int i : t.initial)
      if (!acc[i]) acc[i] = true, q.push(i);
    auto out = out_index(t);
    while (!q.empty()) {
      int s = q.front();
      q.pop();
      for (int e : out[s]) {
        int d = t.transitions[e].to;
        if (!acc[d]) acc[d] = true, q.push(d);
      }
    }
  }
  {
    std::vector<std::vector<int>> in(n);
    for (const Transition& tr : t.transitions) in[tr.to].push_back(tr.from);
    std::queue<int> q;
    for (const auto& [s, w] : t.finals)
      if (!coacc[s]) coacc[s] = true, q.push(s);
    while (!q.empty()) {
      int s = q.front();
      q.pop();
      for (int p : in[s])
        if (!coacc[p]) coacc[p] = true, q.push(p);
    }
  }
  std::vector<int> remap(n, -1);
  Transducer r;
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  for (int s = 0; s < n; s++) {
    if (acc[s] && coacc[s]) {
      remap[s] = (int)r.states.size();
      r.states.push_back(t.states[s]);
    }
  }
  for (int i : t.initial)
    if (remap[i] >= 0) r.initial.push_back(remap[i]);
  for (const Transition& tr : t.transitions)
    if (remap[tr.from] >= 0 && remap[tr.to] >= 0)
      r.transitions.push_back({remap[tr.from], tr.input, tr.output,
                               remap[tr.to]});
  for (const auto& [s, w] : t.finals)
    if (remap[s] >= 0) r.finals[remap[s]] = w;
  return r;
}

inline bool is_trim(const Transducer& t) {
  Transducer r = trim(t);
  return r.states.size() == t.states.size() &&
         r.transitions.size() == t.transitions.size();
}

// All accepting runs over u, in lexicographic run order (initial list order,
// then transition list order at each step). Throws once more than cap
// accepting runs have been found.
inline std::vector<Run> accepting_runs(const Transducer& t, const Word& u,
                                       size_t cap = 100000) {
  auto out = out_index(t);
  std::vector<Run> result;
  struct Frame {
    int state;
    std::vector<int> steps;
    Word produced;
  };
  // Depth-first with explicit recursion over input positions.
  std::vector<Frame> stack;
  for (auto it = t.initial.rbegin(); it != t.initial.rend(); ++it)
    stack.push_back({*it, {}, {}});
  // Reorder so the first declared initial is popped last... we want
  // lexicographic order in `result`, so push in reverse and pop from back.
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    size_t pos = f.steps.size();
    if (pos == u.size()) {
      auto fin = t.finals.find(f.state);
      if (fin != t.finals.end()) {
        Run r;
        r.start = f.steps.empty() ? f.state : t.transitions[f.steps[0]].from;
        r.steps = f.steps;
        r.produced = concat(f.produced, fin->second);
        result.push_back(std::move(r));
        if (result.size() > cap)
          throw CapExceeded("accepting run cap exceeded");
      }
      continue;
    }
    for (auto it = out[f.state].rbegin(); it != out[f.state].rend(); ++it) {
      const Transition& tr = t.transitions[*it];
      if (tr.input != u[pos]) continue;
      Frame g;
      g.state = tr.to;
      g.steps = f.steps;
      g.steps.push_back(*it);
      g.produced = concat(f.produced, tr.output);
      stack.push_back(std::move(g));
    }
  }
  return result;
}

inline std::set<Word> evaluate(const Transducer& t, const Word& u,
                               size_t cap = 100000) {
  std::set<Word> out;
  for (const Run& r : accepting_runs(t, u, cap)) out.insert(r.produced);
  return out;
}

// --- Product ----------------------------------------------------------

// Synchronized product of two transducers over the same input alphabet,
// restricted to pairs reachable from I1 x I2. Outputs are kept as one word
// per track; downstream analyses need the per-track lengths.
struct PairEdge {
  int from;
  Sym input;
  Word out1, out2;
  int t1, t2;  // originating transition indices
  int to;
  int weight() const { return (int)out1.size() - (int)out2.size(); }
};

struct PairGraph {
  std::vector<std::pair<int, int>> nodes;
  std::vector<int> init_nodes;  // node ids
  std::vector<PairEdge> edges;
  std::vector<std::vector<int>> out;  // node id -> edge ids
  std::map<int, std::pair<Word, Word>> finals;  // node id -> final outputs

  int node_id(int a, int b) const {
    for (size_t i = 0; i < nodes.size(); i++)
      if (nodes[i] == std::make_pair(a, b)) return (int)i;
    return -1;
  }
};

inline PairGraph product(const Transducer& t1, const Transducer& t2,
                         const std::vector<std::pair<int, int>>& starts) {
  PairGraph g;
  std::map<std::pair<int, int>, int> index;
  auto intern = [&](int a, int b) {
    auto [it, fresh] = index.try_emplace({a, b}, (int)g.nodes.size());
    if (fresh) g.nodes.push_back({a, b});
    return it->second;
  };
  std::queue<int> work;
  for (auto [a, b] : starts) {
    size_t before = g.nodes.size();
    int id = intern(a, b);
    g.init_nodes.push_back(id);
    if (g.nodes.size() > before) work.push(id);
  }
  auto out1 = out_index(t1);
  auto out2 = out_index(t2);
  while (!work.empty()) {
    int id = work.front();
    work.pop();
    auto [a, b] = g.nodes[id];
    for (int e1 : out1[a]) {
      const Transition& x = t1.transitions[e1];
      for (int e2 : out2[b]) {
        const Transition& y = t2.transitions[e2];
        if (x.input != y.input) continue;
        size_t before = g.nodes.size();
        int to = intern(x.to, y.to);
        if (g.nodes.size() > before) work.push(to);
        g.edges.push_back({id, x.input, x.output, y.output, e1, e2, to});
      }
    }
  }
  g.out.assign(g.nodes.size(), {});
  for (size_t i = 0; i < g.edges.size(); i++)
    g.out[g.edges[i].from].push_back((int)i);
  for (size_t i = 0; i < g.nodes.size(); i++) {
    auto [a, b] = g.nodes[i];
    auto f1 = t1.finals.find(a);
    auto f2 = t2.finals.find(b);
    if (f1 != t1.finals.end() && f2 != t2.finals.end())
      g.finals[(int)i] = {f1->second, f2->second};
  }
  return g;
}

inline PairGraph product(const Transducer& t1, const Transducer& t2) {
  std::vector<std::pair<int, int>> starts;
  for (int a : t1.initial)
    for (int b : t2.initial) starts.push_back({a, b});
  return product(t1, t2, starts);
}

// Node ids from which a paired-final node is reachable.
inline std::vector<bool> coaccessible_nodes(const PairGraph& g) {
  std::vector<std::vector<int>> in(g.nodes.size());
  for (const PairEdge& e : g.edges) in[e.to].push_back(e.from);
  std::vector<bool> co(g.nodes.size(), false);
  std::queue<int> q;
  for (const auto& [n, fo] : g.finals)
    if (!co[n]) co[n] = true, q.push(n);
  while (!q.empty()) {
    int n = q.front();
    q.pop();
    for (int p : in[n])
      if (!co[p]) co[p] = true, q.push(p);
  }
  return co;
}

// --- Structural predicates --------------------------------------------

inline bool is_sequential(const Transducer& t) {
  if (t.initial.size() > 1) return false;
  std::set<std::pair<int, Sym>> seen;
  for (const Transition& tr : t.transitions)
    if (!seen.insert({tr.from, tr.input}).second) return false;
  return true;
}

// Two distinct accepting runs over the same input, as evidence.
struct AmbiguityWitness {
  Word input;
  std::vector<int> run1, run2;  // transition index sequences
  int start1 = -1, start2 = -1;
};

// Self-product of the underlying automaton with a divergence bit; ambiguous
// iff an accepting pair with the bit set is reachable.
inline std::optional<AmbiguityWitness> find_ambiguity(const Transducer& t) {
  PairGraph g = product(t, t);
  size_t n = g.nodes.size();
  // config = node * 2 + bit
  std::vector<int> parent(2 * n, -2), via(2 * n, -1);
  std::queue<int> work;
  for (size_t i = 0; i < g.init_nodes.size(); i++) {
    int id = g.init_nodes[i];
    auto [a, b] = g.nodes[id];
    int c = id * 2 + (a != b ? 1 : 0);
    if (parent[c] == -2) {
      parent[c] = -1;
      work.push(c);
    }
  }
  int hit = -1;
  while (!work.empty() && hit < 0) {
    int c = work.front();
    work.pop();
    int node = c / 2, bit = c % 2;
    if (bit && g.finals.count(node)) {
      hit = c;
      break;
    }
    for (int e : g.out[node]) {
      const PairEdge& pe = g.edges[e];
      int nb = (bit || pe.t1 != pe.t2) ? 1 : 0;
      int nc = pe.to * 2 + nb;
      if (parent[nc] == -2) {
        parent[nc] = c;
        via[nc] = e;
        work.push(nc);
      }
    }
  }
  if (hit < 0) return std::nullopt;
  AmbiguityWitness w;
  std::vector<int> path;
  for (int c = hit; parent[c] >= 0; c = parent[c]) path.push_back(via[c]);
  std::reverse(path.begin(), path.end());
  for (int e : path) {
    w.input.push_back(g.edges[e].input);
    w.run1.push_back(g.edges[e].t1);
    w.run2.push_back(g.edges[e].t2);
  }
  int first = path.empty() ? hit / 2 : g.edges[path.front()].from;
  w.start1 = g.nodes[first].first;
  w.start2 = g.nodes[first].second;
  return w;
}

inline bool is_unambiguous(const Transducer& t) {
  return !find_ambiguity(t).has_value();
}

// One input with two accepting runs producing different outputs.
struct FunctionalityWitness {
  Word input;
  std::vector<int> run1, run2;
  Word out1, out2;
  int start1 = -1, start2 = -1;
};

// Delay propagation over the co-accessible self-product. A co-accessible
// pair node can carry at most one delay in a functional transducer: any
// completion to a paired final pins the delay uniquely. So the machine is
// functional iff every node sees a single delay and every paired final
// reconciles it with the final outputs.
inline std::optional<FunctionalityWitness> find_functionality_violation(
    const Transducer& t) {
  PairGraph g = product(t, t);
  std::vector<bool> co = coaccessible_nodes(g);
  size_t bound =
      (t.states.size() * t.states.size() + 1) * std::max<size_t>(1, max_output_len(t));

  struct Config {
    int node;
    DelayPair d;
    int parent, via;
  };
  std::vector<Config> configs;
  std::map<std::pair<int, DelayPair>, int> seen;
  std::vector<std::vector<int>> at_node(g.nodes.size());
  std::queue<int> work;

  auto trace = [&](int c) {
    std::vector<int> path;
    for (; configs[c].parent >= 0; c = configs[c].parent)
      path.push_back(configs[c].via);
    std::reverse(path.begin(), path.end());
    return std::make_pair(path, configs[c].node);  // node = start node
  };
  auto outputs_of = [&](const std::vector<int>& path) {
    Word in, o1, o2;
    for (int e : path) {
      in.push_back(g.edges[e].input);
      o1 = concat(o1, g.edges[e].out1);
      o2 = concat(o2, g.edges[e].out2);
    }
    return std::make_tuple(in, o1, o2);
  };
  auto witness_from = [&](const std::vector<int>& path, int start_node) {
    FunctionalityWitness w;
    auto [in, o1, o2] = outputs_of(path);
    w.input = in;
    w.out1 = o1;
    w.out2 = o2;
    for (int e : path) {
      w.run1.push_back(g.edges[e].t1);
      w.run2.push_back(g.edges[e].t2);
    }
    w.start1 = g.nodes[start_node].first;
    w.start2 = g.nodes[start_node].second;
    return w;
  };

  // Forward path from `node` to any paired final, as edge ids.
  auto completion = [&](int node) {
    std::vector<int> par(g.nodes.size(), -2), via(g.nodes.size(), -1);
    std::queue<int> q;
    par[node] = -1;
    q.push(node);
    int end = g.finals.count(node) ? node : -1;
    while (!q.empty() && end < 0) {
      int n = q.front();
      q.pop();
      for (int e : g.out[n]) {
        int to = g.edges[e].to;
        if (par[to] != -2) continue;
        par[to] = n;
        via[to] = e;
        if (g.finals.count(to)) {
          end = to;
          break;
        }
        q.push(to);
      }
    }
    std::vector<int> path;
    for (int n = end; n != node; n = par[n]) path.push_back(via[n]);
    std::reverse(path.begin(), path.end());
    return std::make_pair(path, end);
  };

  for (size_t i = 0; i < g.init_nodes.size(); i++) {
    int id = g.init_nodes[i];
    if (!co[id]) continue;
    std::pair<int, DelayPair> key{id, {}};
    if (seen.count(key)) continue;
    seen[key] = (int)configs.size();
    at_node[id].push_back((int)configs.size());
    configs.push_back({id, {}, -1, -1});
    work.push((int)configs.size() - 1);
  }
  while (!work.empty()) {
    int c = work.front();
    work.pop();
    int node = configs[c].node;
    DelayPair d = configs[c].d;  // copy: configs may reallocate below
    auto fin = g.finals.find(node);
    if (fin != g.finals.end()) {
      Word a = concat(d.left, fin->second.first);
      Word b = concat(d.right, fin->second.second);
      if (a != b) {
        auto [path, start] = trace(c);
        return witness_from(path, start);
      }
    }
    for (int e : g.out[node]) {
      const PairEdge& pe = g.edges[e];
      if (!co[pe.to]) continue;
      DelayPair nd = delay(concat(d.left, pe.out1), concat(d.right, pe.out2));
      std::pair<int, DelayPair> key{pe.to, nd};
      if (seen.count(key)) continue;
      if (!at_node[pe.to].empty()) {
        // Second distinct delay at a co-accessible node: non-functional.
        // Complete both configurations to a paired final; at least one
        // yields two different outputs on the same input.
        int other = at_node[pe.to][0];
        auto [cpath, cend] = completion(pe.to);
        auto [cin, cx1, cx2] = outputs_of(cpath);
        const auto& fo = g.finals.at(cend);
        int cur = (int)configs.size();
        configs.push_back({pe.to, nd, c, e});
        for (int cand : {cur, other}) {
          auto [path, start] = trace(cand);
          std::vector<int> full = path;
          full.insert(full.end(), cpath.begin(), cpath.end());
          auto [in, o1, o2] = outputs_of(full);
          if (concat(o1, fo.first) != concat(o2, fo.second)) {
            FunctionalityWitness w = witness_from(full, start);
            w.out1 = concat(w.out1, fo.first);
            w.out2 = concat(w.out2, fo.second);
            return w;
          }
        }
        throw std::logic_error("delay conflict without output conflict");
      }
      if (nd.left.size() > bound || nd.right.size() > bound)
        throw std::logic_error("delay overflow without node conflict");
      seen[key] = (int)configs.size();
      at_node[pe.to].push_back((int)configs.size());
      configs.push_back({pe.to, nd, c, e});
      work.push((int)configs.size() - 1);
    }
  }
  return std::nullopt;
}

inline bool is_functional(const Transducer& t) {
  return !find_functionality_violation(t).has_value();
}

// --- Disambiguation ----------------------------------------------------

// Subset-tagged selection of the lexicographically least accepting run:
// states are (q, S) where S holds the states reachable by strictly smaller
// runs on the same input. (q, S) accepts iff q is final and no smaller run
// is still alive at a final state. Works on any transducer; the result is
// unambiguous, keeps the domain, and its graph is contained in the input's.
inline Transducer uniformise(const Transducer& t, size_t cap = 200000) {
  auto out = out_index(t);
  using Key = std::pair<int, std::vector<int>>;
  std::map<Key, int> index;
  std::vector<Key> keys;
  Transducer r;
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  auto intern = [&](const Key& k) {
    auto [it, fresh] = index.try_emplace(k, (int)keys.size());
    if (fresh) {
      keys.push_back(k);
      std::ostringstream name;
      name << t.states[k.first] << "|{";
      for (size_t i = 0; i < k.second.size(); i++)
        name << (i ? "," : "") << t.states[k.second[i]];
      name << "}";
      r.states.push_back(name.str());
      if (r.states.size() > cap) throw CapExceeded("uniformise state cap");
    }
    return it->second;
  };
  std::queue<int> work;
  for (size_t i = 0; i < t.initial.size(); i++) {
    std::vector<int> smaller(t.initial.begin(), t.initial.begin() + i);
    std::sort(smaller.begin(), smaller.end());
    smaller.erase(std::unique(smaller.begin(), smaller.end()), smaller.end());
    size_t before = keys.size();
    int id = intern({t.initial[i], smaller});
    r.initial.push_back(id);
    if (keys.size() > before) work.push(id);
  }
  while (!work.empty()) {
    int id = work.front();
    work.pop();
    auto [q, s] = keys[id];
    // group q's transitions by input symbol, in declared order
    std::map<Sym, std::vector<int>> byin;
    for (int e : out[q]) byin[t.transitions[e].input].push_back(e);
    for (auto& [a, edges] : byin) {
      std::set<int> ssucc;
      for (int p : s)
        for (int e : out[p])
          if (t.transitions[e].input == a) ssucc.insert(t.transitions[e].to);
      std::set<int> earlier;
      for (int e : edges) {
        std::vector<int> ns(ssucc.begin(), ssucc.end());
        for (int x : earlier)
          if (!ssucc.count(x)) ns.push_back(x);
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        size_t before = keys.size();
        int to = intern({t.transitions[e].to, ns});
        if (keys.size() > before) work.push(to);
        r.transitions.push_back({id, a, t.transitions[e].output, to});
        earlier.insert(t.transitions[e].to);
      }
    }
  }
  for (size_t id = 0; id < keys.size(); id++) {
    auto [q, s] = keys[id];
    auto fin = t.finals.find(q);
    if (fin == t.finals.end()) continue;
    bool blocked = false;
    for (int p : s)
      if (t.is_final(p)) blocked = true;
    if (!blocked) r.finals[(int)id] = fin->second;
  }
  return trim(r);
}

inline Transducer disambiguate(const Transducer& t, size_t cap = 200000) {
  if (auto w = find_functionality_violation(t))
    throw NotFunctional("disambiguate requires a functional transducer");
  return uniformise(t, cap);
}

// Deterministic single-run evaluation for sequential machines.
inline std::optional<Word> apply_sequential(const Transducer& d,
                                            const Word& u) {
  if (d.initial.empty()) return std::nullopt;
  auto out = out_index(d);
  int q = d.initial[0];
  Word produced;
  for (Sym a : u) {
    int next = -1;
    for (int e : out[q]) {
      if (d.transitions[e].input == a) {
        next = e;
        break;
      }
    }
    if (next < 0) return std::nullopt;
    produced = concat(produced, d.transitions[next].output);
    q = d.transitions[next].to;
  }
  auto fin = d.finals.find(q);
  if (fin == d.finals.end()) return std::nullopt;
  return concat(produced, fin->second);
}

}  // namespace transduce

#endif  // TRANSDUCE_MACHINE_HPP_
