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
// Determinisation: the exact delay-subset construction for twinned
// functional transducers, and approximate constructions that trade exact
// equality for a bounded edit or Hamming distance. The approximate
// pipelines decompose the machine into component-chain paths, determinise
// each path blockwise and recombine the resulting sequential machines.

#ifndef TRANSDUCE_DETERMINISE_HPP_
#define TRANSDUCE_DETERMINISE_HPP_

#include <optional>

#include "transduce/twinning.hpp"

namespace transduce {

struct PreconditionFailed : std::runtime_error {
  std::string property;
  std::optional<PropertyVerdict> verdict;
  std::optional<FunctionalityWitness> functionality;
  PreconditionFailed(const std::string& prop, PropertyVerdict v)
      : std::runtime_error("precondition failed: " + prop),
        property(prop),
        verdict(std::move(v)) {}
  PreconditionFailed(const std::string& prop, FunctionalityWitness w)
      : std::runtime_error("precondition failed: " + prop),
        property(prop),
        functionality(std::move(w)) {}
};

struct NotApproximatelyDeterminisable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PathExplosion : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SuffixOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatch budget for the Hamming constructions.
inline size_t hamming_bound(const Transducer& t) {
  size_t n = t.states.size();
  return max_output_len(t) * n * n * n * n;
}

// Subset states of the three constructions. Items are kept sorted so the
// structs can serve as map keys.
struct DelaySubsetState {
  std::vector<std::pair<int, Word>> items;  // (state, pending output)
  bool operator<(const DelaySubsetState& o) const { return items < o.items; }
};
struct BulletSubsetState {
  std::vector<int> states;  // active run states
  int bullet = -1;          // the run currently copied to the output
  bool operator<(const BulletSubsetState& o) const {
    return std::tie(states, bullet) < std::tie(o.states, o.bullet);
  }
};
struct SuffixSubsetState {
  std::vector<std::pair<int, Word>> items;  // (state or -1 dead, buffer)
  bool operator<(const SuffixSubsetState& o) const {
    return items < o.items;
  }
};

// A transducer whose states are layered into blocks: transitions inside a
// block are input-deterministic, transitions across blocks go strictly
// forward. Nondeterminism is confined to block changes.
struct SeriesSequential {
  Transducer t;
  std::vector<int> block;  // per state
};

namespace detail {

inline std::string subset_name(const Transducer& t,
                               const std::vector<std::pair<int, Word>>& xs) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); i++) {
    if (i) s += ",";
    s += xs[i].first < 0 ? "-" : t.states[xs[i].first];
    if (!xs[i].second.empty()) {
      s += ":";
      for (Sym c : xs[i].second) s += t.output_alphabet[c];
    }
  }
  return s + "}";
}

}  // namespace detail

// Layer the states of `t` by longest path over its component condensation
// and validate the series-sequential shape.
inline SeriesSequential series_view(const Transducer& t) {
  SccDecomposition d = scc(t);
  std::vector<int> level(d.count, 0);
  for (int c = 0; c < d.count; c++)  // comp ids are topologically sorted
    for (int succ : d.dag[c]) level[succ] = std::max(level[succ], level[c] + 1);
  SeriesSequential s;
  s.t = t;
  s.block.resize(t.states.size());
  for (size_t q = 0; q < t.states.size(); q++) s.block[q] = level[d.comp[q]];
  std::map<std::pair<int, Sym>, int> inner;
  for (const Transition& tr : t.transitions) {
    if (s.block[tr.from] > s.block[tr.to])
      throw std::invalid_argument("backward transition across blocks");
    if (s.block[tr.from] == s.block[tr.to] &&
        ++inner[{tr.from, tr.input}] > 1)
      throw std::invalid_argument("input nondeterminism inside a block");
  }
  return s;
}

// Classical delay-subset determinisation. Requires a functional machine
// with the twinning property; refused with a witness otherwise.
inline SequentialTransducer exact_determinise(const Transducer& t,
                                              size_t cap = 200000) {
  Transducer w = trim(t);
  if (auto f = find_functionality_violation(w))
    throw PreconditionFailed("functional", *f);
  if (PropertyVerdict v = check_tp(w); !v.holds)
    throw PreconditionFailed("tp", std::move(v));

  SequentialTransducer r;
  r.input_alphabet = w.input_alphabet;
  r.output_alphabet = w.output_alphabet;
  if (w.states.empty()) return r;

  auto out = out_index(w);
  std::map<DelaySubsetState, int> ids;
  std::vector<DelaySubsetState> keys;
  std::queue<int> work;
  auto intern = [&](DelaySubsetState x) {
    auto it = ids.find(x);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw CapExceeded("determinisation state cap");
    int id = (int)keys.size();
    ids.emplace(x, id);
    keys.push_back(std::move(x));
    r.states.push_back(detail::subset_name(w, keys.back().items));
    work.push(id);
    return id;
  };
  DelaySubsetState init;
  for (int i : w.initial) init.items.push_back({i, {}});
  std::sort(init.items.begin(), init.items.end());
  r.initial = {intern(std::move(init))};

  while (!work.empty()) {
    int id = work.front();
    work.pop();
    DelaySubsetState cur = keys[id];  // copy: keys may reallocate
    for (Sym a = 0; a < (Sym)w.input_alphabet.size(); a++) {
      std::map<int, Word> next;  // unique pending word per state
      bool any = false;
      for (const auto& [q, u] : cur.items) {
        for (int e : out[q]) {
          const Transition& tr = w.transitions[e];
          if (tr.input != a) continue;
          Word v = concat(u, tr.output);
          auto [it, fresh] = next.try_emplace(tr.to, v);
          if (!fresh && it->second != v)
            throw std::logic_error(
                "two pending outputs at one state of a functional machine");
          any = true;
        }
      }
      if (!any) continue;
      Word common;
      bool first = true;
      for (const auto& [q, u] : next) {
        common = first ? u : lcp(common, u);
        first = false;
      }
      DelaySubsetState succ;
      for (const auto& [q, u] : next)
        succ.items.push_back({q, Word(u.begin() + common.size(), u.end())});
      int to = intern(std::move(succ));
      r.transitions.push_back({id, a, common, to});
    }
  }
  for (size_t id = 0; id < keys.size(); id++) {
    std::optional<Word> fin;
    for (const auto& [q, u] : keys[id].items) {
      auto it = w.finals.find(q);
      if (it == w.finals.end()) continue;
      Word v = concat(u, it->second);
      if (fin && *fin != v)
        throw std::logic_error(
            "two final outputs at one subset of a functional machine");
      fin = v;
    }
    if (fin) r.finals[(int)id] = *fin;
  }
  return trim(r);
}

// Every run of a trim machine follows a chain of strongly connected
// components with one bridging transition between consecutive ones. One
// machine per (chain, bridge choice): its component graph is a chain, its
// finals live in the last component, and the union of all path machines is
// the original relation.
inline std::vector<Transducer> scc_path_decompose(const Transducer& t,
                                                  size_t max_paths = 4096) {
  Transducer w = trim(t);
  std::vector<Transducer> paths;
  if (w.states.empty()) return paths;
  SccDecomposition d = scc(w);

  std::vector<char> comp_has_initial(d.count, 0), comp_has_final(d.count, 0);
  for (int i : w.initial) comp_has_initial[d.comp[i]] = 1;
  for (const auto& [q, u] : w.finals) comp_has_final[d.comp[q]] = 1;
  std::vector<std::vector<int>> bridges_from(d.count);  // transition ids
  for (int i = 0; i < (int)w.transitions.size(); i++)
    if (d.comp[w.transitions[i].from] != d.comp[w.transitions[i].to])
      bridges_from[d.comp[w.transitions[i].from]].push_back(i);

  auto emit = [&](const std::vector<int>& comps,
                  const std::vector<int>& bridge) {
    Transducer p;
    p.input_alphabet = w.input_alphabet;
    p.output_alphabet = w.output_alphabet;
    std::set<int> on(comps.begin(), comps.end());
    std::vector<int> remap(w.states.size(), -1);
    for (size_t q = 0; q < w.states.size(); q++)
      if (on.count(d.comp[q])) {
        remap[q] = (int)p.states.size();
        p.states.push_back(w.states[q]);
      }
    for (int i : w.initial)
      if (d.comp[i] == comps.front()) p.initial.push_back(remap[i]);
    std::set<int> chosen(bridge.begin(), bridge.end());
    for (int i = 0; i < (int)w.transitions.size(); i++) {
      const Transition& tr = w.transitions[i];
      if (remap[tr.from] < 0 || remap[tr.to] < 0) continue;
      bool same = d.comp[tr.from] == d.comp[tr.to];
      if (!same && !chosen.count(i)) continue;
      p.transitions.push_back(
          {remap[tr.from], tr.input, tr.output, remap[tr.to]});
    }
    for (const auto& [q, u] : w.finals)
      if (d.comp[q] == comps.back()) p.finals[remap[q]] = u;
    Transducer r = trim(p);
    if (!r.states.empty()) paths.push_back(std::move(r));
  };

  std::vector<int> comps, bridge;
  std::function<void(int)> go = [&](int c) {
    comps.push_back(c);
    if (comp_has_final[c]) {
      if (paths.size() >= max_paths)
        throw PathExplosion("path decomposition cap exceeded");
      emit(comps, bridge);
    }
    for (int e : bridges_from[c]) {
      bridge.push_back(e);
      go(d.comp[w.transitions[e].to]);
      bridge.pop_back();
    }
    comps.pop_back();
  };
  for (int c = 0; c < d.count; c++)
    if (comp_has_initial[c]) go(c);
  return paths;
}

// Blockwise delay-subset determinisation of a path machine. Inside each
// component the construction is the classical one except that one state
// may carry several pending outputs; a bridging transition flushes the
// pending output and restarts the subset in the next block.
inline SeriesSequential determinise_sccs(const Transducer& t,
                                         size_t cap = 200000) {
  Transducer w = trim(t);
  SeriesSequential r;
  r.t.input_alphabet = w.input_alphabet;
  r.t.output_alphabet = w.output_alphabet;
  if (w.states.empty()) return r;
  SccDecomposition d = scc(w);
  for (int i : w.initial)
    if (d.comp[i] != d.comp[w.initial[0]])
      throw std::invalid_argument("initial states span several components");
  auto out = out_index(w);

  std::map<DelaySubsetState, int> ids;
  std::vector<DelaySubsetState> keys;
  std::queue<int> work;
  auto block_of = [&](const DelaySubsetState& x) {
    return d.comp[x.items.front().first];
  };
  auto intern = [&](DelaySubsetState x) {
    std::sort(x.items.begin(), x.items.end());
    x.items.erase(std::unique(x.items.begin(), x.items.end()),
                  x.items.end());
    auto it = ids.find(x);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw CapExceeded("determinisation state cap");
    int id = (int)keys.size();
    ids.emplace(x, id);
    keys.push_back(std::move(x));
    r.t.states.push_back(detail::subset_name(w, keys.back().items));
    r.block.push_back(block_of(keys.back()));
    work.push(id);
    return id;
  };
  DelaySubsetState init;
  for (int i : w.initial) init.items.push_back({i, {}});
  r.t.initial = {intern(std::move(init))};

  while (!work.empty()) {
    int id = work.front();
    work.pop();
    DelaySubsetState cur = keys[id];  // copy: keys may reallocate
    int blk = block_of(cur);
    for (Sym a = 0; a < (Sym)w.input_alphabet.size(); a++) {
      DelaySubsetState inner;
      for (const auto& [q, u] : cur.items) {
        for (int e : out[q]) {
          const Transition& tr = w.transitions[e];
          if (tr.input != a) continue;
          Word v = concat(u, tr.output);
          if (d.comp[tr.to] == blk) {
            inner.items.push_back({tr.to, v});
          } else {
            // One bridge edge per (pending run, bridging transition).
            int to = intern(DelaySubsetState{{{tr.to, {}}}});
            r.t.transitions.push_back({id, a, v, to});
          }
        }
      }
      if (inner.items.empty()) continue;
      Word common = inner.items.front().second;
      for (const auto& [q, u] : inner.items) common = lcp(common, u);
      for (auto& [q, u] : inner.items)
        u = Word(u.begin() + common.size(), u.end());
      int to = intern(std::move(inner));
      r.t.transitions.push_back({id, a, common, to});
    }
  }
  for (size_t id = 0; id < keys.size(); id++) {
    std::optional<std::pair<int, Word>> best;
    for (const auto& [q, u] : keys[id].items) {
      auto it = w.finals.find(q);
      if (it == w.finals.end()) continue;
      if (!best || q < best->first) best = {q, concat(u, it->second)};
    }
    if (best) r.t.finals[(int)id] = best->second;
  }
  return r;
}

// Bullet construction for the Levenshtein family: track the full set of
// active runs but copy only one of them (the bullet) to the output. The
// bullet follows its own transitions, preferring earlier blocks; when it
// dies it jumps to an active run without emitting anything.
inline SequentialTransducer approx_seq_from_series_lev(
    const SeriesSequential& s, size_t cap = 200000) {
  const Transducer& t = s.t;
  SequentialTransducer r;
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  if (t.states.empty()) return r;
  auto out = out_index(t);

  std::map<BulletSubsetState, int> ids;
  std::vector<BulletSubsetState> keys;
  std::queue<int> work;
  auto intern = [&](BulletSubsetState x) {
    auto it = ids.find(x);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw CapExceeded("bullet state cap");
    int id = (int)keys.size();
    ids.emplace(x, id);
    std::string name = "(";
    for (size_t i = 0; i < x.states.size(); i++)
      name += (i ? "," : "") + t.states[x.states[i]];
    name += ")*" + t.states[x.bullet];
    keys.push_back(std::move(x));
    r.states.push_back(name);
    work.push(id);
    return id;
  };
  BulletSubsetState init;
  init.states = t.initial;
  std::sort(init.states.begin(), init.states.end());
  init.bullet = *std::min_element(
      t.initial.begin(), t.initial.end(), [&](int a, int b) {
        return std::pair(s.block[a], a) < std::pair(s.block[b], b);
      });
  r.initial = {intern(std::move(init))};

  while (!work.empty()) {
    int id = work.front();
    work.pop();
    BulletSubsetState cur = keys[id];  // copy: keys may reallocate
    for (Sym a = 0; a < (Sym)t.input_alphabet.size(); a++) {
      std::set<int> succ;
      for (int q : cur.states)
        for (int e : out[q])
          if (t.transitions[e].input == a) succ.insert(t.transitions[e].to);
      if (succ.empty()) continue;
      int chosen = -1;  // the bullet's own transition, if any
      for (int e : out[cur.bullet]) {
        if (t.transitions[e].input != a) continue;
        if (chosen < 0 ||
            std::pair(s.block[t.transitions[e].to], e) <
                std::pair(s.block[t.transitions[chosen].to], chosen))
          chosen = e;
      }
      BulletSubsetState next;
      next.states.assign(succ.begin(), succ.end());
      Word emitted;
      if (chosen >= 0) {
        next.bullet = t.transitions[chosen].to;
        emitted = t.transitions[chosen].output;
      } else {
        // Forced switch: the bullet run died; adopt an active run without
        // emitting, so the copied outputs stay a factor-wise mix.
        next.bullet = *std::min_element(
            next.states.begin(), next.states.end(), [&](int x, int y) {
              return std::pair(s.block[x], x) < std::pair(s.block[y], y);
            });
      }
      int to = intern(std::move(next));
      r.transitions.push_back({id, a, emitted, to});
    }
  }
  for (size_t id = 0; id < keys.size(); id++) {
    int best = -1;
    for (int q : keys[id].states)
      if (t.is_final(q) && (best < 0 || q < best)) best = q;
    if (best >= 0) r.finals[(int)id] = t.finals.at(best);
  }
  return trim(r);
}

// Hamming variant of the series construction: every active run keeps a
// suffix buffer; each step emits exactly the shortest buffer's length,
// taken from the least pair, and drops that many symbols from every
// buffer. Output lengths then match the machine's own.
inline SequentialTransducer approx_seq_from_series_ham(
    const SeriesSequential& s, size_t cap = 200000) {
  const Transducer& t = s.t;
  SequentialTransducer r;
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  if (t.states.empty()) return r;
  auto out = out_index(t);

  auto precede = [&](const std::pair<int, Word>& a,
                     const std::pair<int, Word>& b) {
    return std::tuple(s.block[a.first], a.first, a.second) <
           std::tuple(s.block[b.first], b.first, b.second);
  };
  std::map<SuffixSubsetState, int> ids;
  std::vector<SuffixSubsetState> keys;
  std::queue<int> work;
  auto intern = [&](SuffixSubsetState x) {
    std::sort(x.items.begin(), x.items.end());
    x.items.erase(std::unique(x.items.begin(), x.items.end()),
                  x.items.end());
    auto it = ids.find(x);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw CapExceeded("suffix state cap");
    int id = (int)keys.size();
    ids.emplace(x, id);
    keys.push_back(std::move(x));
    r.states.push_back(detail::subset_name(t, keys.back().items));
    work.push(id);
    return id;
  };
  SuffixSubsetState init;
  for (int i : t.initial) init.items.push_back({i, {}});
  r.initial = {intern(std::move(init))};

  while (!work.empty()) {
    int id = work.front();
    work.pop();
    SuffixSubsetState cur = keys[id];  // copy: keys may reallocate
    for (Sym a = 0; a < (Sym)t.input_alphabet.size(); a++) {
      std::vector<std::pair<int, Word>> next;
      for (const auto& [q, u] : cur.items)
        for (int e : out[q]) {
          const Transition& tr = t.transitions[e];
          if (tr.input == a) next.push_back({tr.to, concat(u, tr.output)});
        }
      if (next.empty()) continue;
      size_t c = next.front().second.size();
      for (const auto& [q, u] : next) c = std::min(c, u.size());
      const std::pair<int, Word>* least = &next.front();
      for (const auto& p : next)
        if (precede(p, *least)) least = &p;
      Word emitted(least->second.begin(), least->second.begin() + c);
      SuffixSubsetState succ;
      for (const auto& [q, u] : next)
        succ.items.push_back({q, Word(u.begin() + c, u.end())});
      int to = intern(std::move(succ));
      r.transitions.push_back({id, a, emitted, to});
    }
  }
  for (size_t id = 0; id < keys.size(); id++) {
    const std::pair<int, Word>* best = nullptr;
    for (const auto& p : keys[id].items) {
      if (!t.is_final(p.first)) continue;
      if (!best || precede(p, *best)) best = &p;
    }
    if (best)
      r.finals[(int)id] = concat(best->second, t.finals.at(best->first));
  }
  return trim(r);
}

// Union of sequential machines for the Levenshtein family: run all of
// them in parallel, copy the output of the lowest-index machine that
// survives the step, take the final output of the lowest-index machine
// that accepts.
inline SequentialTransducer approx_seq_from_union_lev(
    const std::vector<SequentialTransducer>& ds, size_t cap = 200000) {
  SequentialTransducer r;
  if (ds.empty()) return r;
  r.input_alphabet = ds[0].input_alphabet;
  r.output_alphabet = ds[0].output_alphabet;
  size_t k = ds.size();
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& d : ds) out.push_back(out_index(d));

  std::map<std::vector<int>, int> ids;  // -1 = dead component
  std::vector<std::vector<int>> keys;
  std::queue<int> work;
  auto intern = [&](std::vector<int> x) {
    auto it = ids.find(x);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw CapExceeded("union state cap");
    int id = (int)keys.size();
    ids.emplace(x, id);
    std::string name = "<";
    for (size_t i = 0; i < x.size(); i++)
      name += (i ? "," : "") + (x[i] < 0 ? std::string("-")
                                         : ds[i].states[x[i]]);
    keys.push_back(std::move(x));
    r.states.push_back(name + ">");
    work.push(id);
    return id;
  };
  std::vector<int> init(k, -1);
  for (size_t i = 0; i < k; i++)
    if (!ds[i].initial.empty()) init[i] = ds[i].initial[0];
  r.initial = {intern(std::move(init))};

  while (!work.empty()) {
    int id = work.front();
    work.pop();
    std::vector<int> cur = keys[id];  // copy: keys may reallocate
    for (Sym a = 0; a < (Sym)r.input_alphabet.size(); a++) {
      std::vector<int> next(k, -1);
      Word emitted;
      bool any = false, first = true;
      for (size_t i = 0; i < k; i++) {
        if (cur[i] < 0) continue;
        for (int e : out[i][cur[i]]) {
          const Transition& tr = ds[i].transitions[e];
          if (tr.input != a) continue;
          next[i] = tr.to;
          any = true;
          if (first) emitted = tr.output, first = false;
          break;
        }
      }
      if (!any) continue;
      int to = intern(std::move(next));
      r.transitions.push_back({id, a, emitted, to});
    }
  }
  for (size_t id = 0; id < keys.size(); id++)
    for (size_t i = 0; i < k; i++) {
      int q = keys[id][i];
      if (q >= 0 && ds[i].is_final(q)) {
        r.finals[(int)id] = ds[i].finals.at(q);
        break;
      }
    }
  return trim(r);
}

// Hamming union: like the series variant, every live component buffers
// its pending output, each step emits the shortest buffer (lowest index
// first) and truncates the others, keeping output lengths aligned.
// Buffers beyond the mismatch budget abort the construction.
inline SequentialTransducer approx_seq_from_union_ham(
    const std::vector<SequentialTransducer>& ds, size_t suffix_cap,
    size_t cap = 200000) {
  SequentialTransducer r;
  if (ds.empty()) return r;
  r.input_alphabet = ds[0].input_alphabet;
  r.output_alphabet = ds[0].output_alphabet;
  size_t k = ds.size();
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& d : ds) out.push_back(out_index(d));

  std::map<SuffixSubsetState, int> ids;
  std::vector<SuffixSubsetState> keys;
  std::queue<int> work;
  auto intern = [&](SuffixSubsetState x) {
    for (const auto& [q, u] : x.items)
      if (u.size() >= suffix_cap)
        throw SuffixOverflow("pending suffix exceeds the mismatch budget");
    auto it = ids.find(x);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw CapExceeded("union state cap");
    int id = (int)keys.size();
    ids.emplace(x, id);
    std::string name = "<";
    for (size_t i = 0; i < x.items.size(); i++) {
      if (i) name += ",";
      name += x.items[i].first < 0 ? "-" : ds[i].states[x.items[i].first];
      if (!x.items[i].second.empty())
        name += "+" + std::to_string(x.items[i].second.size());
    }
    keys.push_back(std::move(x));
    r.states.push_back(name + ">");
    work.push(id);
    return id;
  };
  SuffixSubsetState init;
  init.items.assign(k, {-1, {}});
  for (size_t i = 0; i < k; i++)
    if (!ds[i].initial.empty()) init.items[i].first = ds[i].initial[0];
  r.initial = {intern(std::move(init))};

  while (!work.empty()) {
    int id = work.front();
    work.pop();
    SuffixSubsetState cur = keys[id];  // copy: keys may reallocate
    for (Sym a = 0; a < (Sym)r.input_alphabet.size(); a++) {
      SuffixSubsetState next;
      next.items.assign(k, {-1, {}});
      bool any = false;
      for (size_t i = 0; i < k; i++) {
        const auto& [q, u] = cur.items[i];
        if (q < 0) continue;
        for (int e : out[i][q]) {
          const Transition& tr = ds[i].transitions[e];
          if (tr.input != a) continue;
          next.items[i] = {tr.to, concat(u, tr.output)};
          any = true;
          break;
        }
      }
      if (!any) continue;
      size_t c = SIZE_MAX;
      for (const auto& [q, u] : next.items)
        if (q >= 0) c = std::min(c, u.size());
      Word emitted;
      for (const auto& [q, u] : next.items)
        if (q >= 0 && u.size() == c) {
          emitted = Word(u.begin(), u.begin() + c);
          break;
        }
      for (auto& [q, u] : next.items)
        if (q >= 0) u = Word(u.begin() + c, u.end());
      int to = intern(std::move(next));
      r.transitions.push_back({id, a, emitted, to});
    }
  }
  for (size_t id = 0; id < keys.size(); id++)
    for (size_t i = 0; i < k; i++) {
      const auto& [q, u] = keys[id].items[i];
      if (q >= 0 && ds[i].is_final(q)) {
        r.finals[(int)id] = concat(u, ds[i].finals.at(q));
        break;
      }
    }
  return trim(r);
}

namespace detail {

// Shared front of the approximate pipelines: trim, require a (possibly
// disambiguated) functional machine, check the two properties, decompose.
inline Transducer pipeline_front(const Transducer& t) {
  Transducer w = trim(t);
  if (auto f = find_functionality_violation(w))
    throw PreconditionFailed("functional", *f);
  if (!is_unambiguous(w)) w = disambiguate(w);
  return w;
}

}  // namespace detail

// Approximate determinisation for the Levenshtein family: the result is a
// sequential machine within bounded edit distance of the input function.
inline SequentialTransducer approx_determinise_lev(const Transducer& t,
                                                   size_t cap = 200000) {
  Transducer w = detail::pipeline_front(t);
  if (PropertyVerdict v = check_atp(w); !v.holds)
    throw PreconditionFailed("atp", std::move(v));
  if (PropertyVerdict v = check_stp(w); !v.holds)
    throw PreconditionFailed("stp", std::move(v));
  std::vector<SequentialTransducer> parts;
  for (const Transducer& p : scc_path_decompose(w))
    parts.push_back(approx_seq_from_series_lev(determinise_sccs(p, cap), cap));
  return approx_seq_from_union_lev(parts, cap);
}

// Approximate determinisation for the Hamming distance: output lengths
// match exactly and the number of mismatches stays bounded.
inline SequentialTransducer approx_determinise_ham(
    const Transducer& t, HtpRange range = HtpRange::defn,
    size_t cap = 200000) {
  Transducer w = detail::pipeline_front(t);
  if (PropertyVerdict v = check_htp(w, range); !v.holds)
    throw PreconditionFailed("htp", std::move(v));
  if (PropertyVerdict v = check_stp(w); !v.holds)
    throw PreconditionFailed("stp", std::move(v));
  std::vector<SequentialTransducer> parts;
  for (const Transducer& p : scc_path_decompose(w))
    parts.push_back(approx_seq_from_series_ham(determinise_sccs(p, cap), cap));
  return approx_seq_from_union_ham(parts, hamming_bound(w), cap);
}

}  // namespace transduce

#endif  // TRANSDUCE_DETERMINISE_HPP_
