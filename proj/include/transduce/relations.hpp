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
// Rational relations beyond functions: whether the outputs a relation
// assigns to one input stay within bounded distance of each other
// (diff-finiteness), and approximate determinisation through a functional
// selection of the relation.

#ifndef TRANSDUCE_RELATIONS_HPP_
#define TRANSDUCE_RELATIONS_HPP_

#include "transduce/determinise.hpp"
#include "transduce/oracle.hpp"

namespace transduce {

// Ordered pairs of outputs per input word; the brute-force semantics that
// diff_finite decides.
struct OutputPairRelation {
  std::map<Word, std::set<std::pair<Word, Word>>> pairs;
};

inline OutputPairRelation output_pairs(const Transducer& t, size_t max_len,
                                       size_t budget = 10000000) {
  OutputPairRelation r;
  for (const auto& [u, vs] : enumerate_outputs(t, max_len, budget))
    for (const Word& a : vs)
      for (const Word& b : vs) r.pairs[u].insert({a, b});
  return r;
}

struct DiffVerdict {
  bool finite = true;
  MetricKind metric = MetricKind::levenshtein;
  std::optional<TwinningPattern> pattern;    // pumpable divergence
  std::optional<FunctionalityWitness> runs;  // outputs of unequal length
  std::string notes;
};

struct DiffUnbounded : NotApproximatelyDeterminisable {
  DiffVerdict verdict;
  explicit DiffUnbounded(DiffVerdict v)
      : NotApproximatelyDeterminisable("output distance unbounded under " +
                                       std::string(metric_name(v.metric))),
        verdict(std::move(v)) {}
};

// Whether a pattern certifies unbounded output distance when its loop is
// pumped: non-conjugate loop outputs for the edit family, an unbalanced
// loop or a mismatch with both positions strictly inside the loop for
// Hamming.
inline bool diff_pattern_violates(const TwinningPattern& w, MetricKind m) {
  if (m != MetricKind::hamming) return !is_conjugate(w.v1, w.v2);
  if (w.v1.size() != w.v2.size()) return true;
  Word a = concat(w.u1, w.v1);
  Word b = concat(w.u2, w.v2);
  size_t lo = std::max(w.u1.size(), w.u2.size()) + 1;
  size_t hi = std::min(a.size(), b.size());
  for (size_t i = lo; i <= hi; i++)
    if (a[i - 1] != b[i - 1]) return true;
  return false;
}

namespace detail {

// Induced subgraph on the kept nodes, preserving edge provenance.
inline PairGraph restrict_graph(const PairGraph& g,
                                const std::vector<bool>& keep) {
  PairGraph h;
  std::vector<int> remap(g.nodes.size(), -1);
  for (size_t i = 0; i < g.nodes.size(); i++)
    if (keep[i]) {
      remap[i] = (int)h.nodes.size();
      h.nodes.push_back(g.nodes[i]);
    }
  for (int i : g.init_nodes)
    if (remap[i] >= 0) h.init_nodes.push_back(remap[i]);
  h.out.assign(h.nodes.size(), {});
  for (const PairEdge& e : g.edges) {
    if (remap[e.from] < 0 || remap[e.to] < 0) continue;
    h.out[remap[e.from]].push_back((int)h.edges.size());
    PairEdge ne = e;
    ne.from = remap[e.from];
    ne.to = remap[e.to];
    h.edges.push_back(ne);
  }
  for (const auto& [n, fo] : g.finals)
    if (remap[n] >= 0) h.finals[remap[n]] = fo;
  return h;
}

// Closed-walk conjugacy over a pair graph, mirroring the approximate
// twinning layer 2 search.
inline std::optional<TwinningPattern> non_conjugate_walk(const PairGraph& g,
                                                         size_t budget) {
  size_t max_depth = 2 * std::max<size_t>(1, g.nodes.size());
  size_t used = 0;
  for (int anchor = 0; anchor < (int)g.nodes.size(); anchor++) {
    struct C {
      int cur;
      Word v1, v2;
      int parent, via;
    };
    std::vector<C> cs{{anchor, {}, {}, -1, -1}};
    std::map<std::tuple<int, Word, Word>, int> seen{
        {{anchor, Word{}, Word{}}, 0}};
    std::queue<std::pair<int, size_t>> q;
    q.push({0, 0});
    while (!q.empty()) {
      auto [c, depth] = q.front();
      q.pop();
      if (depth == max_depth) continue;
      for (int e : g.out[cs[c].cur]) {
        const PairEdge& pe = g.edges[e];
        Word nv1 = concat(cs[c].v1, pe.out1);
        Word nv2 = concat(cs[c].v2, pe.out2);
        std::tuple<int, Word, Word> key{pe.to, nv1, nv2};
        if (seen.count(key)) continue;
        if (++used > budget) return std::nullopt;
        int id = (int)cs.size();
        seen.emplace(std::move(key), id);
        cs.push_back({pe.to, nv1, nv2, c, e});
        q.push({id, depth + 1});
        if (pe.to == anchor && !is_conjugate(nv1, nv2)) {
          std::vector<int> cyc;
          for (int x = id; cs[x].parent >= 0; x = cs[x].parent)
            cyc.push_back(cs[x].via);
          std::reverse(cyc.begin(), cyc.end());
          auto [s, stem] = stem_to(g, anchor);
          return make_pattern(g, s, stem, cyc);
        }
      }
    }
  }
  return std::nullopt;
}

// Reachable (node, offset) configurations whose paired-final outputs fail
// to reconcile to equal total length yield one input with two outputs of
// different lengths.
inline std::optional<FunctionalityWitness> length_mismatch(
    const PairGraph& g, size_t cap = 10000) {
  struct C {
    int node;
    long long off;
    int parent, via;
  };
  std::vector<C> cs;
  std::set<std::pair<int, long long>> seen;
  std::queue<int> work;
  auto push = [&](int node, long long off, int parent, int via) {
    if (!seen.insert({node, off}).second) return;
    if (cs.size() >= cap) throw OffsetExplosion("offset cap exceeded");
    work.push((int)cs.size());
    cs.push_back({node, off, parent, via});
  };
  for (int i : g.init_nodes) push(i, 0, -1, -1);
  while (!work.empty()) {
    int c = work.front();
    work.pop();
    auto fin = g.finals.find(cs[c].node);
    if (fin != g.finals.end()) {
      long long total = cs[c].off + (long long)fin->second.first.size() -
                        (long long)fin->second.second.size();
      if (total != 0) {
        FunctionalityWitness w;
        std::vector<int> path;
        for (int x = c; cs[x].parent >= 0; x = cs[x].parent)
          path.push_back(cs[x].via);
        std::reverse(path.begin(), path.end());
        int root = c;
        while (cs[root].parent >= 0) root = cs[root].parent;
        w.start1 = g.nodes[cs[root].node].first;
        w.start2 = g.nodes[cs[root].node].second;
        for (int e : path) {
          const PairEdge& pe = g.edges[e];
          w.input.push_back(pe.input);
          w.run1.push_back(pe.t1);
          w.run2.push_back(pe.t2);
          w.out1 = concat(w.out1, pe.out1);
          w.out2 = concat(w.out2, pe.out2);
        }
        w.out1 = concat(w.out1, fin->second.first);
        w.out2 = concat(w.out2, fin->second.second);
        return w;
      }
    }
    int node = cs[c].node;
    long long off = cs[c].off;
    for (int e : g.out[node])
      push(g.edges[e].to, off + g.edges[e].weight(), c, e);
  }
  return std::nullopt;
}

// Mismatch with both guessed positions strictly inside the loop; pumping
// replicates it, so the Hamming distance of the output pair diverges.
inline std::optional<TwinningPattern> loop_mismatch(const Transducer& t,
                                                    const PairGraph& g,
                                                    const BalanceCertificate&
                                                        cert,
                                                    size_t cap = 200000) {
  FlowSystem fs = flow_system(t, g, cert);
  long long D = fs.delta_bound + fs.max_output;

  struct Cfg {
    int node, anchor;
    int m1, m2;
    Sym l1, l2;
    long long delta;
    int parent, via;
  };
  using Key = std::tuple<int, int, int, int, Sym, Sym, long long>;
  std::vector<Cfg> cfgs;
  std::map<Key, int> seen;
  std::queue<int> work;
  auto push = [&](Cfg c) {
    Key k{c.node, c.anchor, c.m1, c.m2, c.l1, c.l2, c.delta};
    if (seen.count(k)) return;
    if (cfgs.size() >= cap) throw CapExceeded("diff configuration cap");
    seen.emplace(k, (int)cfgs.size());
    work.push((int)cfgs.size());
    cfgs.push_back(c);
  };
  for (int id : g.init_nodes) push({id, -1, 0, 0, -1, -1, 0, -1, -1});

  auto options = [&](int m, Sym l, const Word& w, bool in_loop) {
    std::vector<std::tuple<int, Sym, long long>> opts;
    if (m != 0) {
      opts.push_back({m, l, 0});
      return opts;
    }
    opts.push_back({0, -1, (long long)w.size()});
    if (in_loop)
      for (size_t k = 0; k < w.size(); k++)
        opts.push_back({1, w[k], (long long)k});
    return opts;
  };

  while (!work.empty()) {
    int c = work.front();
    work.pop();
    Cfg cur = cfgs[c];  // copy: cfgs may reallocate below
    if (cur.anchor < 0) {
      Cfg flip = cur;
      flip.anchor = cur.node;
      flip.parent = c;
      flip.via = -1;
      push(flip);
    }
    bool in_loop = cur.anchor >= 0;
    for (int e : g.out[cur.node]) {
      const PairEdge& pe = g.edges[e];
      for (auto [m1, l1, inc1] : options(cur.m1, cur.l1, pe.out1, in_loop)) {
        for (auto [m2, l2, inc2] :
             options(cur.m2, cur.l2, pe.out2, in_loop)) {
          long long nd = cur.delta + inc1 - inc2;
          if (m1 > 0 && m2 > 0 && (nd != 0 || l1 == l2)) continue;
          if (m1 > 0 && m2 == 0 && nd < 0) continue;
          if (m2 > 0 && m1 == 0 && nd > 0) continue;
          if (std::llabs(nd) > D) continue;
          if (in_loop && pe.to == cur.anchor && m1 > 0 && m2 > 0) {
            std::vector<int> chain{e};
            for (int x = c; cfgs[x].parent >= 0; x = cfgs[x].parent)
              chain.push_back(cfgs[x].via);
            std::reverse(chain.begin(), chain.end());
            std::vector<int> stem, cyc;
            bool flip_seen = false;
            for (int ee : chain) {
              if (ee < 0) {
                flip_seen = true;
                continue;
              }
              (flip_seen ? cyc : stem).push_back(ee);
            }
            int root = c;
            while (cfgs[root].parent >= 0) root = cfgs[root].parent;
            return make_pattern(g, cfgs[root].node, stem, cyc);
          }
          push({pe.to, cur.anchor, m1, m2, l1, l2, nd, c, e});
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Decides whether sup over inputs of the distance between any two outputs
// for that input is finite. Only accepted output pairs matter, so the
// analysis runs on the pair graph restricted to nodes from which a paired
// final is reachable.
inline DiffVerdict diff_finite(const Transducer& t, MetricKind m,
                               size_t budget = 500000) {
  DiffVerdict r;
  r.metric = m;
  Transducer w = trim(t);
  PairGraph g0 = pair_graph(w, false);
  PairGraph g = detail::restrict_graph(g0, coaccessible_nodes(g0));

  BalanceResult b = cycle_balance(g);
  if (m == MetricKind::hamming) {
    if (!b.balanced) {
      auto [start, stem] = detail::stem_to(g, b.witness->node);
      r.finite = false;
      r.pattern = detail::make_pattern(g, start, stem, b.witness->edges);
      r.notes = "loop with unequal output lengths";
      return r;
    }
    if (auto lm = detail::length_mismatch(g)) {
      r.finite = false;
      r.runs = *lm;
      r.notes = "accepted outputs of different lengths";
      return r;
    }
    if (auto p = detail::loop_mismatch(w, g, b.cert)) {
      r.finite = false;
      r.pattern = *p;
      r.notes = "pumpable mismatch inside a loop";
      return r;
    }
    r.notes = "balanced, lengths reconcile, no pumpable mismatch";
    return r;
  }

  // The three edit metrics bound each other within constant factors, so
  // one criterion serves lcs, levenshtein and damerau alike.
  if (!b.balanced) {
    auto [start, stem] = detail::stem_to(g, b.witness->node);
    r.finite = false;
    r.pattern = detail::make_pattern(g, start, stem, b.witness->edges);
    r.notes = "loop with unequal output lengths";
    return r;
  }
  if (auto p = detail::non_conjugate_walk(g, budget)) {
    r.finite = false;
    r.pattern = *p;
    r.notes = "non-conjugate loop outputs";
    return r;
  }
  r.notes = "balanced; loop outputs conjugate";
  return r;
}

// A functional sub-relation with the same domain; refused when the output
// spread is unbounded, since then no function is uniformly close.
inline Transducer approx_functionalise(const Transducer& t, MetricKind m) {
  DiffVerdict v = diff_finite(t, m);
  if (!v.finite) throw DiffUnbounded(std::move(v));
  return uniformise(trim(t));
}

// Relation-level approximate determinisation for the edit family: check
// the twinning preconditions on the relation, select a function, then run
// the sequential pipeline.
inline SequentialTransducer approx_determinise_relation(
    const Transducer& t, MetricKind m = MetricKind::levenshtein,
    size_t cap = 200000) {
  Transducer w = trim(t);
  if (PropertyVerdict v = check_atp(w); !v.holds)
    throw PreconditionFailed("atp", std::move(v));
  if (PropertyVerdict v = check_stp(w); !v.holds)
    throw PreconditionFailed("stp", std::move(v));
  Transducer f = approx_functionalise(w, m);
  return approx_determinise_lev(f, cap);
}

}  // namespace transduce

#endif  // TRANSDUCE_RELATIONS_HPP_
