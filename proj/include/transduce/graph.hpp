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
// Graph machinery over transducers and their self-products: SCC
// decomposition, cycle enumeration, output-length balance certificates and
// path offset sets.

#ifndef TRANSDUCE_GRAPH_HPP_
#define TRANSDUCE_GRAPH_HPP_

#include <optional>

#include "transduce/machine.hpp"

namespace transduce {

struct OffsetExplosion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SccDecomposition {
  std::vector<int> comp;  // node -> component id, ids in topological order
  int count = 0;
  std::vector<std::set<int>> dag;  // component -> successor components
};

// Iterative Tarjan; component ids are renumbered into topological order of
// the condensation.
inline SccDecomposition scc_decompose(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) adj[u].push_back(v);
  SccDecomposition r;
  r.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), on(n, 0), stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; root++) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[w] = 0;
            r.comp[w] = next_comp;
            if (w == f.v) break;
          }
          next_comp++;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  r.count = next_comp;
  // Tarjan emits components in reverse topological order; flip the ids.
  for (int& c : r.comp) c = next_comp - 1 - c;
  r.dag.assign(r.count, {});
  for (auto [u, v] : edges)
    if (r.comp[u] != r.comp[v]) r.dag[r.comp[u]].insert(r.comp[v]);
  return r;
}

inline SccDecomposition scc(const Transducer& t) {
  std::vector<std::pair<int, int>> edges;
  for (const Transition& tr : t.transitions) edges.push_back({tr.from, tr.to});
  return scc_decompose((int)t.states.size(), edges);
}

inline SccDecomposition scc_of_graph(const PairGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const PairEdge& e : g.edges) edges.push_back({e.from, e.to});
  return scc_decompose((int)g.nodes.size(), edges);
}

// Reachable synchronized pair graph, from I x I or from the diagonal
// (p, p) pairs when same_initial_only is set (the STP sub-checks).
inline PairGraph pair_graph(const Transducer& t, bool same_initial_only) {
  std::vector<std::pair<int, int>> starts;
  if (same_initial_only) {
    for (int i : t.initial) starts.push_back({i, i});
  } else {
    for (int a : t.initial)
      for (int b : t.initial) starts.push_back({a, b});
  }
  return product(t, t, starts);
}

// A closed walk at `node` with its two output tracks.
struct CycleWitness {
  int node = -1;
  std::vector<int> edges;  // edge ids, closing at node
  Word out1, out2;
  long long weight = 0;
};

inline CycleWitness make_cycle(const PairGraph& g, int node,
                               const std::vector<int>& edges) {
  CycleWitness c;
  c.node = node;
  c.edges = edges;
  for (int e : edges) {
    c.out1 = concat(c.out1, g.edges[e].out1);
    c.out2 = concat(c.out2, g.edges[e].out2);
  }
  c.weight = (long long)c.out1.size() - (long long)c.out2.size();
  return c;
}

// Per-component potentials proving every cycle has weight zero.
struct BalanceCertificate {
  std::vector<long long> potential;  // per node, valid within its component
};

struct BalanceResult {
  bool balanced = true;
  BalanceCertificate cert;
  std::optional<CycleWitness> witness;
};

// Per SCC: breadth-first potentials from a root. A conflicting edge yields
// a concrete cycle through the root of nonzero total weight.
inline BalanceResult cycle_balance(const PairGraph& g) {
  BalanceResult r;
  size_t n = g.nodes.size();
  r.cert.potential.assign(n, 0);
  SccDecomposition comps = scc_of_graph(g);

  // Edge-path between two nodes inside one component.
  auto path_within = [&](int from, int to, int cid) {
    std::vector<int> par(n, -2), via(n, -1);
    par[from] = -1;
    std::queue<int> q;
    q.push(from);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (u == to) break;
      for (int e : g.out[u]) {
        int v = g.edges[e].to;
        if (comps.comp[v] != cid || par[v] != -2) continue;
        par[v] = u;
        via[v] = e;
        q.push(v);
      }
    }
    std::vector<int> path;
    for (int u = to; u != from; u = par[u]) path.push_back(via[u]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  for (int cid = 0; cid < comps.count; cid++) {
    int root = -1;
    for (size_t i = 0; i < n && root < 0; i++)
      if (comps.comp[i] == cid) root = (int)i;
    if (root < 0) continue;
    std::vector<bool> done(n, false);
    done[root] = true;
    r.cert.potential[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : g.out[u]) {
        const PairEdge& pe = g.edges[e];
        if (comps.comp[pe.to] != cid) continue;
        long long want = r.cert.potential[u] + pe.weight();
        if (!done[pe.to]) {
          done[pe.to] = true;
          r.cert.potential[pe.to] = want;
          q.push(pe.to);
        } else if (r.cert.potential[pe.to] != want) {
          // Nonzero cycle through the root: either the tree cycle through
          // pe.to, or the one routed over this edge.
          std::vector<int> back = path_within(pe.to, root, cid);
          CycleWitness tree =
              make_cycle(g, root, [&] {
                std::vector<int> edges = path_within(root, pe.to, cid);
                edges.insert(edges.end(), back.begin(), back.end());
                return edges;
              }());
          if (tree.weight != 0) {
            r.balanced = false;
            r.witness = tree;
            return r;
          }
          std::vector<int> edges = path_within(root, u, cid);
          edges.push_back(e);
          edges.insert(edges.end(), back.begin(), back.end());
          CycleWitness routed = make_cycle(g, root, edges);
          r.balanced = false;
          r.witness = routed;
          return r;
        }
      }
    }
  }
  return r;
}

// All closed walks at `node` of length <= max_len edges, deduplicated by
// edge sequence (depth-first enumeration yields each sequence once). The
// step budget bounds total work; the flag reports exhaustion.
inline std::vector<CycleWitness> enumerate_cycles(const PairGraph& g,
                                                  int node, size_t max_len,
                                                  size_t budget = 1000000,
                                                  bool* exhausted = nullptr) {
  std::vector<CycleWitness> out;
  std::vector<int> walk;
  size_t steps = 0;
  bool dead = false;
  std::function<void(int)> go = [&](int u) {
    if (dead) return;
    if (u == node && !walk.empty()) out.push_back(make_cycle(g, node, walk));
    if (walk.size() == max_len) return;
    for (int e : g.out[u]) {
      if (++steps > budget) {
        dead = true;
        return;
      }
      walk.push_back(e);
      go(g.edges[e].to);
      walk.pop_back();
    }
  };
  go(node);
  if (exhausted) *exhausted = dead;
  return out;
}

// Path offset sets |out1| - |out2| per node, over paths from the initial
// pairs. Finite when the certificate holds; the cap turns runaway growth
// into a hard error.
inline std::map<int, std::set<long long>> offsets(const PairGraph& g,
                                                  const BalanceCertificate&,
                                                  size_t cap = 10000) {
  std::map<int, std::set<long long>> result;
  std::set<std::pair<int, long long>> seen;
  std::queue<std::pair<int, long long>> work;
  size_t total = 0;
  auto push = [&](int node, long long off) {
    if (!seen.insert({node, off}).second) return;
    if (++total > cap) throw OffsetExplosion("offset set cap exceeded");
    result[node].insert(off);
    work.push({node, off});
  };
  for (int i : g.init_nodes) push(i, 0);
  while (!work.empty()) {
    auto [node, off] = work.front();
    work.pop();
    for (int e : g.out[node]) push(g.edges[e].to, off + g.edges[e].weight());
  }
  return result;
}

}  // namespace transduce

#endif  // TRANSDUCE_GRAPH_HPP_
