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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "transduce/graph.hpp"
#include "transduce/io.hpp"
#include "transduce/oracle.hpp"

using namespace transduce;
using transduce_test::W;

static Transducer corpus(const std::string& name) {
  return load_machine(std::string(TRANSDUCE_CORPUS_DIR) + "/" + name +
                      ".json");
}

TEST_CASE("scc on corpus machines") {
  Transducer f_last = corpus("f_last");
  SccDecomposition d = scc(f_last);
  CHECK(d.count == 5);  // self loops only, every state its own component

  Transducer star = corpus("f_star_last");
  SccDecomposition s = scc(star);
  CHECK(s.count == 1);  // the # transitions close the whole machine

  Transducer empty;
  CHECK(scc(empty).count == 0);
}

TEST_CASE("scc component ids are topologically ordered") {
  for (std::uint64_t seed = 1; seed <= 60; seed++) {
    GeneratorParams g;
    g.seed = seed;
    g.state_count = 4;
    Transducer t = random_transducer(g);
    SccDecomposition d = scc(t);
    int bad = 0;
    for (const Transition& tr : t.transitions)
      if (d.comp[tr.from] > d.comp[tr.to]) bad++;
    CHECK(bad == 0);
    // dag edges all go forward too, and match the transition relation.
    for (int c = 0; c < d.count; c++)
      for (int succ : d.dag[c]) CHECK(c < succ);
  }
}

TEST_CASE("scc matches a reachability oracle") {
  for (std::uint64_t seed = 1; seed <= 60; seed++) {
    GeneratorParams g;
    g.seed = seed;
    g.state_count = 4;
    g.density = 0.2 + 0.4 * (seed % 7) / 7.0;
    Transducer t = random_transducer(g);
    int n = (int)t.states.size();
    // reach[a][b] via transitive closure
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; i++) reach[i][i] = true;
    for (const Transition& tr : t.transitions) reach[tr.from][tr.to] = true;
    for (int k = 0; k < n; k++)
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    SccDecomposition d = scc(t);
    int bad = 0;
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        bool same = reach[i][j] && reach[j][i];
        if (same != (d.comp[i] == d.comp[j])) bad++;
      }
    CHECK(bad == 0);
  }
}

TEST_CASE("pair_graph start modes") {
  Transducer fork = corpus("fork_bounded");
  REQUIRE(fork.initial.size() == 2);
  PairGraph all = pair_graph(fork, false);
  PairGraph diag = pair_graph(fork, true);
  CHECK(all.init_nodes.size() == 4);
  CHECK(diag.init_nodes.size() == 2);
  for (int id : diag.init_nodes) {
    auto [a, b] = diag.nodes[id];
    CHECK(a == b);
  }
  CHECK(diag.nodes.size() <= all.nodes.size());
}

TEST_CASE("cycle_balance accepts balanced pair graphs") {
  for (const char* name : {"f_last", "fig1_T", "f_star_last", "id_min2"}) {
    Transducer t = corpus(name);
    PairGraph g = pair_graph(t, false);
    BalanceResult r = cycle_balance(g);
    CHECK(r.balanced);
    REQUIRE(r.cert.potential.size() == g.nodes.size());
    // The certificate is checkable: within a component every edge satisfies
    // pot[to] = pot[from] + weight.
    SccDecomposition comps = scc_of_graph(g);
    int bad = 0;
    for (const PairEdge& e : g.edges)
      if (comps.comp[e.from] == comps.comp[e.to] &&
          r.cert.potential[e.to] != r.cert.potential[e.from] + e.weight())
        bad++;
    CHECK(bad == 0);
  }
}

TEST_CASE("cycle_balance refutes skewed loops with a replayable witness") {
  Transducer t = corpus("m_skew");
  PairGraph g = pair_graph(t, false);
  BalanceResult r = cycle_balance(g);
  REQUIRE(!r.balanced);
  REQUIRE(r.witness.has_value());
  const CycleWitness& w = *r.witness;
  CHECK(w.weight != 0);
  // Replay: edges chain and close at the witness node.
  int at = w.node;
  Word o1, o2;
  for (int e : w.edges) {
    REQUIRE(e >= 0);
    REQUIRE(e < (int)g.edges.size());
    CHECK(g.edges[e].from == at);
    o1 = concat(o1, g.edges[e].out1);
    o2 = concat(o2, g.edges[e].out2);
    at = g.edges[e].to;
  }
  CHECK(at == w.node);
  CHECK(o1 == w.out1);
  CHECK(o2 == w.out2);
  CHECK((long long)o1.size() - (long long)o2.size() == w.weight);
}

TEST_CASE("enumerate_cycles basics") {
  Transducer t = corpus("f_last");
  PairGraph g = pair_graph(t, false);
  int n12 = g.node_id(1, 2);  // the (q1, q2) divergence pair
  REQUIRE(n12 >= 0);
  auto one = enumerate_cycles(g, n12, 1);
  CHECK(one.size() == 2);  // the a and b identity loops
  for (const CycleWitness& c : one) {
    CHECK(c.node == n12);
    CHECK(c.edges.size() == 1);
    CHECK(c.weight == 0);
  }
  auto two = enumerate_cycles(g, n12, 2);
  CHECK(two.size() == 2 + 4);
  // Deduplication by edge sequence: all returned sequences distinct.
  std::set<std::vector<int>> seqs;
  for (const CycleWitness& c : two) seqs.insert(c.edges);
  CHECK(seqs.size() == two.size());

  // A final pair with no outgoing edges has no cycles.
  int n33 = g.node_id(3, 3);
  REQUIRE(n33 >= 0);
  CHECK(enumerate_cycles(g, n33, 4).empty());
}

TEST_CASE("enumerate_cycles budget reports exhaustion") {
  Transducer t = corpus("f_last");
  PairGraph g = pair_graph(t, false);
  int n12 = g.node_id(1, 2);
  bool exhausted = false;
  auto c = enumerate_cycles(g, n12, 8, 5, &exhausted);
  CHECK(exhausted);
  bool fine = false;
  enumerate_cycles(g, n12, 3, 1000000, &fine);
  CHECK(!fine);
}

TEST_CASE("cycle_balance agrees with exhaustive cycle enumeration") {
  int disagreements = 0;
  for (std::uint64_t seed = 1; seed <= 120; seed++) {
    GeneratorParams g;
    g.seed = seed;
    g.state_count = 1 + (int)(seed % 3);
    g.density = 0.2 + 0.4 * ((seed * 31) % 10) / 10.0;
    Transducer t = random_transducer(g);
    PairGraph pg = pair_graph(t, false);
    BalanceResult r = cycle_balance(pg);
    bool any_skew = false;
    for (size_t node = 0; node < pg.nodes.size() && !any_skew; node++)
      for (const CycleWitness& c :
           enumerate_cycles(pg, (int)node, 2 * pg.nodes.size(), 200000))
        if (c.weight != 0) {
          any_skew = true;
          break;
        }
    if (r.balanced != !any_skew) disagreements++;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("offsets match exhaustive path enumeration") {
  for (const char* name : {"f_last", "fig1_T", "id_min2"}) {
    Transducer t = corpus(name);
    PairGraph g = pair_graph(t, false);
    BalanceResult r = cycle_balance(g);
    REQUIRE(r.balanced);
    auto off = offsets(g, r.cert);
    // Oracle: all paths of length <= 30, memoized on (node, offset, length
    // left) so the walk stays polynomial. 30 steps saturate these graphs.
    std::map<int, std::set<long long>> oracle;
    std::set<std::tuple<int, long long, int>> memo;
    std::function<void(int, long long, int)> go = [&](int node, long long o,
                                                      int depth) {
      if (!memo.insert({node, o, depth}).second) return;
      oracle[node].insert(o);
      if (depth == 0) return;
      for (int e : g.out[node]) go(g.edges[e].to, o + g.edges[e].weight(),
                                   depth - 1);
    };
    for (int i : g.init_nodes) go(i, 0, 30);
    for (const auto& [node, set] : off) CHECK(oracle[node] == set);
    // Every reachable node carries at least one offset, and initial nodes
    // carry 0.
    for (int i : g.init_nodes) CHECK(off[i].count(0) == 1);
  }
}

TEST_CASE("offsets cap raises OffsetExplosion on skewed graphs") {
  Transducer t = corpus("m_skew");
  PairGraph g = pair_graph(t, false);
  BalanceCertificate dummy;
  dummy.potential.assign(g.nodes.size(), 0);
  CHECK_THROWS_AS(offsets(g, dummy, 50), OffsetExplosion);
}
