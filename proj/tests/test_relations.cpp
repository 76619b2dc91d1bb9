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

#include "helpers.hpp"
#include "transduce/io.hpp"
#include "transduce/relations.hpp"

using namespace transduce;
using transduce_test::W;

static Transducer corpus(const std::string& name) {
  return load_machine(std::string(TRANSDUCE_CORPUS_DIR) + "/" + name +
                      ".json");
}

// Largest pairwise output distance over all inputs of bounded length.
static DistanceValue empirical_diff(const Transducer& t, MetricKind m,
                                    size_t max_len) {
  DistanceValue worst{0, false};
  for (const auto& [u, ps] : output_pairs(t, max_len).pairs)
    for (const auto& [a, b] : ps) {
      DistanceValue d = edit_distance(m, a, b);
      if (d.infinite)
        worst.infinite = true;
      else if (!worst.infinite && d.value > worst.value)
        worst.value = d.value;
    }
  return worst;
}

TEST_CASE("diff_finite corpus verdicts") {
  struct Row {
    const char* name;
    bool lev, ham;
  };
  const Row rows[] = {
      {"f_last", true, true},        {"fig1_T", true, true},
      {"f_star_last", true, true},   {"id_min2", true, true},
      {"fork_bounded", true, false}, {"m_rel", false, false},
      {"m_bad", false, false},       {"m_skew", false, false},
  };
  for (const Row& r : rows) {
    CAPTURE(r.name);
    Transducer t = corpus(r.name);
    CHECK(diff_finite(t, MetricKind::levenshtein).finite == r.lev);
    CHECK(diff_finite(t, MetricKind::lcs).finite == r.lev);
    CHECK(diff_finite(t, MetricKind::damerau).finite == r.lev);
    CHECK(diff_finite(t, MetricKind::hamming).finite == r.ham);
  }
}

TEST_CASE("infinite diff verdicts carry replayable witnesses") {
  struct Case {
    const char* name;
    MetricKind m;
  };
  const Case cases[] = {
      {"m_rel", MetricKind::levenshtein},
      {"m_bad", MetricKind::levenshtein},
      {"m_skew", MetricKind::levenshtein},
      {"m_rel", MetricKind::hamming},
      {"m_bad", MetricKind::hamming},
      {"m_skew", MetricKind::hamming},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    Transducer t = trim(corpus(c.name));
    DiffVerdict v = diff_finite(t, c.m);
    REQUIRE(!v.finite);
    REQUIRE(v.pattern.has_value());
    std::string err;
    CHECK_MESSAGE(replay_pattern(t, *v.pattern, &err), err);
    CHECK(diff_pattern_violates(*v.pattern, c.m));
    // Pumping the loop drives the metric up.
    Word a1 = concat(v.pattern->u1, repeat(v.pattern->v1, 6));
    Word a2 = concat(v.pattern->u2, repeat(v.pattern->v2, 6));
    Word b1 = concat(v.pattern->u1, v.pattern->v1);
    Word b2 = concat(v.pattern->u2, v.pattern->v2);
    MetricKind probe =
        c.m == MetricKind::hamming ? MetricKind::levenshtein : c.m;
    CHECK(edit_distance(probe, a1, a2).value >
          edit_distance(probe, b1, b2).value);
  }
}

TEST_CASE("fork_bounded under Hamming refuses with a run pair") {
  Transducer t = trim(corpus("fork_bounded"));
  DiffVerdict v = diff_finite(t, MetricKind::hamming);
  REQUIRE(!v.finite);
  REQUIRE(v.runs.has_value());
  const FunctionalityWitness& w = *v.runs;
  CHECK(w.out1.size() != w.out2.size());
  // Both runs accept the same input in the machine.
  for (const auto& [start, run, out] :
       {std::tuple{w.start1, w.run1, w.out1},
        std::tuple{w.start2, w.run2, w.out2}}) {
    int q = start;
    bool init = false;
    for (int i : t.initial) init = init || i == q;
    CHECK(init);
    Word produced;
    REQUIRE(run.size() == w.input.size());
    for (size_t i = 0; i < run.size(); i++) {
      const Transition& tr = t.transitions[run[i]];
      CHECK(tr.from == q);
      CHECK(tr.input == w.input[i]);
      produced = concat(produced, tr.output);
      q = tr.to;
    }
    REQUIRE(t.finals.count(q) == 1);
    CHECK(concat(produced, t.finals.at(q)) == out);
  }
}

TEST_CASE("empirical output spread matches the verdicts") {
  // Growing spread on the refused machines, a plateau on the accepted ones.
  for (const char* name : {"m_rel", "m_bad", "m_skew"}) {
    CAPTURE(name);
    Transducer t = corpus(name);
    CHECK(empirical_diff(t, MetricKind::levenshtein, 7).value >
          empirical_diff(t, MetricKind::levenshtein, 4).value);
  }
  for (const char* name : {"f_last", "fig1_T", "f_star_last", "id_min2"}) {
    CAPTURE(name);
    Transducer t = corpus(name);
    CHECK(empirical_diff(t, MetricKind::levenshtein, 7).value == 0);
    DistanceValue h = empirical_diff(t, MetricKind::hamming, 7);
    CHECK(!h.infinite);
    CHECK(h.value == 0);
  }
  DistanceValue fork = empirical_diff(corpus("fork_bounded"),
                                      MetricKind::levenshtein, 7);
  CHECK(fork.value == 1);
  CHECK(empirical_diff(corpus("fork_bounded"), MetricKind::hamming, 7)
            .infinite);
}

TEST_CASE("random machines: growing spread implies an infinite verdict") {
  int growing = 0, wrong = 0;
  for (std::uint64_t seed = 1; seed <= 200; seed++) {
    GeneratorParams g;
    g.seed = seed;
    g.state_count = 1 + (int)(seed % 3);
    g.density = 0.2 + 0.4 * ((seed * 7919) % 100) / 100.0;
    Transducer t;
    try {
      t = random_transducer(g);
    } catch (const GenerationExhausted&) {
      continue;
    }
    long long d5 = empirical_diff(t, MetricKind::levenshtein, 5).value;
    long long d6 = empirical_diff(t, MetricKind::levenshtein, 6).value;
    long long d7 = empirical_diff(t, MetricKind::levenshtein, 7).value;
    if (!(d5 < d6 && d6 < d7)) continue;
    growing++;
    DiffVerdict v = diff_finite(t, MetricKind::levenshtein);
    if (v.finite) {
      wrong++;
      continue;
    }
    // The pattern must replay in the trimmed machine it was found in.
    if (v.pattern.has_value()) {
      Transducer w = trim(t);
      if (!replay_pattern(w, *v.pattern) ||
          !diff_pattern_violates(*v.pattern, MetricKind::levenshtein))
        wrong++;
    }
  }
  CHECK(growing > 10);
  CHECK(wrong == 0);
}

TEST_CASE("random machines: finite verdicts have bounded spread") {
  int finite_seen = 0, violations = 0;
  for (std::uint64_t seed = 1; seed <= 150; seed++) {
    GeneratorParams g;
    g.seed = seed;
    g.state_count = 1 + (int)(seed % 3);
    g.density = 0.2 + 0.4 * ((seed * 7919) % 100) / 100.0;
    Transducer t;
    try {
      t = random_transducer(g);
    } catch (const GenerationExhausted&) {
      continue;
    }
    if (!diff_finite(t, MetricKind::levenshtein).finite) continue;
    finite_seen++;
    // The spread stops growing once every loop has been traversed.
    long long d6 = empirical_diff(t, MetricKind::levenshtein, 6).value;
    long long d8 = empirical_diff(t, MetricKind::levenshtein, 8).value;
    if (d8 > d6) violations++;
  }
  CHECK(finite_seen > 30);
  CHECK(violations == 0);
}

TEST_CASE("approx_functionalise selects a functional sub-relation") {
  Transducer t = corpus("fork_bounded");
  Transducer f = approx_functionalise(t, MetricKind::levenshtein);
  CHECK(is_functional(f));
  OutputSet whole = enumerate_outputs(t, 8);
  OutputSet got = enumerate_outputs(f, 8);
  REQUIRE(got.size() == whole.size());  // same domain
  for (const auto& [u, vs] : got) {
    REQUIRE(vs.size() == 1);
    CHECK(whole.at(u).count(*vs.begin()) == 1);  // containment
  }

  // Already functional machines keep their relation.
  Transducer fl = corpus("f_last");
  CHECK(enumerate_outputs(approx_functionalise(fl, MetricKind::hamming), 7) ==
        enumerate_outputs(fl, 7));

  try {
    approx_functionalise(corpus("m_rel"), MetricKind::levenshtein);
    FAIL("expected DiffUnbounded");
  } catch (const DiffUnbounded& e) {
    CHECK(!e.verdict.finite);
    REQUIRE(e.verdict.pattern.has_value());
    Transducer w = trim(corpus("m_rel"));
    CHECK(replay_pattern(w, *e.verdict.pattern));
  }
}

TEST_CASE("approx_determinise_relation") {
  Transducer t = corpus("fork_bounded");
  SequentialTransducer d = approx_determinise_relation(t);
  CHECK(is_sequential(d));
  OutputSet whole = enumerate_outputs(t, 8);
  OutputSet got = enumerate_outputs(d, 8);
  REQUIRE(got.size() == whole.size());
  DistanceProfile p = empirical_distance(t, d, MetricKind::levenshtein, 8);
  for (const DistanceValue& v : p.values) {
    CHECK(!v.infinite);
    CHECK(v.value <= 1);  // the two branches differ by one trailing letter
  }

  CHECK_THROWS_AS(approx_determinise_relation(corpus("m_rel")),
                  PreconditionFailed);
  try {
    approx_determinise_relation(corpus("m_rel"));
  } catch (const PreconditionFailed& e) {
    CHECK(e.property == "atp");
  }
}
