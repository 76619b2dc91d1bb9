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

#ifndef TRANSDUCE_WORDS_HPP_
#define TRANSDUCE_WORDS_HPP_

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace transduce {

// Symbols are indices into a declared alphabet. Words are plain vectors so
// they compare and hash like any other container.
using Sym = std::int32_t;
using Word = std::vector<Sym>;

inline Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

inline bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

// A natural number or infinity. Infinite compares greater than every finite
// value and absorbs addition.
struct DistanceValue {
  bool infinite = false;
  long long value = 0;

  static DistanceValue inf() { return {true, 0}; }
  static DistanceValue of(long long v) { return {false, v}; }

  friend bool operator==(const DistanceValue& a, const DistanceValue& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator!=(const DistanceValue& a, const DistanceValue& b) {
    return !(a == b);
  }
  friend bool operator<(const DistanceValue& a, const DistanceValue& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const DistanceValue& a, const DistanceValue& b) {
    return a < b || a == b;
  }
  friend DistanceValue operator+(const DistanceValue& a,
                                 const DistanceValue& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.value + b.value);
  }
};

enum class MetricKind { hamming, lcs, levenshtein, damerau };

inline const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::hamming: return "hamming";
    case MetricKind::lcs: return "lcs";
    case MetricKind::levenshtein: return "levenshtein";
    case MetricKind::damerau: return "damerau";
  }
  return "?";
}

inline Word lcp(const Word& u, const Word& v) {
  size_t n = std::min(u.size(), v.size());
  size_t i = 0;
  while (i < n && u[i] == v[i]) i++;
  return Word(u.begin(), u.begin() + i);
}

// Remainders of u and v after stripping their longest common prefix. The two
// components never share a nonempty prefix.
struct DelayPair {
  Word left, right;
  friend bool operator==(const DelayPair& a, const DelayPair& b) {
    return a.left == b.left && a.right == b.right;
  }
  friend bool operator!=(const DelayPair& a, const DelayPair& b) {
    return !(a == b);
  }
  friend bool operator<(const DelayPair& a, const DelayPair& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
};

inline DelayPair delay(const Word& u, const Word& v) {
  size_t k = lcp(u, v).size();
  return {Word(u.begin() + k, u.end()), Word(v.begin() + k, v.end())};
}

inline Word primitive_root(const Word& w) {
  if (w.empty()) throw std::invalid_argument("primitive_root: empty word");
  for (size_t d = 1; d <= w.size(); d++) {
    if (w.size() % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < w.size() && ok; i++) ok = w[i] == w[i - d];
    if (ok) return Word(w.begin(), w.begin() + d);
  }
  return w;  // unreachable: d = |w| always matches
}

// u and v are conjugate (cyclic shifts of each other) iff they have equal
// length and v occurs as a factor of u.u.
inline bool is_conjugate(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  Word uu = concat(u, u);
  return std::search(uu.begin(), uu.end(), v.begin(), v.end()) != uu.end();
}

namespace detail {

inline long long lev_like(const Word& u, const Word& v, bool allow_sub) {
  size_t n = u.size(), m = v.size();
  std::vector<long long> prev(m + 1), cur(m + 1);
  for (size_t j = 0; j <= m; j++) prev[j] = j;
  for (size_t i = 1; i <= n; i++) {
    cur[0] = i;
    for (size_t j = 1; j <= m; j++) {
      long long best = std::min(cur[j - 1] + 1, prev[j] + 1);
      if (u[i - 1] == v[j - 1]) {
        best = std::min(best, prev[j - 1]);
      } else if (allow_sub) {
        best = std::min(best, prev[j - 1] + 1);
      }
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// Unrestricted Damerau-Levenshtein (transpositions may be edited again),
// which is a true metric, unlike the optimal string alignment variant.
inline long long damerau(const Word& u, const Word& v) {
  size_t n = u.size(), m = v.size();
  const long long INF = (long long)(n + m);
  std::vector<std::vector<long long>> h(n + 2,
                                        std::vector<long long>(m + 2, 0));
  h[0][0] = INF;
  for (size_t i = 0; i <= n; i++) {
    h[i + 1][0] = INF;
    h[i + 1][1] = (long long)i;
  }
  for (size_t j = 0; j <= m; j++) {
    h[0][j + 1] = INF;
    h[1][j + 1] = (long long)j;
  }
  std::map<Sym, size_t> da;
  for (size_t i = 1; i <= n; i++) {
    size_t db = 0;
    for (size_t j = 1; j <= m; j++) {
      size_t i1 = da.count(v[j - 1]) ? da[v[j - 1]] : 0;
      size_t j1 = db;
      long long cost = 1;
      if (u[i - 1] == v[j - 1]) {
        cost = 0;
        db = j;
      }
      h[i + 1][j + 1] =
          std::min({h[i][j] + cost, h[i + 1][j] + 1, h[i][j + 1] + 1,
                    h[i1][j1] + (long long)(i - i1 - 1) + 1 +
                        (long long)(j - j1 - 1)});
    }
    da[u[i - 1]] = i;
  }
  return h[n + 1][m + 1];
}

}  // namespace detail

inline DistanceValue edit_distance(MetricKind m, const Word& u,
                                   const Word& v) {
  switch (m) {
    case MetricKind::hamming: {
      if (u.size() != v.size()) return DistanceValue::inf();
      long long d = 0;
      for (size_t i = 0; i < u.size(); i++)
        if (u[i] != v[i]) d++;
      return DistanceValue::of(d);
    }
    case MetricKind::lcs:
      return DistanceValue::of(detail::lev_like(u, v, false));
    case MetricKind::levenshtein:
      return DistanceValue::of(detail::lev_like(u, v, true));
    case MetricKind::damerau:
      return DistanceValue::of(detail::damerau(u, v));
  }
  return DistanceValue::inf();
}

// Hausdorff distance between finite languages: max of the two directed
// sup-inf values. sup over an empty set is 0, inf over an empty set is
// infinite, so {} vs nonempty is infinite and {} vs {} is 0.
inline DistanceValue hausdorff(MetricKind m, const std::set<Word>& l1,
                               const std::set<Word>& l2) {
  if (l1.empty() && l2.empty()) return DistanceValue::of(0);
  if (l1.empty() || l2.empty()) return DistanceValue::inf();
  DistanceValue result = DistanceValue::of(0);
  auto directed = [&](const std::set<Word>& a, const std::set<Word>& b) {
    for (const Word& u : a) {
      DistanceValue best = DistanceValue::inf();
      for (const Word& v : b) {
        DistanceValue d = edit_distance(m, u, v);
        if (d < best) best = d;
      }
      if (result < best) result = best;
    }
  };
  directed(l1, l2);
  directed(l2, l1);
  return result;
}

// True iff x and y agree on every position where both are defined.
inline bool mismatch_free(const Word& x, const Word& y) {
  size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; i++)
    if (x[i] != y[i]) return false;
  return true;
}

inline Word repeat(const Word& w, size_t times) {
  Word r;
  r.reserve(w.size() * times);
  for (size_t i = 0; i < times; i++) r.insert(r.end(), w.begin(), w.end());
  return r;
}

// Definition form: does appending t1/t2 leave the delay of s1/s2 unchanged?
inline bool delay_preserved_definition(const Word& s1, const Word& s2,
                                       const Word& t1, const Word& t2) {
  return delay(s1, s2) == delay(concat(s1, t1), concat(s2, t2));
}

// Characterization form: t1 = t2 = empty, or |t1| = |t2| and s1.t1^m has no
// mismatch against s2.t2^m for every m. By periodicity it is enough to check
// a single sufficiently large m: s1.t1^m is a prefix of s1.t1^(m+1), so
// mismatch freedom at the largest m implies it at every smaller one.
inline bool delay_preserved_claim(const Word& s1, const Word& s2,
                                  const Word& t1, const Word& t2) {
  if (t1.empty() && t2.empty()) return true;
  if (t1.size() != t2.size()) return false;
  size_t m =
      2 + (std::max(s1.size(), s2.size()) + std::max<size_t>(t1.size(), 1) -
           1) /
              std::max<size_t>(t1.size(), 1);
  return mismatch_free(concat(s1, repeat(t1, m)), concat(s2, repeat(t2, m)));
}

inline bool delay_preserved(const Word& s1, const Word& s2, const Word& t1,
                            const Word& t2) {
  bool def = delay_preserved_definition(s1, s2, t1, t2);
  assert(def == delay_preserved_claim(s1, s2, t1, t2));
  return def;
}

}  // namespace transduce

#endif  // TRANSDUCE_WORDS_HPP_
