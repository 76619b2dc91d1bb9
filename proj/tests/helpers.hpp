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

#ifndef TRANSDUCE_TESTS_HELPERS_HPP_
#define TRANSDUCE_TESTS_HELPERS_HPP_

#include <string>
#include <vector>

#include "transduce/words.hpp"

namespace transduce_test {

// Letters map to symbol ids: 'a' -> 0, 'b' -> 1, ...
inline transduce::Word W(const std::string& s) {
  transduce::Word w;
  for (char c : s) w.push_back(c - 'a');
  return w;
}

inline std::string S(const transduce::Word& w) {
  std::string s;
  for (transduce::Sym x : w) s.push_back((char)('a' + x));
  return s;
}

// All words of length <= max_len over the first k symbols, shortlex order.
inline std::vector<transduce::Word> all_words(int k, int max_len) {
  std::vector<transduce::Word> out{{}};
  size_t lo = 0;
  for (int len = 1; len <= max_len; len++) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; i++) {
      for (int s = 0; s < k; s++) {
        transduce::Word w = out[i];
        w.push_back(s);
        out.push_back(w);
      }
    }
    lo = hi;
  }
  return out;
}

}  // namespace transduce_test

#endif  // TRANSDUCE_TESTS_HELPERS_HPP_
