// Copyright 2026 The holonomy-lab Authors
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

// Lyndon words, their standard bracketings and the Witt dimension formula.
//
// The expansion of the standard bracketing of a Lyndon word w is w plus
// words that are lexicographically larger, so the restriction of a Lie
// polynomial to its Lyndon-word coefficients is injective.  The quotient code
// relies on this to do its linear algebra on Witt-many columns only.

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "holonomy/tensor.hpp"

namespace holonomy {

/// (1/k) sum_{e | k} mu(e) d^{k/e}.
inline long long witt_dim(int d, int k) {
  if (d < 1 || k < 1) throw UnsupportedParams("witt_dim needs d, k >= 1");
  long long total = 0;
  for (int e = 1; e <= k; ++e) {
    if (k % e) continue;
    long long p = 1;
    for (int i = 0; i < k / e; ++i) p *= d;
    total += detail::moebius_mu(e) * p;
  }
  return total / k;
}

/// All Lyndon words of length exactly k on letters 0..d-1, in lex order.
inline std::vector<Word> lyndon_words(int d, int k) {
  std::vector<Word> out;
  if (d < 1 || k < 1) return out;
  // Duval's generation of Lyndon words of length <= k
  Word w{-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == k) out.push_back(w);
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < k) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == d - 1) w.pop_back();
  }
  return out;
}

/// Split w = uv with v the longest proper suffix that is Lyndon.
inline std::size_t standard_split(const Word& w) {
  for (std::size_t s = 1; s < w.size(); ++s) {
    // the longest Lyndon proper suffix is the lexicographically smallest one
    bool smallest = true;
    for (std::size_t t = 1; t < w.size() && smallest; ++t) {
      if (t == s) continue;
      if (std::lexicographical_compare(w.begin() + t, w.end(), w.begin() + s, w.end()))
        smallest = false;
    }
    if (smallest) return s;
  }
  return 0;
}

struct LyndonBracket {
  Word word;
  std::string text;  // e.g. "[0,[0,1]]"
};

inline std::string bracket_text(const Word& w) {
  if (w.size() == 1) return std::to_string(w[0]);
  std::size_t s = standard_split(w);
  return "[" + bracket_text(Word(w.begin(), w.begin() + s)) + "," +
         bracket_text(Word(w.begin() + s, w.end())) + "]";
}

inline std::vector<LyndonBracket> lyndon_basis(int d, int k) {
  std::vector<LyndonBracket> out;
  for (auto& w : lyndon_words(d, k)) out.push_back({w, bracket_text(w)});
  return out;
}

/// Tensor expansion of the standard bracketing of a Lyndon word.
template <class S>
GradedTensor<S> expand_lyndon(const Word& w, int d, int D) {
  if (w.size() == 1) return GradedTensor<S>::letter(d, D, w[0]);
  std::size_t s = standard_split(w);
  return bracket(expand_lyndon<S>(Word(w.begin(), w.begin() + s), d, D),
                 expand_lyndon<S>(Word(w.begin() + s, w.end()), d, D));
}

/// Column index of each Lyndon word of one degree, keyed by word code.
class LyndonIndex {
 public:
  LyndonIndex() = default;
  LyndonIndex(int d, int k) : d_(d), k_(k), words_(lyndon_words(d, k)) {
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i)
      index_.emplace(encode_word(words_[i], d), static_cast<int>(i));
  }
  int size() const { return static_cast<int>(words_.size()); }
  int degree() const { return k_; }
  const Word& word(int i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }
  /// Column of a word code, or -1 when the word is not Lyndon.
  int column(WordCode c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }

  /// Lyndon-word coordinates of a degree-k component.
  template <class S>
  std::map<int, S> project(const std::map<WordCode, S>& comp) const {
    std::map<int, S> out;
    for (const auto& [c, v] : comp) {
      int col = column(c);
      if (col >= 0 && !scalar_is_zero(v)) out.emplace(col, v);
    }
    return out;
  }

 private:
  int d_ = 1;
  int k_ = 1;
  std::vector<Word> words_;
  std::unordered_map<WordCode, int> index_;
};

/// Dynkin-Specht-Wever test: P is a Lie polynomial iff theta(P) = k P in each
/// degree k, where theta is the left-normed bracketing of words.
template <class S>
bool is_lie_element(const GradedTensor<S>& x) {
  const int d = x.num_letters(), D = x.max_degree();
  if (!x.component(0).empty()) return false;
  for (int k = 1; k <= D; ++k) {
    GradedTensor<S> theta(d, D);
    for (const auto& [c, v] : x.component(k)) {
      Word w = decode_word(c, k, d);
      GradedTensor<S> t = GradedTensor<S>::letter(d, D, w[0], v);
      for (int i = 1; i < k; ++i) t = bracket(t, GradedTensor<S>::letter(d, D, w[i]));
      theta += t;
    }
    GradedTensor<S> target = x.part(k) * ScalarTraits<S>::from_rational(k);
    theta -= target;
    if (!theta.is_zero()) return false;
  }
  return true;
}

}  // namespace holonomy
