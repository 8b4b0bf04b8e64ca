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

// Degree-truncated tensor algebra on d letters.
//
// A word of length k is encoded as the base-d integer of its letters, so the
// natural order of codes inside one degree is the lexicographic order of
// words.  Components are ordered maps, which keeps iteration deterministic.

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "holonomy/cyclo.hpp"

namespace holonomy {

using Word = std::vector<int>;
using WordCode = std::uint64_t;

template <class S>
struct ScalarTraits {
  static bool is_zero(const S& x) { return x == 0; }
  static S from_rational(const Rational& r) { return S(r); }
  static double magnitude(const S& x) { return std::abs(x.get_d()); }
};

template <>
struct ScalarTraits<CycloNum> {
  static bool is_zero(const CycloNum& x) { return x.is_zero(); }
  static CycloNum from_rational(const Rational& r) { return CycloNum(1, r); }
  static double magnitude(const CycloNum& x) { return std::abs(x.embed()); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
  static std::complex<double> from_rational(const Rational& r) { return r.get_d(); }
  static double magnitude(const std::complex<double>& x) { return std::abs(x); }
};

template <class S>
bool scalar_is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

/// x * r for a rational r, in the scalar domain of x.
template <class S>
S scale_by(const S& x, const Rational& r) {
  if constexpr (std::is_same_v<S, std::complex<double>>) {
    return x * r.get_d();
  } else {
    return x * r;
  }
}

template <class S, class R>
S mul_mixed(const S& s, const R& r) {
  if constexpr (std::is_same_v<R, Rational>) {
    return scale_by(s, r);
  } else {
    return s * r;
  }
}

inline WordCode encode_word(const Word& w, int d) {
  WordCode c = 0;
  for (int x : w) c = c * static_cast<WordCode>(d) + static_cast<WordCode>(x);
  return c;
}

inline Word decode_word(WordCode c, int length, int d) {
  Word w(length);
  for (int k = length - 1; k >= 0; --k) {
    w[k] = static_cast<int>(c % static_cast<WordCode>(d));
    c /= static_cast<WordCode>(d);
  }
  return w;
}

inline WordCode power_code(int d, int k) {
  WordCode p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<WordCode>(d);
  return p;
}

template <class S>
class GradedTensor {
 public:
  using Component = std::map<WordCode, S>;

  GradedTensor() = default;
  GradedTensor(int num_letters, int max_degree)
      : d_(num_letters), D_(max_degree), comp_(max_degree + 1) {
    if (num_letters < 1 || max_degree < 0)
      throw UnsupportedParams("tensor algebra needs d >= 1 and D >= 0");
    long double span = 1;
    for (int k = 0; k < max_degree; ++k) span *= num_letters;
    if (span > static_cast<long double>(std::numeric_limits<WordCode>::max() / 4))
      throw UnsupportedParams("word codes overflow for this d and D");
  }

  static GradedTensor one(int d, int D) {
    GradedTensor t(d, D);
    t.comp_[0][0] = ScalarTraits<S>::from_rational(1);
    return t;
  }
  static GradedTensor letter(int d, int D, int i, S c) {
    GradedTensor t(d, D);
    if (D >= 1 && !scalar_is_zero(c)) t.comp_[1][static_cast<WordCode>(i)] = c;
    return t;
  }
  static GradedTensor letter(int d, int D, int i) {
    return letter(d, D, i, ScalarTraits<S>::from_rational(1));
  }

  int num_letters() const { return d_; }
  int max_degree() const { return D_; }
  const Component& component(int k) const { return comp_.at(k); }
  Component& component(int k) { return comp_.at(k); }

  void add_term(int k, WordCode c, const S& v) {
    if (k > D_ || scalar_is_zero(v)) return;
    auto [it, fresh] = comp_[k].try_emplace(c, v);
    if (!fresh) {
      it->second = it->second + v;
      if (scalar_is_zero(it->second)) comp_[k].erase(it);
    }
  }
  void add_term(const Word& w, const S& v) {
    add_term(static_cast<int>(w.size()), encode_word(w, d_), v);
  }

  S coeff(const Word& w) const {
    const int k = static_cast<int>(w.size());
    if (k > D_) return ScalarTraits<S>::from_rational(0);
    auto it = comp_[k].find(encode_word(w, d_));
    return it == comp_[k].end() ? ScalarTraits<S>::from_rational(0) : it->second;
  }

  bool is_zero() const {
    for (const auto& c : comp_)
      if (!c.empty()) return false;
    return true;
  }

  /// Homogeneous part of degree k, as a tensor of the same shape.
  GradedTensor part(int k) const {
    GradedTensor t(d_, D_);
    t.comp_[k] = comp_.at(k);
    return t;
  }

  GradedTensor truncated(int D) const {
    GradedTensor t(d_, D);
    for (int k = 0; k <= std::min(D, D_); ++k) t.comp_[k] = comp_[k];
    return t;
  }

  GradedTensor& operator+=(const GradedTensor& o) {
    check(o);
    for (int k = 0; k <= D_; ++k)
      for (const auto& [c, v] : o.comp_[k]) add_term(k, c, v);
    return *this;
  }
  GradedTensor& operator-=(const GradedTensor& o) {
    check(o);
    for (int k = 0; k <= D_; ++k)
      for (const auto& [c, v] : o.comp_[k]) add_term(k, c, -v);
    return *this;
  }
  GradedTensor& operator*=(const S& s) {
    for (auto& comp : comp_) {
      for (auto it = comp.begin(); it != comp.end();) {
        it->second = it->second * s;
        it = scalar_is_zero(it->second) ? comp.erase(it) : std::next(it);
      }
    }
    return *this;
  }

  friend GradedTensor operator+(GradedTensor a, const GradedTensor& b) { return a += b; }
  friend GradedTensor operator-(GradedTensor a, const GradedTensor& b) { return a -= b; }
  friend GradedTensor operator*(GradedTensor a, const S& s) { return a *= s; }
  friend GradedTensor operator*(const S& s, GradedTensor a) { return a *= s; }
  GradedTensor operator-() const {
    GradedTensor t = *this;
    for (auto& comp : t.comp_)
      for (auto& [c, v] : comp) v = -v;
    return t;
  }

  /// Concatenation product truncated at D.
  friend GradedTensor operator*(const GradedTensor& x, const GradedTensor& y) {
    x.check(y);
    GradedTensor out(x.d_, x.D_);
    for (int i = 0; i <= x.D_; ++i) {
      if (x.comp_[i].empty()) continue;
      for (int j = 0; i + j <= x.D_; ++j) {
        if (y.comp_[j].empty()) continue;
        const WordCode shift = power_code(x.d_, j);
        for (const auto& [cx, vx] : x.comp_[i])
          for (const auto& [cy, vy] : y.comp_[j]) out.add_term(i + j, cx * shift + cy, vx * vy);
      }
    }
    return out;
  }

  friend bool operator==(const GradedTensor& x, const GradedTensor& y) {
    return x.d_ == y.d_ && x.D_ == y.D_ && x.comp_ == y.comp_;
  }

  /// Largest coefficient magnitude over all degrees.
  double max_abs() const {
    double m = 0;
    for (const auto& comp : comp_)
      for (const auto& [c, v] : comp) m = std::max(m, ScalarTraits<S>::magnitude(v));
    return m;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    std::string out;
    for (int k = 0; k <= D_; ++k) {
      for (const auto& [c, v] : comp_[k]) {
        if (!out.empty()) out += " + ";
        std::ostringstream s;
        if constexpr (std::is_same_v<S, CycloNum>) s << "(" << v.to_string() << ")";
        else s << "(" << v << ")";
        for (int x : decode_word(c, k, d_))
          s << (names.empty() ? "x" + std::to_string(x) : names[x]);
        out += s.str();
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const GradedTensor& o) const {
    if (o.d_ != d_ || o.D_ != D_)
      throw BasisMismatch("tensors over different generator sets or truncations");
  }

  int d_ = 1;
  int D_ = 0;
  std::vector<Component> comp_;
};

template <class S>
GradedTensor<S> bracket(const GradedTensor<S>& x, const GradedTensor<S>& y) {
  return x * y - y * x;
}

/// Map every letter to a linear combination of letters of another alphabet
/// and extend multiplicatively (a graded algebra morphism, truncated at D).
template <class S, class R>
GradedTensor<S> substitute_letters(const GradedTensor<S>& x, int new_d,
                                   const std::vector<std::vector<std::pair<int, R>>>& image) {
  const int D = x.max_degree();
  GradedTensor<S> out(new_d, D);
  for (int k = 0; k <= D; ++k) {
    for (const auto& [code, v] : x.component(k)) {
      std::map<WordCode, S> acc{{0, v}};
      for (int letter : decode_word(code, k, x.num_letters())) {
        std::map<WordCode, S> next;
        for (const auto& [c, s] : acc) {
          for (const auto& [y, r] : image[letter]) {
            S t = mul_mixed(s, r);
            auto [it, fresh] = next.try_emplace(c * new_d + y, t);
            if (!fresh) it->second = it->second + t;
          }
        }
        acc.swap(next);
      }
      for (const auto& [c, s] : acc) out.add_term(k, c, s);
    }
  }
  return out;
}

}  // namespace holonomy
